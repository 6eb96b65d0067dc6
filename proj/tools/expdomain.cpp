// Command-line front end: parses .exd / scenario documents and prints
// deterministic reports, as JSON with --json or as flat text otherwise.
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "expdomain/expdomain.hpp"

namespace {

struct Invocation {
    expdomain::CommandRequest request;
    bool json = false;
};

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int execute(const Invocation& invocation) {
    const auto text = read_file(invocation.request.input_path);
    if (!text) {
        std::cerr << "expdomain: cannot read '" << invocation.request.input_path << "'\n";
        return 2;
    }
    try {
        const expdomain::Report report = expdomain::run_command(invocation.request, *text);
        std::cout << (invocation.json ? report.to_json() : report.to_text());
        return 0;
    } catch (const expdomain::Error& error) {
        const expdomain::Report report = expdomain::error_report(invocation.request, error);
        if (invocation.json)
            std::cout << report.to_json();
        else
            std::cerr << "expdomain: " << error.code_name() << ": " << error.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expdomain: statement algebras, experimental domains and their natural spaces"};
    app.require_subcommand(1);

    struct SubSpec {
        const char* name;
        const char* help;
        int expr_args;  // statement expressions after the file
    };
    const std::vector<SubSpec> subs = {
        {"check", "validate a document and report context counts", 0},
        {"possibilities", "list the possibilities of the declared basis with labels", 0},
        {"classify", "classify one statement against the domains", 1},
        {"relate", "report the semantic relations between two statements", 2},
        {"topology", "materialize the natural topology", 0},
        {"sigma", "materialize the natural sigma-algebra", 0},
        {"properties", "run the full property report on the possibility space", 0},
        {"dnf", "decompose an experimental statement into possibilities", 0 + 1},
        {"simulate", "run a test scenario (conjunction or dovetailing)", 0},
    };

    auto invocation = std::make_shared<Invocation>();
    std::vector<std::string> positional_exprs;

    for (const auto& sub : subs) {
        CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
        auto file = std::make_shared<std::string>();
        auto exprs = std::make_shared<std::vector<std::string>>();
        auto json = std::make_shared<bool>(false);
        auto cap = std::make_shared<std::int64_t>(-1);
        auto seed = std::make_shared<std::int64_t>(-1);
        cmd->add_option("file", *file, "input document")->required();
        if (sub.expr_args > 0)
            cmd->add_option("expr", *exprs, "statement expression(s)")
                ->required()
                ->expected(sub.expr_args);
        cmd->add_flag("--json", *json, "emit the report as JSON");
        cmd->add_option("--cap", *cap, "possibility-enumeration cap")->check(CLI::NonNegativeNumber);
        cmd->add_option("--seed", *seed, "seed echoed into the report")->check(CLI::NonNegativeNumber);
        cmd->callback([invocation, name = std::string(sub.name), file, exprs, json, cap, seed]() {
            invocation->request.command = name;
            invocation->request.input_path = *file;
            invocation->request.args = *exprs;
            invocation->json = *json;
            if (*cap >= 0) invocation->request.cap = static_cast<std::size_t>(*cap);
            if (*seed >= 0) invocation->request.seed = static_cast<std::uint64_t>(*seed);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return execute(*invocation);
}
