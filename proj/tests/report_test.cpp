#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "expdomain/expdomain.hpp"
#include "support/run_cli.hpp"

using namespace expdomain;
using exdtest::run_cli;

namespace {

const std::string kFixtures = EXPDOMAIN_FIXTURE_DIR;

std::string read_fixture(const std::string& name) {
    std::ifstream in(kFixtures + "/" + name, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

CommandRequest request(std::string command, std::vector<std::string> args = {}) {
    CommandRequest r;
    r.command = std::move(command);
    r.input_path = "input.exd";
    r.args = std::move(args);
    return r;
}

}  // namespace

TEST_CASE("check reports context counts") {
    const Report report = run_command(request("check"), read_fixture("animals.exd"));
    const Json& result = report.payload.at("result");
    CHECK(result.at("context") == "animals");
    CHECK(result.at("assignment_space") == 16);
    CHECK(result.at("admissible_count") == 8);
    CHECK(result.at("constraint_count") == 3);
    CHECK(result.at("basis_count") == 3);
    CHECK(result.at("satisfiable") == true);
    CHECK(result.at("actual").is_null());
}

TEST_CASE("relate reports the semantic relations") {
    const std::string doc = read_fixture("animals.exd");
    const Report narrower = run_command(request("relate", {"cat", "mammal"}), doc);
    CHECK(narrower.payload.at("result").at("narrower") == true);
    CHECK(narrower.payload.at("result").at("equivalent") == false);

    const Report incompatible = run_command(request("relate", {"cat", "dog"}), doc);
    CHECK(incompatible.payload.at("result").at("compatible") == false);

    const Report indep = run_command(request("relate", {"cat", "black"}), doc);
    CHECK(indep.payload.at("result").at("independent") == true);
}

TEST_CASE("reports are byte-identical across runs") {
    const std::string doc = read_fixture("animals.exd");
    for (const char* cmd : {"check", "possibilities", "topology", "sigma", "properties"}) {
        const Report a = run_command(request(cmd), doc);
        const Report b = run_command(request(cmd), doc);
        CHECK(a.to_json() == b.to_json());
        CHECK(a.to_text() == b.to_text());
    }
}

TEST_CASE("possibilities are sorted by label") {
    const Report report = run_command(request("possibilities"), read_fixture("animals.exd"));
    const Json& entries = report.payload.at("result").at("possibilities");
    REQUIRE(entries.size() == 6);
    std::vector<std::string> labels;
    for (const auto& e : entries) labels.push_back(e.at("label"));
    CHECK(labels == std::vector<std::string>{"FFF", "FFT", "FTF", "FTT", "TFF", "TFT"});
}

TEST_CASE("classify and dnf commands") {
    const std::string doc = read_fixture("animals.exd");
    CHECK(run_command(request("classify", {"cat"}), doc).payload.at("result").at("class") == "verifiable-only");
    CHECK(run_command(request("classify", {"!cat"}), doc).payload.at("result").at("class") ==
          "theoretical-only");

    const Report d = run_command(request("dnf", {"cat"}), doc);
    CHECK(d.payload.at("result").at("possibilities") == Json::array({"TFF", "TFT"}));
}

TEST_CASE("topology and properties of the sierpinski fixture") {
    const std::string doc = read_fixture("sierpinski.exd");
    const Report top = run_command(request("topology"), doc);
    CHECK(top.payload.at("result").at("open_count") == 3);
    CHECK(top.payload.at("result").at("opens") ==
          Json::array({Json::array(), Json::array({"T"}), Json::array({"F", "T"})}));

    const Report props = run_command(request("properties"), doc);
    const Json& r = props.payload.at("result");
    CHECK(r.at("is_t0") == true);
    CHECK(r.at("is_hausdorff") == false);
    CHECK(r.at("sigma_is_borel") == true);
    CHECK(r.at("approx_verifiable").at("T") == true);
    CHECK(r.at("approx_verifiable").at("F") == false);

    const Report sigma = run_command(request("sigma"), doc);
    CHECK(sigma.payload.at("result").at("set_count") == 4);
}

TEST_CASE("simulate runs scenario files") {
    const Report dovetail = run_command(request("simulate"), read_fixture("dovetail.scn"));
    const Json& r = dovetail.payload.at("result");
    CHECK(r.at("outcome") == "verified");
    CHECK(r.at("steps") == 41);
    CHECK(r.at("round") == 5);
    CHECK(r.at("winner") == "finder");

    const Report conj = run_command(request("simulate"), read_fixture("conj.scn"));
    CHECK(conj.payload.at("result").at("outcome") == "verified");
    CHECK(conj.payload.at("result").at("steps") == 7);

    const Report pending = run_command(request("simulate"), read_fixture("allwhite.scn"));
    CHECK(pending.payload.at("result").at("outcome") == "pending");
}

TEST_CASE("text and json renderings carry the same information") {
    const Report report = run_command(request("relate", {"cat", "mammal"}), read_fixture("animals.exd"));
    const std::string text = report.to_text();
    CHECK(text.find("result.narrower: true") != std::string::npos);
    CHECK(text.find("result.compatible: true") != std::string::npos);
    CHECK(text.find("command: relate") != std::string::npos);
    CHECK(text.find("engine_version: ") != std::string::npos);
}

TEST_CASE("engine errors become structured error reports") {
    const CommandRequest r = request("check");
    try {
        run_command(r, "context c { atoms: a; constraints: a & ; }");
        FAIL("should have thrown");
    } catch (const Error& e) {
        const Report report = error_report(r, e);
        CHECK(report.payload.at("error").at("code") == "SyntaxError");
        CHECK(report.payload.at("error").at("line") == 1);
    }

    try {
        run_command(r, "context c { atoms: a; constraints: a; basis: a; }\n# unsat\ncontext d { atoms: x; }");
        FAIL("should have thrown");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SyntaxError);  // trailing second context
    }

    try {
        run_command(request("dnf", {"!cat"}), read_fixture("animals.exd"));
        FAIL("should have thrown");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotInDomain);
    }
}

TEST_CASE("cap override applies to enumeration") {
    CommandRequest r = request("topology");
    r.cap = 4;
    try {
        run_command(r, read_fixture("animals.exd"));
        FAIL("should have thrown");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::EnumerationCapExceeded);
    }
}

TEST_CASE("cli binary: exit codes and deterministic json") {
    const std::string animals = kFixtures + "/animals.exd";

    const auto ok = run_cli("relate " + animals + " cat mammal --json");
    CHECK(ok.exit_code == 0);
    const Json parsed = Json::parse(ok.output);
    CHECK(parsed.at("result").at("narrower") == true);
    CHECK(parsed.at("schema") == std::string(kReportSchema));

    const auto again = run_cli("relate " + animals + " cat mammal --json");
    CHECK(again.output == ok.output);  // byte-identical

    const auto domain_error = run_cli("dnf " + animals + " '!cat' --json");
    CHECK(domain_error.exit_code == 1);
    CHECK(Json::parse(domain_error.output).at("error").at("code") == "NotInDomain");

    CHECK(run_cli("relate " + animals + " cat").exit_code == 2);          // missing argument
    CHECK(run_cli("frobnicate " + animals).exit_code == 2);               // unknown command
    CHECK(run_cli("check " + animals + " --unknown-flag").exit_code == 2);
    CHECK(run_cli("check " + kFixtures + "/missing.exd").exit_code == 2);
    CHECK(run_cli("simulate " + kFixtures + "/dovetail.scn").exit_code == 0);
}
