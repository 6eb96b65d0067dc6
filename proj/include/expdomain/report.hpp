#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "expdomain/domain.hpp"
#include "expdomain/errors.hpp"
#include "expdomain/parser.hpp"
#include "expdomain/simulate.hpp"
#include "expdomain/space.hpp"
#include "expdomain/statement.hpp"
#include "expdomain/version.hpp"

namespace expdomain {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kReportSchema = "expdomain-report/1";

/// One CLI invocation, already argument-parsed.
struct CommandRequest {
    std::string command;
    std::string input_path;
    std::vector<std::string> args;          // statement expressions, command specific
    std::optional<std::size_t> cap;         // possibility-enumeration cap override
    std::optional<std::uint64_t> seed;      // echoed for reproducibility
};

/// A deterministic report: same request and document bytes, same payload.
struct Report {
    Json payload;

    std::string to_json() const { return payload.dump(2) + "\n"; }

    std::string to_text() const {
        std::string out;
        render(payload, "", out);
        return out;
    }

private:
    static void render(const Json& node, const std::string& prefix, std::string& out) {
        if (node.is_object()) {
            for (const auto& [key, value] : node.items())
                render(value, prefix.empty() ? key : prefix + "." + key, out);
            return;
        }
        if (node.is_array()) {
            const bool nested = !node.empty() && (node.front().is_array() || node.front().is_object());
            if (nested) {
                for (std::size_t i = 0; i < node.size(); ++i)
                    render(node[i], prefix + "[" + std::to_string(i) + "]", out);
                return;
            }
            std::string joined;
            for (std::size_t i = 0; i < node.size(); ++i) {
                if (i) joined += ", ";
                joined += scalar(node[i]);
            }
            out += prefix + ": [" + joined + "]\n";
            return;
        }
        out += prefix + ": " + scalar(node) + "\n";
    }

    static std::string scalar(const Json& node) {
        if (node.is_string()) return node.get<std::string>();
        return node.dump();
    }
};

namespace detail {

inline Json labels_json(const PossibilitySpace& space, const Bitset& subset) {
    Json out = Json::array();
    subset.for_each_set([&](std::size_t p) { out.push_back(space.label_string(p)); });
    return out;
}

inline Json family_json(const PossibilitySpace& space, const std::vector<Bitset>& family) {
    Json out = Json::array();
    for (const auto& s : family) out.push_back(labels_json(space, s));
    return out;
}

struct LoadedDomain {
    ContextPtr context;
    Basis basis;
    TheoreticalDomain tdom;
    PossibilitySpace space;
};

inline LoadedDomain load_domain(const ContextSpec& spec) {
    ContextPtr ctx = build_context(spec);
    Basis basis = build_basis(spec, ctx);
    TheoreticalDomain tdom = build_domain(basis);
    PossibilitySpace space = possibilities(basis);
    return LoadedDomain{std::move(ctx), std::move(basis), std::move(tdom), std::move(space)};
}

inline Statement statement_arg(const ContextPtr& ctx, const std::string& text) {
    return eval_statement(ctx, parse_expression(text));
}

inline Json check_result(const ContextSpec& spec, const ContextPtr& ctx) {
    Json result;
    result["context"] = spec.name;
    result["atoms"] = spec.atoms;
    result["assignment_space"] = ctx->assignment_space();
    result["admissible_count"] = ctx->admissible_count();
    result["constraint_count"] = spec.constraints.size();
    result["basis_count"] = spec.basis.size();
    result["satisfiable"] = true;  // construction would have failed otherwise
    if (ctx->actual()) {
        Json actual;
        for (std::size_t i = 0; i < ctx->atom_count(); ++i)
            actual[ctx->atoms()[i]] = Context::assignment_value(*ctx->actual(), i);
        result["actual"] = std::move(actual);
    } else {
        result["actual"] = nullptr;
    }
    return result;
}

inline Json possibilities_result(const ContextSpec& spec, const LoadedDomain& d) {
    Json result;
    result["context"] = spec.name;
    Json basis = Json::array();
    for (const auto& e : spec.basis) basis.push_back(to_string(e));
    result["basis"] = std::move(basis);
    Json entries = Json::array();
    for (std::size_t p = 0; p < d.space.size(); ++p) {
        Json entry;
        entry["label"] = d.space.label_string(p);
        entry["assignment_count"] = d.space.possibility(p).truth_count();
        entries.push_back(std::move(entry));
    }
    result["count"] = d.space.size();
    result["possibilities"] = std::move(entries);
    return result;
}

inline Json relate_result(const ContextPtr& ctx, const std::string& lhs_text, const std::string& rhs_text) {
    const Statement lhs = statement_arg(ctx, lhs_text);
    const Statement rhs = statement_arg(ctx, rhs_text);
    const RelationReport rel = relation(lhs, rhs);
    Json result;
    result["lhs"] = to_string(parse_expression(lhs_text));
    result["rhs"] = to_string(parse_expression(rhs_text));
    result["equivalent"] = rel.equivalent;
    result["narrower"] = rel.narrower;
    result["broader"] = rel.broader;
    result["compatible"] = rel.compatible;
    result["independent"] = rel.independent;
    return result;
}

inline Json classify_result(const LoadedDomain& d, const std::string& text) {
    const Statement s = statement_arg(d.context, text);
    Json result;
    result["expression"] = to_string(parse_expression(text));
    result["class"] = to_string(classify(d.tdom, s));
    if (s.is_tautology() || s.is_contradiction())
        result["note"] = "the tautology and the contradiction sit in every experimental domain";
    return result;
}

inline Json dnf_result(const LoadedDomain& d, const std::string& text) {
    const PossibilitySubset subset = dnf(d.space, statement_arg(d.context, text));
    Json result;
    result["expression"] = to_string(parse_expression(text));
    result["possibilities"] = labels_json(d.space, subset.members);
    return result;
}

inline Json topology_result(const LoadedDomain& d, std::size_t cap) {
    const Topology top = natural_topology(d.space, cap);
    Json result;
    result["point_count"] = top.point_count;
    Json labels = Json::array();
    for (std::size_t p = 0; p < d.space.size(); ++p) labels.push_back(d.space.label_string(p));
    result["points"] = std::move(labels);
    result["subbasis"] = family_json(d.space, top.subbasis);
    result["open_count"] = top.opens.size();
    result["opens"] = family_json(d.space, top.opens);
    return result;
}

inline Json sigma_result(const LoadedDomain& d, std::size_t cap) {
    const SigmaAlgebra sigma = natural_sigma_algebra(d.space, d.tdom, cap);
    Json result;
    result["point_count"] = sigma.point_count;
    result["set_count"] = sigma.sets.size();
    result["sets"] = family_json(d.space, sigma.sets);
    return result;
}

inline Json properties_result(const LoadedDomain& d, std::size_t cap) {
    const PropertyReport report = check_properties(d.space, d.tdom, cap);
    Json result;
    result["point_count"] = d.space.size();
    result["is_topology"] = report.is_topology;
    result["is_t0"] = report.is_t0;
    result["is_second_countable"] = report.is_second_countable;
    result["is_hausdorff"] = report.is_hausdorff;
    result["sigma_is_borel"] = report.sigma_is_borel;
    Json approx;
    for (std::size_t p = 0; p < d.space.size(); ++p)
        approx[d.space.label_string(p)] = static_cast<bool>(report.approx_verifiable[p]);
    result["approx_verifiable"] = std::move(approx);
    return result;
}

inline Json simulate_result(const ScenarioSpec& scenario) {
    Json result;
    result["goal"] = scenario.goal == GoalKind::Conjunction ? "conj" : "dovetail";
    result["members"] = scenario.goal_tests;
    result["budget"] = scenario.budget;
    Json tests = Json::array();
    for (const auto& [name, process] : scenario.tests) {
        Json t;
        t["name"] = name;
        if (process.terminates())
            t["terminates_at"] = process.steps();
        else
            t["diverges"] = true;
        tests.push_back(std::move(t));
    }
    result["tests"] = std::move(tests);

    const std::vector<TestProcess> processes = scenario.goal_processes();
    const std::span<const TestProcess> span(processes.data(), processes.size());
    TestProcess goal = scenario.goal == GoalKind::Conjunction ? conj_test(span) : dovetail_disj(span);
    const Outcome outcome = run(goal, scenario.budget);
    result["outcome"] = outcome.is_verified() ? "verified" : "pending";
    if (outcome.is_verified()) {
        result["steps"] = outcome.steps();
        if (scenario.goal == GoalKind::Dovetail) {
            const DovetailTrace trace = dovetail_trace(span);
            result["round"] = trace.round;
            result["winner"] = scenario.goal_tests[trace.winner];
        }
    }
    result["note"] = goal.description();
    return result;
}

}  // namespace detail

/// Dispatches one command against a document's text and assembles the
/// deterministic report. Engine failures surface as expdomain::Error.
inline Report run_command(const CommandRequest& request, std::string_view document_text) {
    const std::size_t cap = request.cap.value_or(kDefaultEnumerationCap);
    Json payload;
    payload["schema"] = std::string(kReportSchema);
    payload["engine_version"] = std::string(kEngineVersion);
    payload["command"] = request.command;
    payload["input"] = request.input_path;
    payload["args"] = request.args;
    payload["cap"] = cap;
    if (request.seed)
        payload["seed"] = *request.seed;
    else
        payload["seed"] = nullptr;

    auto expect_args = [&](std::size_t n) {
        if (request.args.size() != n)
            fail(Errc::ArityMismatch, "command '" + request.command + "' takes " + std::to_string(n) +
                                          " expression argument(s)");
    };

    Json result;
    if (request.command == "simulate") {
        expect_args(0);
        result = detail::simulate_result(parse_scenario(document_text));
    } else {
        const ContextSpec spec = parse_spec(document_text);
        if (request.command == "check") {
            expect_args(0);
            result = detail::check_result(spec, build_context(spec));
        } else if (request.command == "relate") {
            expect_args(2);
            result = detail::relate_result(build_context(spec), request.args[0], request.args[1]);
        } else if (request.command == "possibilities") {
            expect_args(0);
            result = detail::possibilities_result(spec, detail::load_domain(spec));
        } else if (request.command == "classify") {
            expect_args(1);
            result = detail::classify_result(detail::load_domain(spec), request.args[0]);
        } else if (request.command == "dnf") {
            expect_args(1);
            result = detail::dnf_result(detail::load_domain(spec), request.args[0]);
        } else if (request.command == "topology") {
            expect_args(0);
            result = detail::topology_result(detail::load_domain(spec), cap);
        } else if (request.command == "sigma") {
            expect_args(0);
            result = detail::sigma_result(detail::load_domain(spec), cap);
        } else if (request.command == "properties") {
            expect_args(0);
            result = detail::properties_result(detail::load_domain(spec), cap);
        } else {
            fail(Errc::ArityMismatch, "unknown command '" + request.command + "'");
        }
    }
    payload["result"] = std::move(result);
    return Report{std::move(payload)};
}

/// Error payload with the same envelope as a success report.
inline Report error_report(const CommandRequest& request, const Error& error) {
    Json payload;
    payload["schema"] = std::string(kReportSchema);
    payload["engine_version"] = std::string(kEngineVersion);
    payload["command"] = request.command;
    payload["input"] = request.input_path;
    Json detail;
    detail["code"] = error.code_name();
    detail["message"] = error.what();
    if (const auto* parse = dynamic_cast<const ParseError*>(&error)) {
        detail["line"] = parse->line();
        detail["column"] = parse->column();
        detail["expected"] = parse->expected();
    }
    payload["error"] = std::move(detail);
    return Report{std::move(payload)};
}

}  // namespace expdomain
