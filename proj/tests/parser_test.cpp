#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "expdomain/expdomain.hpp"
#include "support/generators.hpp"

using namespace expdomain;

namespace {

const char* kAnimalsDoc = R"(# example document
context animals {
  atoms: cat, mammal, dog, black;
  constraints: cat -> mammal; dog -> mammal; !(cat & dog);
  basis: cat, dog, black;
}
)";

template <typename Fn>
Errc error_code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    throw std::logic_error("expected an expdomain::Error");
}

}  // namespace

TEST_CASE("parses the animals document") {
    const ContextSpec spec = parse_spec(kAnimalsDoc);
    CHECK(spec.name == "animals");
    CHECK(spec.atoms == std::vector<std::string>{"cat", "mammal", "dog", "black"});
    CHECK(spec.constraints.size() == 3);
    CHECK(spec.basis.size() == 3);
    CHECK(spec.actual.empty());
}

TEST_CASE("expression precedence and associativity") {
    const ExprPtr e = parse_expression("a -> b | c");
    REQUIRE(e->kind == Expr::Kind::Implies);
    CHECK(e->lhs->kind == Expr::Kind::Atom);
    CHECK(e->rhs->kind == Expr::Kind::Or);

    const ExprPtr r = parse_expression("a -> b -> c");
    REQUIRE(r->kind == Expr::Kind::Implies);
    CHECK(r->rhs->kind == Expr::Kind::Implies);  // right-associative

    const ExprPtr l = parse_expression("a | b | c");
    REQUIRE(l->kind == Expr::Kind::Or);
    CHECK(l->lhs->kind == Expr::Kind::Or);  // left-associative

    const ExprPtr n = parse_expression("!a & b");
    REQUIRE(n->kind == Expr::Kind::And);
    CHECK(n->lhs->kind == Expr::Kind::Not);

    CHECK(structurally_equal(parse_expression("!(a & b)"), Expr::make_not(Expr::make_and(
                                                               Expr::make_atom("a"), Expr::make_atom("b")))));
}

TEST_CASE("syntax errors carry position and expectations") {
    try {
        parse_spec("basis: ;");
        FAIL("should have thrown");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 1);
        CHECK_FALSE(e.expected().empty());
    }

    try {
        parse_spec("context c {\n  atoms: a;\n  constraints: a &;\n}");
        FAIL("should have thrown");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 19);  // the offending ';'
    }
}

TEST_CASE("structured document errors") {
    CHECK(error_code_of([] { parse_spec("context c { atoms: a; basis: b; }"); }) == Errc::UnknownAtom);
    CHECK(error_code_of([] { parse_spec("context c { atoms: a, a; }"); }) == Errc::DuplicateAtom);
    CHECK(error_code_of([] { parse_spec("context c { atoms: a; basis: a; basis: a; }"); }) ==
          Errc::DuplicateSection);
    CHECK(error_code_of([] { parse_spec("context c { atoms: true; }"); }) == Errc::SyntaxError);
    CHECK(error_code_of([] { parse_spec("context c { atoms: a; } trailing"); }) == Errc::SyntaxError);
    CHECK(error_code_of([] { parse_spec("context c { atoms: a; actual: a = X; }"); }) == Errc::SyntaxError);
    CHECK(error_code_of([] { parse_spec("context c { atoms: a; actual: a = T, a = F; }"); }) ==
          Errc::DuplicateAtom);
}

TEST_CASE("actual section round-trips through context construction") {
    const ContextSpec spec = parse_spec("context c { atoms: a, b; actual: b = F, a = T; }");
    REQUIRE(spec.actual.size() == 2);
    const ContextPtr ctx = build_context(spec);
    REQUIRE(ctx->actual().has_value());
    CHECK(Context::assignment_value(*ctx->actual(), 0) == true);
    CHECK(Context::assignment_value(*ctx->actual(), 1) == false);
}

TEST_CASE("canonical printing uses minimal parentheses") {
    const ContextSpec spec = parse_spec("context c { atoms: a, b, c; constraints: ((a) & (b)) | c; }");
    CHECK(to_string(spec.constraints[0]) == "a & b | c");

    CHECK(to_string(parse_expression("(a | b) & c")) == "(a | b) & c");
    CHECK(to_string(parse_expression("a -> (b -> c)")) == "a -> b -> c");
    CHECK(to_string(parse_expression("(a -> b) -> c")) == "(a -> b) -> c");
    CHECK(to_string(parse_expression("a | (b | c)")) == "a | (b | c)");
    CHECK(to_string(parse_expression("!(!a)")) == "!!a");
}

TEST_CASE("print_spec omits empty sections and is parse-stable") {
    const ContextSpec spec = parse_spec("context c { atoms: a; }");
    const std::string text = print_spec(spec);
    CHECK(text == "context c {\n  atoms: a;\n}\n");
    CHECK(structurally_equal(parse_spec(text), spec));
}

TEST_CASE("round-trip property on generated documents") {
    std::mt19937 rng(127);
    for (int iter = 0; iter < 300; ++iter) {
        const ContextSpec spec = exdtest::random_context_spec(rng);
        const std::string printed = print_spec(spec);
        ContextSpec reparsed;
        try {
            reparsed = parse_spec(printed);
        } catch (const Error& e) {
            CAPTURE(printed);
            FAIL(std::string("printed document failed to parse: ") + e.what());
        }
        CHECK(structurally_equal(reparsed, spec));
        CHECK(print_spec(reparsed) == printed);  // printing is idempotent
    }
}

TEST_CASE("random byte fuzzing only raises structured errors") {
    std::mt19937 rng(131);
    int parsed_ok = 0;
    for (int iter = 0; iter < 3000; ++iter) {
        const std::size_t len = rng() % 120;
        std::string input;
        for (std::size_t i = 0; i < len; ++i) {
            // Mix raw bytes with grammar-ish characters for deeper penetration.
            if (rng() % 2) {
                static const char grammar[] = "context atoms basis {};:,?!&|->()ab01 \n#";
                input += grammar[rng() % (sizeof(grammar) - 1)];
            } else {
                input += static_cast<char>(rng() % 256);
            }
        }
        try {
            parse_spec(input);
            ++parsed_ok;
        } catch (const Error&) {
            // structured: fine
        }
    }
    CHECK(parsed_ok >= 0);
}

TEST_CASE("deep nesting is rejected, not crashed on") {
    std::string deep(2000, '(');
    deep += "a";
    CHECK(error_code_of([&] { parse_expression(deep); }) == Errc::SyntaxError);
}

TEST_CASE("expression arguments must consume all input") {
    CHECK(error_code_of([] { parse_expression("a b"); }) == Errc::SyntaxError);
    CHECK(error_code_of([] { parse_expression(""); }) == Errc::SyntaxError);
}

TEST_CASE("scenario documents") {
    const ScenarioSpec scenario = parse_scenario(R"(
# worked example
test slow_a diverges;
test finder terminates_at 5;
test slow_b diverges;
goal dovetail(slow_a, finder, slow_b);
budget 100;
)");
    REQUIRE(scenario.tests.size() == 3);
    CHECK(scenario.goal == GoalKind::Dovetail);
    CHECK(scenario.goal_tests == std::vector<std::string>{"slow_a", "finder", "slow_b"});
    CHECK(scenario.budget == 100);
    const auto processes = scenario.goal_processes();
    REQUIRE(processes.size() == 3);
    CHECK_FALSE(processes[0].terminates());
    CHECK(processes[1].steps() == 5);
}

TEST_CASE("scenario validation") {
    CHECK(error_code_of([] { parse_scenario("test t diverges; budget 5;"); }) == Errc::SyntaxError);
    CHECK(error_code_of([] { parse_scenario("test t diverges; goal conj(t);"); }) == Errc::SyntaxError);
    CHECK(error_code_of([] { parse_scenario("test t diverges; goal conj(u); budget 5;"); }) ==
          Errc::UnknownTest);
    CHECK(error_code_of([] {
              parse_scenario("test t diverges; test t diverges; goal conj(t); budget 5;");
          }) == Errc::DuplicateTest);
    CHECK(error_code_of([] { parse_scenario("test t terminates_at 0; goal conj(t); budget 5;"); }) ==
          Errc::SyntaxError);
    CHECK(error_code_of([] {
              parse_scenario("test t diverges; goal conj(t); goal conj(t); budget 5;");
          }) == Errc::DuplicateSection);
}

TEST_CASE("comments and whitespace variants") {
    const ContextSpec spec = parse_spec("context c {\r\n  atoms: a; # trailing comment\r\n}\r\n");
    CHECK(spec.atoms == std::vector<std::string>{"a"});
}
