#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expdomain/errors.hpp"

namespace expdomain {

/// A verification procedure modeled declaratively: it either terminates
/// successfully at a known positive step count, or never terminates.
/// Nontermination carries no information about falsehood.
class TestProcess {
public:
    static TestProcess terminating(std::uint64_t steps, std::string description = "") {
        if (steps == 0) fail(Errc::InvalidStepCount, "a terminating test needs a positive step count");
        return TestProcess(steps, std::move(description));
    }

    static TestProcess diverging(std::string description = "") { return TestProcess(0, std::move(description)); }

    bool terminates() const { return steps_ != 0; }
    std::uint64_t steps() const { return steps_; }
    const std::string& description() const { return description_; }

private:
    TestProcess(std::uint64_t steps, std::string description) : steps_(steps), description_(std::move(description)) {}

    std::uint64_t steps_;  // 0 encodes divergence
    std::string description_;
};

/// What a finite-budget observation of a process yields: either the process
/// verified within budget, or the budget ran out with nothing learned.
class Outcome {
public:
    static Outcome verified(std::uint64_t steps) { return Outcome(true, steps); }
    static Outcome pending() { return Outcome(false, 0); }

    bool is_verified() const { return verified_; }
    std::uint64_t steps() const { return steps_; }

    friend bool operator==(const Outcome&, const Outcome&) = default;

private:
    Outcome(bool verified, std::uint64_t steps) : verified_(verified), steps_(steps) {}
    bool verified_;
    std::uint64_t steps_;
};

/// A test pair for a decidable statement: one process verifies it, the other
/// refutes it. At most one of them may terminate.
struct DecidableTest {
    TestProcess verify;
    TestProcess refute;

    static DecidableTest of(TestProcess verify, TestProcess refute) {
        if (verify.terminates() && refute.terminates())
            fail(Errc::InconsistentTest, "a statement cannot be verified and refuted at once");
        return DecidableTest{std::move(verify), std::move(refute)};
    }
};

/// Deterministic finite-budget run. Pending never implies falsehood.
inline Outcome run(const TestProcess& test, std::uint64_t budget) {
    if (test.terminates() && test.steps() <= budget) return Outcome::verified(test.steps());
    return Outcome::pending();
}

/// Sequential verification of every conjunct: terminates with the summed
/// step count when all components terminate, diverges when any diverges.
/// The empty conjunction is the tautology's trivial one-step test.
inline TestProcess conj_test(std::span<const TestProcess> tests) {
    if (tests.empty()) return TestProcess::terminating(1, "empty conjunction (tautology)");
    std::uint64_t total = 0;
    for (const auto& t : tests) {
        if (!t.terminates()) return TestProcess::diverging("conjunction blocked by a diverging component");
        total += t.steps();
    }
    return TestProcess::terminating(total, "conjunction verified sequentially");
}

inline TestProcess conj_test(std::initializer_list<TestProcess> tests) {
    return conj_test(std::span<const TestProcess>(tests.begin(), tests.size()));
}

/// The dovetailing round schedule, fully simulated: in round n the first
/// min(n, count) tests each run n steps from scratch; every test in a round
/// is charged the full round length.
struct DovetailTrace {
    bool terminated = false;
    std::uint64_t round = 0;        // first successful round, 0 if none
    std::uint64_t total_steps = 0;  // sum over rounds of round * tests_run
    std::size_t winner = 0;         // 0-based index of the verifying test
};

inline DovetailTrace dovetail_trace(std::span<const TestProcess> tests) {
    if (tests.empty()) fail(Errc::EmptyList, "dovetailing needs at least one test");
    DovetailTrace trace;

    bool any_terminates = false;
    for (const auto& t : tests) any_terminates |= t.terminates();
    if (!any_terminates) return trace;

    for (std::uint64_t n = 1;; ++n) {
        const std::size_t active = std::min<std::size_t>(n, tests.size());
        trace.total_steps += n * active;
        for (std::size_t i = 0; i < active; ++i) {
            if (tests[i].terminates() && tests[i].steps() <= n) {
                trace.terminated = true;
                trace.round = n;
                trace.winner = i;
                return trace;
            }
        }
    }
}

/// Disjunction over a family of tests by dovetailing; the result is itself a
/// test that terminates exactly when some component does.
inline TestProcess dovetail_disj(std::span<const TestProcess> tests) {
    const DovetailTrace trace = dovetail_trace(tests);
    if (!trace.terminated) return TestProcess::diverging("no disjunct ever verifies");
    return TestProcess::terminating(trace.total_steps,
                                    "dovetail verified in round " + std::to_string(trace.round));
}

inline TestProcess dovetail_disj(std::initializer_list<TestProcess> tests) {
    return dovetail_disj(std::span<const TestProcess>(tests.begin(), tests.size()));
}

/// A stream of swan observations: a finite prefix (true = black) optionally
/// followed by an unbounded all-white remainder.
struct SwanStream {
    std::vector<bool> black;
    bool unbounded_white_tail = false;
};

/// Linear scan for a black swan; step k inspects swan k. Terminates at the
/// first black swan, diverges when none exists and the stream never ends.
inline TestProcess swan_search(const SwanStream& stream) {
    for (std::size_t i = 0; i < stream.black.size(); ++i)
        if (stream.black[i]) return TestProcess::terminating(i + 1, "black swan found");
    return TestProcess::diverging(stream.unbounded_white_tail ? "searching an endless all-white stream"
                                                              : "search never verifies");
}

/// When the stream is finite and declared exhausted, absence becomes
/// refutable: scanning to the end refutes in length+1 steps.
inline DecidableTest swan_search_decidable(const std::vector<bool>& black) {
    SwanStream stream{black, false};
    TestProcess verify = swan_search(stream);
    TestProcess refute = verify.terminates()
                             ? TestProcess::diverging("a black swan exists; refutation never terminates")
                             : TestProcess::terminating(black.size() + 1, "stream exhausted, no black swan");
    return DecidableTest::of(std::move(verify), std::move(refute));
}

/// Demonstration that failure to verify is not refutation: a found swan
/// verifies, an endless white stream stays pending at every budget, and only
/// an exhaustible stream supports refutation.
struct NegationGapReport {
    Outcome found = Outcome::pending();  // black swan at position 7
    std::array<std::uint64_t, 3> budgets{10, 1000, 1000000};
    std::array<Outcome, 3> unbounded{Outcome::pending(), Outcome::pending(), Outcome::pending()};
    Outcome exhausted_refutation = Outcome::pending();  // refute branch of the empty stream
    std::vector<std::string> lines;
};

inline NegationGapReport negation_gap_demo() {
    SwanStream with_black;
    with_black.black = std::vector<bool>(10, false);
    with_black.black[6] = true;  // seventh swan is black

    SwanStream all_white;
    all_white.black = std::vector<bool>(10, false);
    all_white.unbounded_white_tail = true;

    NegationGapReport report;
    report.found = run(swan_search(with_black), 1000);

    const TestProcess endless = swan_search(all_white);
    for (std::size_t i = 0; i < report.budgets.size(); ++i)
        report.unbounded[i] = run(endless, report.budgets[i]);

    const DecidableTest empty_stream = swan_search_decidable({});
    report.exhausted_refutation = run(empty_stream.refute, 10);

    report.lines.push_back("stream with a black swan at position 7: " +
                           std::string(report.found.is_verified() ? "verified in " + std::to_string(report.found.steps()) + " steps"
                                                                  : "pending"));
    for (std::size_t i = 0; i < report.budgets.size(); ++i)
        report.lines.push_back("endless all-white stream at budget " + std::to_string(report.budgets[i]) + ": " +
                               (report.unbounded[i].is_verified() ? "verified" : "pending"));
    report.lines.push_back(std::string("exhausted empty stream: refutation ") +
                           (report.exhausted_refutation.is_verified() ? "verified" : "pending"));
    return report;
}

}  // namespace expdomain
