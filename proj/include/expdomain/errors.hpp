#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace expdomain {

enum class Errc {
    EmptyUniverse,
    DuplicateAtom,
    UnknownAtom,
    AtomCapExceeded,
    MixedContexts,
    ArityMismatch,
    EmptyList,
    EmptyBasis,
    ClosureCapExceeded,
    EnumerationCapExceeded,
    NotInDomain,
    UnknownPossibility,
    InvalidActual,
    InvalidStepCount,
    InconsistentTest,
    SyntaxError,
    DuplicateSection,
    UnknownTest,
    DuplicateTest,
};

inline const char* errc_name(Errc code) {
    switch (code) {
        case Errc::EmptyUniverse: return "EmptyUniverse";
        case Errc::DuplicateAtom: return "DuplicateAtom";
        case Errc::UnknownAtom: return "UnknownAtom";
        case Errc::AtomCapExceeded: return "AtomCapExceeded";
        case Errc::MixedContexts: return "MixedContexts";
        case Errc::ArityMismatch: return "ArityMismatch";
        case Errc::EmptyList: return "EmptyList";
        case Errc::EmptyBasis: return "EmptyBasis";
        case Errc::ClosureCapExceeded: return "ClosureCapExceeded";
        case Errc::EnumerationCapExceeded: return "EnumerationCapExceeded";
        case Errc::NotInDomain: return "NotInDomain";
        case Errc::UnknownPossibility: return "UnknownPossibility";
        case Errc::InvalidActual: return "InvalidActual";
        case Errc::InvalidStepCount: return "InvalidStepCount";
        case Errc::InconsistentTest: return "InconsistentTest";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::DuplicateSection: return "DuplicateSection";
        case Errc::UnknownTest: return "UnknownTest";
        case Errc::DuplicateTest: return "DuplicateTest";
    }
    return "Unknown";
}

/// Base class for every structured error raised by the library.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message) : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }
    const char* code_name() const noexcept { return errc_name(code_); }

private:
    Errc code_;
};

/// Parse failure with source position and the token classes that would have
/// been accepted at that position.
class ParseError : public Error {
public:
    ParseError(int line, int column, std::vector<std::string> expected, const std::string& found)
        : Error(Errc::SyntaxError, format(line, column, expected, found)),
          line_(line),
          column_(column),
          expected_(std::move(expected)),
          found_(found) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }
    const std::string& found() const noexcept { return found_; }

private:
    static std::string format(int line, int column, const std::vector<std::string>& expected,
                              const std::string& found) {
        std::string msg = "syntax error at " + std::to_string(line) + ":" + std::to_string(column);
        if (!expected.empty()) {
            msg += ": expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) msg += i + 1 == expected.size() ? " or " : ", ";
                msg += expected[i];
            }
        }
        if (!found.empty()) msg += ", found " + found;
        return msg;
    }

    int line_;
    int column_;
    std::vector<std::string> expected_;
    std::string found_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace expdomain
