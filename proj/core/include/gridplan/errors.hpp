#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gridplan {

// Malformed input file (bad syntax, bad header, unparseable value).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// One or more domain invariants violated.  Carries every violation so a bad
// file is reported in a single pass.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out = "validation failed:";
        for (const auto& s : issues) {
            out += "\n  - ";
            out += s;
        }
        return out;
    }
    std::vector<std::string> issues_;
};

// Input time series does not cover the requested horizon.
class CoverageError : public std::runtime_error {
public:
    explicit CoverageError(std::vector<std::string> gaps)
        : std::runtime_error(join(gaps)), gaps_(std::move(gaps)) {}

    const std::vector<std::string>& gaps() const { return gaps_; }

private:
    static std::string join(const std::vector<std::string>& gaps) {
        std::string out = "data coverage gaps:";
        for (const auto& s : gaps) {
            out += "\n  - ";
            out += s;
        }
        return out;
    }
    std::vector<std::string> gaps_;
};

// A solve ended in a state the caller cannot interpret as a solution
// (infeasible where feasibility was required, numerical failure, ...).
class SolveError : public std::runtime_error {
public:
    explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gridplan
