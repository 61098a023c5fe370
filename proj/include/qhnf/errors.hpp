#pragma once

#include <stdexcept>
#include <string>

namespace qhnf {

// Input text could not be parsed. Carries 1-based line/column of the
// offence; both are 0 for inputs with no text location (option values).
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, int line, int col)
        : std::runtime_error(what + " (line " + std::to_string(line) +
                             ", column " + std::to_string(col) + ")"),
          line_(line), col_(col) {}

    explicit parse_error(const std::string& what)
        : std::runtime_error(what), line_(0), col_(0) {}

    int line() const { return line_; }
    int column() const { return col_; }

private:
    int line_;
    int col_;
};

// A structural hypothesis of the reduction does not hold for the input
// (non-squarefree Hamiltonian, wrong principal-part shape, d = 1, ...).
class assumption_error : public std::runtime_error {
public:
    assumption_error(const std::string& hypothesis, const std::string& detail)
        : std::runtime_error(hypothesis + ": " + detail), hypothesis_(hypothesis) {}

    const std::string& hypothesis() const { return hypothesis_; }

private:
    std::string hypothesis_;
};

// The per-degree kernel condition on the restricted homological operator
// failed, so the computed complement is not unique at this degree.
class kernel_obstruction : public std::runtime_error {
public:
    explicit kernel_obstruction(int degree)
        : std::runtime_error("restricted homological operator has a nontrivial "
                             "kernel at degree " + std::to_string(degree)),
          degree_(degree) {}

    int degree() const { return degree_; }

private:
    int degree_;
};

// A floating-point solver failed (no section return, Newton divergence,
// step-size underflow, inconsistent linear system over doubles).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qhnf
