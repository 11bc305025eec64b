#pragma once

#include <exception>
#include <stdexcept>
#include <string>

namespace ptlattice {

/// Numerical failure raised by one of the solvers. `name()` is the stable
/// identifier echoed by the CLI (e.g. "SingularSystem").
class NumericalError : public std::exception {
public:
    NumericalError(std::string name, const std::string& what)
        : name_(std::move(name)), message_(name_ + ": " + what) {}

    const std::string& name() const noexcept { return name_; }
    const char* what() const noexcept override { return message_.c_str(); }

    /// Appends where the failure happened, e.g. the parameter point.
    void add_context(const std::string& context) { message_ += " [" + context + "]"; }

private:
    std::string name_;
    std::string message_;
};

struct SingularSystem : NumericalError {
    explicit SingularSystem(const std::string& what) : NumericalError("SingularSystem", what) {}
};

struct NonConvergent : NumericalError {
    explicit NonConvergent(const std::string& what) : NumericalError("NonConvergent", what) {}
};

struct StepUnstable : NumericalError {
    explicit StepUnstable(const std::string& what) : NumericalError("StepUnstable", what) {}
};

struct DegenerateDenominator : NumericalError {
    explicit DegenerateDenominator(const std::string& what)
        : NumericalError("DegenerateDenominator", what) {}
};

struct Overflow : NumericalError {
    explicit Overflow(const std::string& what) : NumericalError("Overflow", what) {}
};

struct DegenerateProfile : NumericalError {
    explicit DegenerateProfile(const std::string& what)
        : NumericalError("DegenerateProfile", what) {}
};

/// Input outside an operation's domain (bad parameter value, violated
/// precondition). Distinct from numerical failures.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace ptlattice
