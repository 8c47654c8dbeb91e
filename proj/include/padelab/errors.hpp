#ifndef PADELAB_ERRORS_HPP
#define PADELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace padelab {

// Bad run configuration or catalog parameters. CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested computation needs data the function does not provide
// (missing reference evaluator, no declared regular point, ...). Exit code 3.
class CapabilityError : public std::runtime_error {
public:
    explicit CapabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numeric procedure failed to meet its target (root refinement budget
// exhausted, ...). Exit code 4.
class NumericFailure : public std::runtime_error {
public:
    NumericFailure(const std::string& msg, double best_residual)
        : std::runtime_error(msg), best_residual(best_residual) {}
    double best_residual;
};

// Point outside a declared evaluation region, x >= n_k in psi, etc.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Schedule constraint violation (jump > 1, m_n > n, ...).
class ScheduleError : public std::runtime_error {
public:
    explicit ScheduleError(const std::string& msg) : std::runtime_error(msg) {}
};

// An exact identity that must hold by construction failed; signals a bug.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace padelab

#endif
