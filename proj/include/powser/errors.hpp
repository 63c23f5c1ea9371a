#ifndef POWSER_ERRORS_HPP
#define POWSER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace powser {

/// Invalid experiment or barrier parameters (maps to CLI exit code 2).
class SpecError : public std::invalid_argument {
public:
    explicit SpecError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Malformed or insufficient input data (stream too short, bad degree, ...).
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// exp() overflowed while evaluating the product on the circle; carries the
/// offending angle.
class OverflowError : public std::runtime_error {
public:
    OverflowError(const std::string& msg, double angle)
        : std::runtime_error(msg), angle_(angle) {}
    double angle() const { return angle_; }

private:
    double angle_;
};

/// More than the tolerated fraction of Monte Carlo trials failed
/// (maps to CLI exit code 3).
class TrialAbortError : public std::runtime_error {
public:
    explicit TrialAbortError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace powser

#endif // POWSER_ERRORS_HPP
