#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pap {

// Coarse classification used by the CLI to pick an exit code.
enum class ErrorKind { input, numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string tag, const std::string& what)
        : std::runtime_error(what), kind_(kind), tag_(std::move(tag)) {}

    ErrorKind kind() const noexcept { return kind_; }
    // Machine-readable tag such as DOMAIN_ERROR.
    const std::string& tag() const noexcept { return tag_; }

private:
    ErrorKind kind_;
    std::string tag_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what)
        : Error(ErrorKind::input, "DOMAIN_ERROR", what) {}
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what)
        : Error(ErrorKind::input, "DIMENSION_MISMATCH", what) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& source, int line, const std::string& what)
        : Error(ErrorKind::input, "PARSE_ERROR",
                source + ":" + std::to_string(line) + ": " + what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what, std::string tag = "CONFIG_ERROR")
        : Error(ErrorKind::input, std::move(tag), what) {}
};

class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what, std::string tag = "NON_CONVERGENCE")
        : Error(ErrorKind::numerical, std::move(tag), what) {}
};

class CalibrationError : public Error {
public:
    explicit CalibrationError(const std::string& what)
        : Error(ErrorKind::numerical, "CALIBRATION_FAILED", what) {}
};

// Adaptive step collapsed below the allowed floor.
class StiffnessError : public Error {
public:
    StiffnessError(const std::string& what, double t, double dt)
        : Error(ErrorKind::numerical, "STIFFNESS", what), t_(t), dt_(dt) {}

    double time() const noexcept { return t_; }
    double step() const noexcept { return dt_; }

private:
    double t_, dt_;
};

class NormViolationError : public Error {
public:
    NormViolationError(const std::string& what, double excess)
        : Error(ErrorKind::numerical, "NORM_VIOLATION", what), excess_(excess) {}

    double excess() const noexcept { return excess_; }

private:
    double excess_;
};

// Energy ladder that failed to extrapolate; the ladder itself is kept for diagnosis.
class ScatteringLengthError : public ConvergenceError {
public:
    struct Rung {
        double energy, k, phase_shift, a_running;
    };

    ScatteringLengthError(const std::string& what, std::vector<Rung> ladder)
        : ConvergenceError(what, "SCATTERING_LENGTH_DIVERGENT"), ladder_(std::move(ladder)) {}

    const std::vector<Rung>& ladder() const noexcept { return ladder_; }

private:
    std::vector<Rung> ladder_;
};

}  // namespace pap
