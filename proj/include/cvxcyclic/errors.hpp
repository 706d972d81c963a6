#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cvxcyclic {

/// Coarse error class used by the CLI to pick an exit code:
/// Config -> 2, Numerical -> 3, Oracle -> 4.
enum class ErrorKind { Config, Numerical, Oracle };

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg, ErrorKind kind = ErrorKind::Config)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string& msg) : Error(msg) {}
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

struct NegativeCoefficient : Error {
    explicit NegativeCoefficient(const std::string& msg) : Error(msg) {}
};

struct SumNotOne : Error {
    explicit SumNotOne(const std::string& msg) : Error(msg) {}
};

struct ZeroFunctional : Error {
    explicit ZeroFunctional(const std::string& msg) : Error(msg) {}
};

struct EmptySpectrum : Error {
    explicit EmptySpectrum(const std::string& msg) : Error(msg) {}
};

struct ZeroCoordinateAtPair : Error {
    explicit ZeroCoordinateAtPair(const std::string& msg) : Error(msg) {}
};

struct TooManyPoints : Error {
    explicit TooManyPoints(const std::string& msg) : Error(msg) {}
};

struct InvalidScale : Error {
    explicit InvalidScale(const std::string& msg) : Error(msg) {}
};

struct NoExponentFound : Error {
    explicit NoExponentFound(const std::string& msg) : Error(msg) {}
};

struct NotOutsideDisk : Error {
    explicit NotOutsideDisk(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

struct IOError : Error {
    explicit IOError(const std::string& msg) : Error(msg) {}
};

/// Raised when no implemented criterion decides the operator either way.
struct UndecidedOperator : Error {
    explicit UndecidedOperator(const std::string& msg) : Error(msg) {}
};

struct EigensolverFailure : Error {
    explicit EigensolverFailure(const std::string& msg)
        : Error(msg, ErrorKind::Numerical) {}
};

class NumericalOverflow : public Error {
public:
    NumericalOverflow(const std::string& msg, long last_safe_n)
        : Error(msg, ErrorKind::Numerical), last_safe_n_(last_safe_n) {}
    /// Index of the last iterate whose entries stayed inside the guard.
    long last_safe_n() const { return last_safe_n_; }

private:
    long last_safe_n_;
};

/// No exponent satisfied the contraction contract at the given step.
/// Carries the partial run so callers can inspect how far the search got.
class OracleMiss : public Error {
public:
    OracleMiss(int step, double best_ratio, std::vector<long> exponents,
               std::vector<double> residuals)
        : Error("oracle miss at step " + std::to_string(step) +
                    " (best ratio " + std::to_string(best_ratio) + ")",
                ErrorKind::Oracle),
          step_(step),
          best_ratio_(best_ratio),
          exponents_(std::move(exponents)),
          residuals_(std::move(residuals)) {}

    int step() const { return step_; }
    double best_ratio() const { return best_ratio_; }
    const std::vector<long>& partial_exponents() const { return exponents_; }
    const std::vector<double>& partial_residuals() const { return residuals_; }

private:
    int step_;
    double best_ratio_;
    std::vector<long> exponents_;
    std::vector<double> residuals_;
};

}  // namespace cvxcyclic
