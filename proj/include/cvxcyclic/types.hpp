#pragma once

#include <complex>
#include <cstdint>
#include <Eigen/Dense>

namespace cvxcyclic {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Entry magnitudes beyond this abort orbit-style iterations.
inline constexpr double kOverflowGuard = 1e300;

/// Default seed for all sample-based operations.
inline constexpr std::uint64_t kDefaultSeed = 0x5eed5eedULL;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline bool all_finite(const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!is_finite(v[i])) return false;
    return true;
}

inline bool all_finite(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!is_finite(m(i, j))) return false;
    return true;
}

}  // namespace cvxcyclic
