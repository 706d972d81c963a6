#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cvxcyclic/convex_poly.hpp"
#include "cvxcyclic/linear_operator.hpp"
#include "cvxcyclic/types.hpp"

namespace cvxcyclic {

enum class BlockSign { Plus, Minus };

/// T (+/-) T as a block-diagonal operator of doubled dimension.
LinearOperator direct_sum_pm(const LinearOperator& T, BlockSign sign);

/// c T for real c > 1 (smaller factors rejected: the probe-scaling guarantees
/// only cover genuine dilations).
LinearOperator scale_operator(const LinearOperator& T, double c);

/// One oracle query: the value claimed for T^exponent x, or absence plus the
/// best contraction ratio seen (for diagnostics).
struct OracleReply {
    long exponent = 0;
    Vector value;
};

struct OracleProbe {
    std::optional<OracleReply> hit;
    double best_ratio = std::numeric_limits<double>::infinity();
};

/// Given a target and the acceptance radius, produce a vector within that
/// radius of the target (or report the miss). Injectable so the greedy
/// certificate logic can be driven without any dynamical assumptions.
using ExponentOracle = std::function<OracleProbe(const Vector& target, double accept_norm)>;

struct EpsilonGreedyResult {
    std::vector<long> exponents;       // k_1..k_N (repeats allowed)
    ConvexPolynomial polynomial;       // 1/N at each chosen exponent, accumulated
    double achieved_error = 0.0;       // ||(1/N) sum of oracle values - y||, recomputed
    double bound = 0.0;                // eps^N ||y||
    std::vector<double> steps;         // residual norms after each step
    int big_n = 0;                     // N
    bool zero_branch = false;
};

/// Greedy support-N average: residual starts at N y; each accepted step
/// contracts it by eps. When a step lands exactly on the target, the rest of
/// the budget is spent on one rescaled target (the zero-residual branch),
/// giving final error at most 2 eps^N ||y|| instead of eps^N ||y||.
EpsilonGreedyResult epsilon_greedy_with_oracle(const Vector& y, double eps, double delta,
                                               const ExponentOracle& oracle);

/// Same loop with the real-orbit oracle over exponents <= horizon.
EpsilonGreedyResult epsilon_greedy_approximation(const LinearOperator& T, const Vector& x,
                                                 const Vector& y, double eps, long horizon,
                                                 double delta);

/// Exhaustive search over the orbit segment: argmin_n ||T^n x - target||.
ExponentOracle orbit_exponent_oracle(const LinearOperator& T, const Vector& x, long horizon);

/// Fabricates replies satisfying the acceptance radius by construction;
/// exponents count up from zero. Deterministic in the seed.
ExponentOracle mock_exponent_oracle(std::uint64_t seed = kDefaultSeed);

struct DiskTouchingResult {
    int n = 0;        // exponent with Re(z0^n) < 1
    double a = 0.0;   // mixing weight in (0, 1)
    ConvexPolynomial polynomial;  // a z^n + (1 - a)
};

/// Two-term convex polynomial with |p(z0)| = 1 for a point z0 outside the
/// closed unit disk. Fails with NoExponentFound when every power of z0 keeps
/// real part >= 1 (e.g. real z0 > 1).
DiskTouchingResult disk_touching_polynomial(Complex z0, int max_n = 512);

}  // namespace cvxcyclic
