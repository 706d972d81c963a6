#include "cvxcyclic/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include "cvxcyclic/errors.hpp"
#include "cvxcyclic/hull.hpp"

namespace cvxcyclic {

LinearOperator direct_sum_pm(const LinearOperator& T, BlockSign sign) {
    OperatorSpec second =
        sign == BlockSign::Plus ? T.spec() : spec::negate(T.spec());
    return build_operator(spec::direct_sum({T.spec(), std::move(second)}));
}

LinearOperator scale_operator(const LinearOperator& T, double c) {
    if (!(c > 1.0))
        throw InvalidScale("scale_operator: factor must be > 1 (got " + std::to_string(c) + ")");
    return build_operator(spec::scale(Complex(c, 0.0), T.spec()));
}

namespace {

int smallest_support(double eps, double norm_y, double delta) {
    // Smallest N >= 1 with 2 eps^N ||y|| < delta.
    int n = 1;
    double power = eps;
    while (!(2.0 * power * norm_y < delta)) {
        ++n;
        power *= eps;
        if (n > 1'000'000)
            throw InvalidArgument("epsilon greedy: support size exceeds 1e6; "
                                  "raise delta or lower eps");
    }
    return n;
}

}  // namespace

EpsilonGreedyResult epsilon_greedy_with_oracle(const Vector& y, double eps, double delta,
                                               const ExponentOracle& oracle) {
    if (y.norm() == 0.0) throw InvalidArgument("epsilon greedy: target must be nonzero");
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("epsilon greedy: eps must lie in (0,1)");
    if (!(delta > 0.0)) throw InvalidArgument("epsilon greedy: delta must be positive");

    const double norm_y = y.norm();
    const int n_support = smallest_support(eps, norm_y, delta);

    EpsilonGreedyResult result;
    result.big_n = n_support;
    result.bound = std::pow(eps, n_support) * norm_y;

    const double zero_threshold = 1e-12 * n_support * norm_y;
    std::vector<Vector> picked_values;
    Vector residual = static_cast<double>(n_support) * y;

    auto query = [&](const Vector& target, double accept, int step) -> OracleReply {
        OracleProbe probe = oracle(target, accept);
        // Enforce the contract even on injected oracles.
        if (probe.hit && (probe.hit->value - target).norm() > accept * (1.0 + 1e-12)) {
            probe.best_ratio = (probe.hit->value - target).norm() / target.norm();
            probe.hit.reset();
        }
        if (!probe.hit)
            throw OracleMiss(step, probe.best_ratio, result.exponents, result.steps);
        return *probe.hit;
    };

    for (int j = 1; j <= n_support; ++j) {
        const OracleReply reply = query(residual, eps * residual.norm(), j);
        result.exponents.push_back(reply.exponent);
        picked_values.push_back(reply.value);
        residual -= reply.value;
        result.steps.push_back(residual.norm());

        if (j < n_support && residual.norm() <= zero_threshold) {
            // Exact hit: spend the remaining budget on one rescaled target.
            const double rescale =
                static_cast<double>(n_support) / (n_support - j) * std::pow(eps, n_support);
            const Vector target_l = rescale * y;
            const OracleReply tail = query(target_l, eps * target_l.norm(), j + 1);
            for (int r = j; r < n_support; ++r) result.exponents.push_back(tail.exponent);
            picked_values.push_back(static_cast<double>(n_support - j) * tail.value);
            result.zero_branch = true;
            break;
        }
    }

    Vector combination = Vector::Zero(y.size());
    for (const auto& v : picked_values) combination += v;
    combination /= static_cast<double>(n_support);
    result.achieved_error = (combination - y).norm();

    std::vector<double> coeffs(
        static_cast<std::size_t>(*std::max_element(result.exponents.begin(),
                                                   result.exponents.end())) + 1,
        0.0);
    for (long k : result.exponents) coeffs[static_cast<std::size_t>(k)] += 1.0 / n_support;
    result.polynomial = make_convex(std::move(coeffs));
    return result;
}

ExponentOracle orbit_exponent_oracle(const LinearOperator& T, const Vector& x, long horizon) {
    if (horizon < 0 || horizon > 100'000)
        throw InvalidArgument("orbit oracle: horizon must lie in [0, 100000]");
    std::shared_ptr<OrbitTable> orbit;
    try {
        orbit = std::make_shared<OrbitTable>(compute_orbit(T, x, static_cast<int>(horizon)));
    } catch (const NumericalOverflow& overflow) {
        // Search what fits in double range; later exponents cannot help anyway.
        if (overflow.last_safe_n() < 0) throw;
        orbit = std::make_shared<OrbitTable>(
            compute_orbit(T, x, static_cast<int>(overflow.last_safe_n())));
    }
    return [orbit](const Vector& target, double accept) {
        OracleProbe probe;
        long best_n = 0;
        double best = std::numeric_limits<double>::infinity();
        for (int n = 0; n <= orbit->horizon(); ++n) {
            const double dist = (orbit->rows[n] - target).norm();
            if (dist < best) {
                best = dist;
                best_n = n;
            }
        }
        probe.best_ratio = target.norm() == 0.0 ? best : best / target.norm();
        if (best <= accept) probe.hit = OracleReply{best_n, orbit->rows[best_n]};
        return probe;
    };
}

ExponentOracle mock_exponent_oracle(std::uint64_t seed) {
    struct State {
        std::mt19937_64 rng;
        long counter = 0;
    };
    auto state = std::make_shared<State>();
    state->rng.seed(seed);
    return [state](const Vector& target, double accept) {
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> unif(0.0, 0.95);
        Vector dir(target.size());
        for (Eigen::Index i = 0; i < dir.size(); ++i)
            dir[i] = Complex(gauss(state->rng), gauss(state->rng));
        dir /= dir.norm();
        OracleProbe probe;
        probe.best_ratio = 0.0;
        probe.hit = OracleReply{state->counter++, target + unif(state->rng) * accept * dir};
        return probe;
    };
}

EpsilonGreedyResult epsilon_greedy_approximation(const LinearOperator& T, const Vector& x,
                                                 const Vector& y, double eps, long horizon,
                                                 double delta) {
    if (x.size() != T.dim() || y.size() != T.dim())
        throw DimensionMismatch("epsilon greedy: dims disagree");
    return epsilon_greedy_with_oracle(y, eps, delta, orbit_exponent_oracle(T, x, horizon));
}

DiskTouchingResult disk_touching_polynomial(Complex z0, int max_n) {
    if (!(std::abs(z0) > 1.0))
        throw NotOutsideDisk("disk_touching_polynomial: |z0| must exceed 1");
    if (max_n < 1) throw InvalidArgument("disk_touching_polynomial: max_n must be >= 1");

    Complex zeta = Complex(1.0, 0.0);
    for (int n = 1; n <= max_n; ++n) {
        zeta *= z0;
        if (!is_finite(zeta) || std::abs(zeta) > kOverflowGuard) break;
        if (zeta.real() < 1.0) {
            // Unique a in (0,1) with |a zeta + (1-a)| = 1; exists since |zeta| > 1.
            const double a = 2.0 * (1.0 - zeta.real()) / std::norm(zeta - Complex(1.0, 0.0));
            DiskTouchingResult out;
            out.n = n;
            out.a = a;
            out.polynomial = substitute_monomial(make_convex({1.0 - a, a}), n);
            return out;
        }
    }
    throw NoExponentFound("disk_touching_polynomial: no power of z0 has real part < 1 "
                          "within the scan limit");
}

}  // namespace cvxcyclic
