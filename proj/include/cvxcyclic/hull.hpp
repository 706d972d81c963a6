#pragma once

#include <functional>
#include <vector>

#include "cvxcyclic/convex_poly.hpp"
#include "cvxcyclic/linear_operator.hpp"
#include "cvxcyclic/operator_spec.hpp"
#include "cvxcyclic/types.hpp"

namespace cvxcyclic {

/// Precomputed orbit segment: rows[n] = T^n x for n = 0..N.
struct OrbitTable {
    std::vector<Vector> rows;
    OperatorSpec operator_spec;
    Vector seed;

    int horizon() const { return static_cast<int>(rows.size()) - 1; }
};

/// N+1 rows by repeated application. Aborts with NumericalOverflow (carrying
/// the last safe n) once any entry magnitude exceeds the guard; rows are
/// never rescaled, since rescaling would change the hull.
OrbitTable compute_orbit(const LinearOperator& T, const Vector& x, int N);

/// Certificate for one simplex-constrained least-squares solve.
/// distance is exact for the returned coefficients; the true minimum lies in
/// [sqrt(max(0, distance^2 - gap)), distance].
struct HullApproximation {
    std::vector<double> coefficients;  // simplex vector over the points used
    double distance = 0.0;             // Euclidean, complex as R^{2d}
    double gap = 0.0;                  // Frank-Wolfe gap on the squared distance
    int iterations = 0;
};

/// Called once per solver iteration with the current simplex coefficients and
/// their reconstruction (the candidate hull point).
using FrankWolfeObserver =
    std::function<void(int iter, const std::vector<double>& coeffs, const Vector& reconstruction)>;

/// Away-step Frank-Wolfe over the simplex spanned by arbitrary points;
/// terminates when the gap falls to tol^2 or after max_iter iterations
/// (not converging is not an error -- gap reports the residual uncertainty).
HullApproximation simplex_least_squares(const std::vector<Vector>& points, const Vector& y,
                                        double tol, int max_iter,
                                        const FrankWolfeObserver& observer = nullptr);

/// Distance from y to the convex hull of the orbit rows.
HullApproximation best_convex_approximation(const OrbitTable& orbit, const Vector& y,
                                            double tol, int max_iter,
                                            const FrankWolfeObserver& observer = nullptr);

/// Exhaustive lattice minimum of ||sum a_k points[k] - y|| over the regular
/// simplex grid {a_k = m_k / grid}. Test oracle; at most 6 points.
double brute_force_simplex_oracle(const std::vector<Vector>& points, const Vector& y, int grid);

struct DensityProbeResult {
    double score = 0.0;              // fraction of targets within tol
    std::vector<double> residuals;   // one per target, input order
    std::vector<HullApproximation> approximations;
};

/// Heuristic density indicator over a list of targets; not a proof either way.
DensityProbeResult density_probe(const LinearOperator& T, const Vector& x,
                                 const std::vector<Vector>& targets, int N, double tol,
                                 int max_iter = 10'000);

struct FamilySpec {
    enum class Kind { Cesaro, Pkc, MonomialAverage };
    Kind kind = Kind::Cesaro;
    double c = 1.0;     // Pkc only
    int n_terms = 0;    // MonomialAverage only
};

struct FamilyProbeResult {
    int best_k = 0;               // family index (largest exponent for averages)
    double distance = 0.0;
    std::vector<long> exponents;  // MonomialAverage only
};

/// Scans a one-parameter convex-polynomial family for the member taking x
/// closest to y. Monomial averages use greedy exponent selection over the
/// orbit with no acceptance threshold.
FamilyProbeResult family_probe(const LinearOperator& T, const Vector& x, const Vector& y,
                               const FamilySpec& family, int max_k);

}  // namespace cvxcyclic
