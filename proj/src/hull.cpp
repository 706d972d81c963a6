#include "cvxcyclic/hull.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "cvxcyclic/errors.hpp"

namespace cvxcyclic {

namespace {

double max_entry_magnitude(const Vector& v) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        m = std::max({m, std::abs(v[i].real()), std::abs(v[i].imag())});
    return m;
}

/// Complex points as columns of a real 2d x n matrix (the fixed R^{2d}
/// embedding every distance here lives in).
RealMatrix embed_points(const std::vector<Vector>& points) {
    const Eigen::Index d = points.front().size();
    RealMatrix cols(2 * d, static_cast<Eigen::Index>(points.size()));
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (points[k].size() != d)
            throw DimensionMismatch("points have inconsistent dimensions");
        cols.col(static_cast<Eigen::Index>(k)).head(d) = points[k].real();
        cols.col(static_cast<Eigen::Index>(k)).tail(d) = points[k].imag();
    }
    return cols;
}

RealVector embed_vector(const Vector& v) {
    RealVector out(2 * v.size());
    out.head(v.size()) = v.real();
    out.tail(v.size()) = v.imag();
    return out;
}

Vector unembed(const RealVector& v) {
    const Eigen::Index d = v.size() / 2;
    Vector out(d);
    out.real() = v.head(d);
    out.imag() = v.tail(d);
    return out;
}

}  // namespace

OrbitTable compute_orbit(const LinearOperator& T, const Vector& x, int N) {
    if (x.size() != T.dim())
        throw DimensionMismatch("compute_orbit: operator dim " + std::to_string(T.dim()) +
                                " vs seed dim " + std::to_string(x.size()));
    if (N < 0 || N > 100'000)
        throw InvalidArgument("compute_orbit: N must lie in [0, 100000]");
    if (max_entry_magnitude(x) > kOverflowGuard)
        throw NumericalOverflow("compute_orbit: seed exceeds overflow guard", -1);

    OrbitTable table;
    table.operator_spec = T.spec();
    table.seed = x;
    table.rows.reserve(static_cast<std::size_t>(N) + 1);
    table.rows.push_back(x);
    for (int n = 1; n <= N; ++n) {
        Vector next = T.apply(table.rows.back());
        if (max_entry_magnitude(next) > kOverflowGuard)
            throw NumericalOverflow("compute_orbit: orbit escaped double range at step " +
                                        std::to_string(n),
                                    n - 1);
        table.rows.push_back(std::move(next));
    }
    return table;
}

HullApproximation simplex_least_squares(const std::vector<Vector>& points, const Vector& y,
                                        double tol, int max_iter,
                                        const FrankWolfeObserver& observer) {
    if (points.empty()) throw InvalidArgument("simplex_least_squares: no points");
    if (!(tol > 0.0)) throw InvalidArgument("simplex_least_squares: tol must be positive");
    if (y.size() != points.front().size())
        throw DimensionMismatch("simplex_least_squares: target dim mismatch");

    const RealMatrix cols = embed_points(points);
    const RealVector target = embed_vector(y);
    const Eigen::Index n = cols.cols();

    // Start at the nearest vertex.
    Eigen::Index start = 0;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k) {
        const double dist = (cols.col(k) - target).squaredNorm();
        if (dist < best) {
            best = dist;
            start = k;
        }
    }
    RealVector a = RealVector::Zero(n);
    a[start] = 1.0;

    const double gap_target = tol * tol;
    double gap = std::numeric_limits<double>::infinity();
    int iter = 0;

    auto notify = [&](int i) {
        if (observer) {
            std::vector<double> coeffs(a.data(), a.data() + n);
            observer(i, coeffs, unembed(cols * a));
        }
    };
    notify(0);

    for (iter = 0; iter < max_iter; ++iter) {
        const RealVector z = cols * a - target;       // residual
        const RealVector g = 2.0 * (cols.transpose() * z);

        Eigen::Index fw = 0;
        g.minCoeff(&fw);
        Eigen::Index away = -1;
        double away_val = -std::numeric_limits<double>::infinity();
        for (Eigen::Index k = 0; k < n; ++k)
            if (a[k] > 0.0 && g[k] > away_val) {
                away_val = g[k];
                away = k;
            }

        const double ga = g.dot(a);
        gap = ga - g[fw];
        if (gap <= gap_target) break;

        // Directional derivatives: FW step s - a, away step a - v.
        const double slope_fw = g[fw] - ga;       // = -gap
        const double slope_away = ga - g[away];
        const bool use_away = slope_away < slope_fw && a[away] < 1.0;

        RealVector dir;
        double gamma_max;
        if (use_away) {
            dir = cols * a - cols.col(away);
            gamma_max = a[away] / (1.0 - a[away]);
        } else {
            dir = cols.col(fw) - cols * a;
            gamma_max = 1.0;
        }
        const double denom = dir.squaredNorm();
        if (denom == 0.0) break;  // degenerate direction: nothing to move along
        const double slope = use_away ? slope_away : slope_fw;
        double gamma = std::clamp(-slope / (2.0 * denom), 0.0, gamma_max);
        if (gamma == 0.0) break;

        if (use_away) {
            a *= (1.0 + gamma);
            a[away] -= gamma;
        } else {
            a *= (1.0 - gamma);
            a[fw] += gamma;
        }
        // Keep iterates exactly on the simplex.
        for (Eigen::Index k = 0; k < n; ++k) a[k] = std::max(a[k], 0.0);
        a /= a.sum();

        notify(iter + 1);
    }

    if (!std::isfinite(gap)) {  // loop never ran; certify the start point
        const RealVector z = cols * a - target;
        const RealVector g = 2.0 * (cols.transpose() * z);
        gap = g.dot(a) - g.minCoeff();
    }

    HullApproximation out;
    out.coefficients.assign(a.data(), a.data() + n);
    out.distance = (cols * a - target).norm();
    out.gap = std::max(gap, 0.0);
    out.iterations = iter;
    return out;
}

HullApproximation best_convex_approximation(const OrbitTable& orbit, const Vector& y,
                                            double tol, int max_iter,
                                            const FrankWolfeObserver& observer) {
    return simplex_least_squares(orbit.rows, y, tol, max_iter, observer);
}

double brute_force_simplex_oracle(const std::vector<Vector>& points, const Vector& y, int grid) {
    if (points.empty()) throw InvalidArgument("brute_force_simplex_oracle: no points");
    if (points.size() > 6)
        throw TooManyPoints("brute_force_simplex_oracle: at most 6 points (got " +
                            std::to_string(points.size()) + ")");
    if (grid < 1 || grid > 200)
        throw InvalidArgument("brute_force_simplex_oracle: grid must lie in [1, 200]");

    const RealMatrix cols = embed_points(points);
    if (y.size() != points.front().size())
        throw DimensionMismatch("brute_force_simplex_oracle: target dim mismatch");
    const RealVector target = embed_vector(y) * static_cast<double>(grid);
    const Eigen::Index p = cols.cols();

    double best_sq = std::numeric_limits<double>::infinity();
    if (p == 1) {
        best_sq = (cols.col(0) * grid - target).squaredNorm();
        return std::sqrt(best_sq) / grid;
    }

    // Depth-first over integer weights; the innermost pair (m, rem - m) is
    // swept with one incremental vector update per lattice point.
    std::vector<RealVector> partial(static_cast<std::size_t>(p));
    partial[0] = -target;
    std::function<void(Eigen::Index, int)> walk = [&](Eigen::Index depth, int rem) {
        if (depth == p - 2) {
            RealVector w = partial[depth] + rem * cols.col(p - 1);
            const RealVector step = cols.col(depth) - cols.col(p - 1);
            for (int m = 0;; ++m) {
                best_sq = std::min(best_sq, w.squaredNorm());
                if (m == rem) break;
                w += step;
            }
            return;
        }
        for (int m = 0; m <= rem; ++m) {
            partial[depth + 1] = partial[depth] + m * cols.col(depth);
            walk(depth + 1, rem - m);
        }
    };
    walk(0, grid);
    return std::sqrt(best_sq) / grid;
}

DensityProbeResult density_probe(const LinearOperator& T, const Vector& x,
                                 const std::vector<Vector>& targets, int N, double tol,
                                 int max_iter) {
    const OrbitTable orbit = compute_orbit(T, x, N);

    DensityProbeResult out;
    out.approximations.resize(targets.size());

    // Targets are independent solves over the shared immutable orbit.
    std::vector<std::future<HullApproximation>> jobs;
    jobs.reserve(targets.size());
    for (const auto& target : targets)
        jobs.push_back(std::async(std::launch::async, [&orbit, &target, tol, max_iter] {
            return best_convex_approximation(orbit, target, tol, max_iter);
        }));
    for (std::size_t i = 0; i < jobs.size(); ++i) out.approximations[i] = jobs[i].get();

    int hits = 0;
    for (const auto& approx : out.approximations) {
        out.residuals.push_back(approx.distance);
        if (approx.distance <= tol) ++hits;
    }
    out.score = targets.empty() ? 0.0 : static_cast<double>(hits) / targets.size();
    return out;
}

FamilyProbeResult family_probe(const LinearOperator& T, const Vector& x, const Vector& y,
                               const FamilySpec& family, int max_k) {
    if (x.size() != T.dim() || y.size() != T.dim())
        throw DimensionMismatch("family_probe: dims disagree");
    if (max_k < 1) throw InvalidArgument("family_probe: max_k must be >= 1");

    FamilyProbeResult out;
    if (family.kind == FamilySpec::Kind::MonomialAverage) {
        if (family.n_terms < 1)
            throw InvalidArgument("family_probe: monomial average needs n_terms >= 1");
        const OrbitTable orbit = compute_orbit(T, x, max_k);
        const int terms = family.n_terms;
        Vector residual = static_cast<double>(terms) * y;
        for (int j = 0; j < terms; ++j) {
            int pick = 0;
            double best = std::numeric_limits<double>::infinity();
            for (int n = 0; n <= orbit.horizon(); ++n) {
                const double dist = (orbit.rows[n] - residual).norm();
                if (dist < best) {
                    best = dist;
                    pick = n;
                }
            }
            residual -= orbit.rows[pick];
            out.exponents.push_back(pick);
        }
        out.distance = residual.norm() / terms;
        out.best_k = static_cast<int>(*std::max_element(out.exponents.begin(), out.exponents.end()));
        return out;
    }

    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= max_k; ++k) {
        const ConvexPolynomial p =
            family.kind == FamilySpec::Kind::Cesaro ? cesaro_mean(k) : pkc(k, family.c);
        const double dist = (p.apply(T, x) - y).norm();
        if (dist < best) {
            best = dist;
            out.best_k = k;
        }
    }
    out.distance = best;
    return out;
}

}  // namespace cvxcyclic
