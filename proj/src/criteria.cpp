#include "cvxcyclic/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cvxcyclic/errors.hpp"

namespace cvxcyclic {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::ConvexCyclic: return "ConvexCyclic";
        case Verdict::NotConvexCyclic: return "NotConvexCyclic";
        case Verdict::PaperCriterionPassesWithCaveat: return "PaperCriterionPassesWithCaveat";
    }
    return "?";
}

std::string to_string(TraceClass c) {
    switch (c) {
        case TraceClass::Bounded: return "Bounded";
        case TraceClass::Growing: return "Growing";
        case TraceClass::Inconclusive: return "Inconclusive";
    }
    return "?";
}

ProbeTrace hahn_banach_probe(const LinearOperator& T, const Vector& x, const Vector& f, int N) {
    if (x.size() != T.dim() || f.size() != T.dim())
        throw DimensionMismatch("hahn_banach_probe: dims disagree");
    if (f.norm() == 0.0) throw ZeroFunctional("hahn_banach_probe: functional is zero");
    if (N < 0) throw InvalidArgument("hahn_banach_probe: N must be >= 0");

    ProbeTrace trace;
    trace.values.reserve(static_cast<std::size_t>(N) + 1);
    trace.running_max.reserve(static_cast<std::size_t>(N) + 1);

    Vector u = x;
    for (int n = 0; n <= N; ++n) {
        if (n > 0) u = T.apply(u);
        const double value = std::real(f.dot(u));  // f.dot(u) = sum conj(f_j) u_j
        if (!std::isfinite(value))
            throw NumericalOverflow("hahn_banach_probe: trace escaped double range", n - 1);
        trace.values.push_back(value);
        trace.running_max.push_back(n == 0 ? value : std::max(trace.running_max.back(), value));
    }

    const double head = std::abs(trace.values.front());
    if (trace.running_max.back() > 1e6 * std::max(1.0, head))
        trace.classification = TraceClass::Growing;
    else if (trace.running_max.back() == trace.running_max[static_cast<std::size_t>(N) / 2])
        trace.classification = TraceClass::Bounded;
    else
        trace.classification = TraceClass::Inconclusive;
    return trace;
}

bool set_S_membership(Complex lambda) {
    return std::abs(lambda) > 1.0 && std::abs(lambda.imag()) > kRealnessTol;
}

namespace {

bool close_eigs(Complex a, Complex b) {
    return std::abs(a - b) <= kDistinctnessTol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string fmt_eig(Complex z) {
    return "(" + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") +
           std::to_string(z.imag()) + "i)";
}

std::vector<std::pair<int, int>> conjugate_pairs(const std::vector<Complex>& eigs) {
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < eigs.size(); ++i)
        for (std::size_t j = i + 1; j < eigs.size(); ++j)
            if (close_eigs(eigs[i], std::conj(eigs[j])))
                pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return pairs;
}

}  // namespace

ClassifierReport diagonal_classifier(const std::vector<Complex>& eigs, ScalarField field) {
    if (eigs.empty()) throw EmptySpectrum("diagonal_classifier: empty eigenvalue list");

    ClassifierReport report;
    for (const auto& [i, j] : conjugate_pairs(eigs))
        report.caveat_flags.push_back(
            "conjugate eigenvalue pair at indices (" + std::to_string(i) + "," +
            std::to_string(j) +
            "): real convex coefficients confine the hull to a proper closed "
            "real-linear subspace");

    const char* token = field == ScalarField::Complex ? "Thm6.4a" : "Thm6.4b";
    for (std::size_t i = 0; i < eigs.size(); ++i)
        for (std::size_t j = i + 1; j < eigs.size(); ++j)
            if (close_eigs(eigs[i], eigs[j]))
                report.reasons.push_back({token, "eigenvalues " + fmt_eig(eigs[i]) + " and " +
                                                     fmt_eig(eigs[j]) + " coincide"});

    if (field == ScalarField::Complex) {
        for (Complex z : eigs) {
            if (std::abs(z) <= 1.0)
                report.reasons.push_back(
                    {token, "eigenvalue " + fmt_eig(z) + " has modulus <= 1"});
            if (std::abs(z.imag()) <= kRealnessTol)
                report.reasons.push_back({token, "eigenvalue " + fmt_eig(z) + " is real"});
        }
    } else {
        for (Complex z : eigs) {
            if (std::abs(z.imag()) > kRealnessTol) {
                report.reasons.push_back(
                    {token, "eigenvalue " + fmt_eig(z) + " is not real on a real space"});
                continue;
            }
            if (!(z.real() < -1.0))
                report.reasons.push_back({token, "eigenvalue " + fmt_eig(z) + " is not < -1"});
        }
    }

    if (!report.reasons.empty()) {
        report.verdict = Verdict::NotConvexCyclic;
        return report;
    }
    report.verdict = report.caveat_flags.empty() ? Verdict::ConvexCyclic
                                                 : Verdict::PaperCriterionPassesWithCaveat;
    return report;
}

NecessaryConditionsReport necessary_conditions_report(const LinearOperator& T) {
    NecessaryConditionsReport report;
    report.norm = operator_norm(T);
    report.norm_gt_one = report.norm > 1.0 + kNormGateMargin;
    report.range_defect = range_density_defect(T);
    report.dense_range = report.range_defect == 0;
    report.adjoint_spectrum = adjoint_point_spectrum(T);
    report.adjoint_spectrum_ok =
        std::all_of(report.adjoint_spectrum.begin(), report.adjoint_spectrum.end(),
                    [](Complex z) { return set_S_membership(z); });
    return report;
}

double m_isometry_defect(const LinearOperator& T, const Vector& x, int m, double p_exp) {
    if (x.size() != T.dim()) throw DimensionMismatch("m_isometry_defect: dims disagree");
    if (m < 1) throw InvalidArgument("m_isometry_defect: m must be >= 1");
    if (!(p_exp > 0.0)) throw InvalidArgument("m_isometry_defect: p must be positive");

    // Alternating binomial sum over orbit norms.
    double sum = 0.0;
    double binom = 1.0;  // C(m, k)
    Vector u = x;
    for (int k = 0; k <= m; ++k) {
        if (k > 0) {
            u = T.apply(u);
            binom = binom * (m - k + 1) / k;
        }
        const double sign = ((m - k) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * binom * std::pow(u.norm(), p_exp);
    }
    return sum;
}

namespace {

/// Shift truncations break the defect identity at the boundary; detect them
/// (through scale/negate wrappers) so sampling can avoid the edge.
bool is_truncated_shift(const OperatorSpec& s) {
    if (std::holds_alternative<BackwardShiftSpec>(s.node) ||
        std::holds_alternative<ForwardShiftSpec>(s.node))
        return true;
    if (const auto* sc = std::get_if<ScaleSpec>(&s.node)) return is_truncated_shift(sc->inner.front());
    if (const auto* ng = std::get_if<NegateSpec>(&s.node)) return is_truncated_shift(ng->inner.front());
    return false;
}

}  // namespace

MIsometryReport is_m_isometry(const LinearOperator& T, int m, double p_exp, int samples,
                              double tol, std::uint64_t seed) {
    if (samples < 1) throw InvalidArgument("is_m_isometry: samples must be >= 1");

    const int dim = T.dim();
    const int support = is_truncated_shift(T.spec()) ? std::max(1, dim - m) : dim;

    MIsometryReport report;
    report.m = m;
    report.p_exponent = p_exp;

    for (int k = 0; k < support; ++k) {
        Vector e = Vector::Zero(dim);
        e[k] = 1.0;
        report.defects.push_back(m_isometry_defect(T, e, m, p_exp));
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int s = 0; s < samples; ++s) {
        Vector v = Vector::Zero(dim);
        for (int k = 0; k < support; ++k) v[k] = Complex(gauss(rng), gauss(rng));
        v /= v.norm();
        report.defects.push_back(m_isometry_defect(T, v, m, p_exp));
    }

    const double scale = std::pow(std::max(1.0, operator_norm(T)), m * p_exp);
    report.is_m_isometry =
        std::all_of(report.defects.begin(), report.defects.end(),
                    [&](double d) { return std::abs(d) <= tol * scale; });
    return report;
}

SeminormEstimate misometry_seminorm_estimate(const LinearOperator& T, const Vector& x, int m,
                                             double p_exp, int N) {
    if (x.size() != T.dim())
        throw DimensionMismatch("misometry_seminorm_estimate: dims disagree");
    if (N < 10) throw InvalidArgument("misometry_seminorm_estimate: N must be >= 10");
    if (m < 1 || !(p_exp > 0.0))
        throw InvalidArgument("misometry_seminorm_estimate: need m >= 1, p > 0");

    const double exponent = static_cast<double>(m - 1) / p_exp;
    std::vector<double> scaled;  // ||T^n x|| / n^{(m-1)/p}, n = 1..N
    Vector u = x;
    for (int n = 1; n <= N; ++n) {
        u = T.apply(u);
        const double norm = u.norm();
        if (!std::isfinite(norm) || norm > kOverflowGuard)
            throw NumericalOverflow("misometry_seminorm_estimate: orbit overflow", n - 1);
        scaled.push_back(norm / std::pow(static_cast<double>(n), exponent));
    }

    SeminormEstimate out;
    out.estimate = scaled.back();

    const std::size_t window = 10;
    const std::size_t first = scaled.size() - window;  // N >= 10 so this is >= 0
    double lo = scaled.back(), hi = scaled.back();
    for (std::size_t i = first; i < scaled.size(); ++i) {
        lo = std::min(lo, scaled[i]);
        hi = std::max(hi, scaled[i]);
    }
    out.spread = (hi - lo) / std::max(std::abs(out.estimate), 1e-300);

    // Sustained ratio growth over the trailing window marks divergence.
    bool sustained = true;
    for (std::size_t i = std::max<std::size_t>(first, 1); i < scaled.size(); ++i) {
        const double prev = scaled[i - 1];
        const double ratio = prev == 0.0 ? std::numeric_limits<double>::infinity()
                                         : scaled[i] / prev;
        if (!(ratio >= 1.5)) {
            sustained = false;
            break;
        }
    }
    out.diverged = sustained;
    return out;
}

std::optional<Vector> conjugate_confinement_witness(const std::vector<Complex>& eigs,
                                                    const Vector& x) {
    if (static_cast<Eigen::Index>(eigs.size()) != x.size())
        throw DimensionMismatch("conjugate_confinement_witness: dims disagree");

    const auto pairs = conjugate_pairs(eigs);
    if (pairs.empty()) return std::nullopt;

    constexpr double kZeroCoord = 1e-14;
    const std::pair<int, int>* usable = nullptr;
    for (const auto& pr : pairs)
        if (std::abs(x[pr.first]) > kZeroCoord && std::abs(x[pr.second]) > kZeroCoord) {
            usable = &pr;
            break;
        }
    if (!usable)
        throw ZeroCoordinateAtPair(
            "conjugate_confinement_witness: seed vanishes at every detected pair");

    // Functional v -> i (v_j / x_j + v_k / x_k); stored as the inner-product
    // representative, so each entry is the conjugate of its coefficient.
    const auto [j, k] = *usable;
    Vector f = Vector::Zero(x.size());
    f[j] = std::conj(Complex(0.0, 1.0) / x[j]);
    f[k] = std::conj(Complex(0.0, 1.0) / x[k]);

    // The trace must vanish along the diagonal orbit; check the first 100 steps.
    Vector u = x;
    for (int n = 0; n <= 100; ++n) {
        if (n > 0)
            for (Eigen::Index i = 0; i < u.size(); ++i) u[i] *= eigs[i];
        const double value = std::real(f.dot(u));
        if (std::abs(value) > 1e-12 * std::max(1.0, u.norm() * f.norm()))
            throw Error("conjugate_confinement_witness: verification failed at n = " +
                            std::to_string(n),
                        ErrorKind::Numerical);
    }
    return f;
}

}  // namespace cvxcyclic
