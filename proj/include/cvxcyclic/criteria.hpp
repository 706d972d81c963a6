#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cvxcyclic/linear_operator.hpp"
#include "cvxcyclic/types.hpp"

namespace cvxcyclic {

// Spectral tolerances for classifier decisions (doubles need explicit cutoffs).
inline constexpr double kRealnessTol = 1e-12;     // |Im| below this counts as real
inline constexpr double kDistinctnessTol = 1e-9;  // relative eigenvalue separation
inline constexpr double kNormGateMargin = 1e-9;   // ||T|| > 1 evaluated with margin

enum class TraceClass { Bounded, Growing, Inconclusive };

/// Re f(T^n x) for n = 0..N, with its prefix maximum. The classification is
/// a documented finite-horizon heuristic: Growing once the prefix maximum
/// exceeds 1e6 * max(1, |values[0]|); Bounded when the second half produced
/// no new maximum; Inconclusive otherwise.
struct ProbeTrace {
    std::vector<double> values;
    std::vector<double> running_max;
    TraceClass classification = TraceClass::Inconclusive;
};

/// Functional realized as the inner-product representative f:
/// values[n] = Re <T^n x, f> with <u, f> = sum_j u_j conj(f_j).
ProbeTrace hahn_banach_probe(const LinearOperator& T, const Vector& x, const Vector& f, int N);

enum class Verdict { ConvexCyclic, NotConvexCyclic, PaperCriterionPassesWithCaveat };

std::string to_string(Verdict v);
std::string to_string(TraceClass c);

struct CitedReason {
    std::string criterion;  // wire token, e.g. "Thm6.4a"
    std::string detail;
};

struct ClassifierReport {
    Verdict verdict = Verdict::NotConvexCyclic;
    std::vector<CitedReason> reasons;
    std::vector<std::string> caveat_flags;  // nonempty iff a conjugate pair was detected
};

enum class ScalarField { Complex, Real };

/// Eigenvalue characterization for diagonalizable normal operators.
/// Complex field: convex-cyclic iff eigenvalues are distinct, of modulus > 1
/// and nonreal; a conjugate pair downgrades the positive verdict to
/// PaperCriterionPassesWithCaveat (see conjugate_confinement_witness).
/// Real field: convex-cyclic iff eigenvalues are distinct and all < -1.
ClassifierReport diagonal_classifier(const std::vector<Complex>& eigs, ScalarField field);

/// Membership in { z : |z| > 1, z not real } -- the eigenvalue region common
/// to every spectral criterion here.
bool set_S_membership(Complex lambda);

struct NecessaryConditionsReport {
    bool norm_gt_one = false;
    bool dense_range = false;
    bool adjoint_spectrum_ok = false;
    // details
    double norm = 0.0;
    int range_defect = 0;
    std::vector<Complex> adjoint_spectrum;

    bool all_pass() const { return norm_gt_one && dense_range && adjoint_spectrum_ok; }
};

/// Three necessary gates. Any false is a rigorous negative; all true is NOT
/// a positive certificate.
NecessaryConditionsReport necessary_conditions_report(const LinearOperator& T);

/// sum_{k=0}^m (-1)^{m-k} C(m,k) ||T^k x||^p.
double m_isometry_defect(const LinearOperator& T, const Vector& x, int m, double p_exp);

struct MIsometryReport {
    int m = 0;
    double p_exponent = 0.0;
    std::vector<double> defects;  // basis vectors first, then random samples
    bool is_m_isometry = false;
    std::vector<double> seminorm_estimates;  // filled on request only
};

/// Defect test over all basis vectors plus `samples` seeded random unit
/// vectors. For truncated shifts the sample support is restricted to the
/// first dim - m coordinates, where the finite section still obeys the
/// infinite-dimensional identity. Flagged iff every |defect| stays within
/// tol * max(1, ||T||)^{m p}.
MIsometryReport is_m_isometry(const LinearOperator& T, int m, double p_exp, int samples,
                              double tol, std::uint64_t seed = kDefaultSeed);

struct SeminormEstimate {
    double estimate = 0.0;   // ||T^N x|| / N^{(m-1)/p}
    bool diverged = false;   // growth ratio >= 1.5 sustained over the last 10 steps
    double spread = 0.0;     // relative spread of the last 10 terms
};

SeminormEstimate misometry_seminorm_estimate(const LinearOperator& T, const Vector& x, int m,
                                             double p_exp, int N);

/// For a detected conjugate eigenvalue pair, the functional whose probe trace
/// vanishes identically on the orbit of x under diag(eigs). Returns the
/// inner-product representative (probe it directly); absent when no pair
/// exists. Verified against the first 100 orbit steps before returning.
std::optional<Vector> conjugate_confinement_witness(const std::vector<Complex>& eigs,
                                                    const Vector& x);

struct ClassifyOptions {
    ScalarField field = ScalarField::Complex;
    int max_m = 3;          // m-isometry sweep bound
    double p_exp = 2.0;
    int samples = 64;
    double tol = 1e-9;
    std::uint64_t seed = kDefaultSeed;
};

struct OperatorClassification {
    ClassifierReport report;
    NecessaryConditionsReport gates;
    std::vector<MIsometryReport> isometry_checks;  // m = 1..max_m
    std::vector<Complex> eigenvalues;
    std::optional<Vector> witness;  // confinement functional, when constructible
};

/// Full decision pipeline: necessary gates, the m-isometry gate, then the
/// eigenvalue criteria (exact diagonal entries when the spec is diagonal,
/// otherwise a complete-eigenvector check on the dense matrix). Operators
/// that pass every gate but fit no positive criterion (repeated eigenvalues
/// or a defective eigenspace) raise UndecidedOperator instead of guessing.
OperatorClassification classify_operator(const LinearOperator& T,
                                         const ClassifyOptions& options = {},
                                         const std::optional<Vector>& seed_vector = std::nullopt);

}  // namespace cvxcyclic
