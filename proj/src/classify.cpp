#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "cvxcyclic/criteria.hpp"
#include "cvxcyclic/errors.hpp"

namespace cvxcyclic {

namespace {

bool pairwise_distinct(const std::vector<Complex>& eigs) {
    for (std::size_t i = 0; i < eigs.size(); ++i)
        for (std::size_t j = i + 1; j < eigs.size(); ++j)
            if (std::abs(eigs[i] - eigs[j]) <=
                kDistinctnessTol * std::max({1.0, std::abs(eigs[i]), std::abs(eigs[j])}))
                return false;
    return true;
}

/// Eigen-decomposes the matrix and reports whether the eigenvectors span
/// (numerically nonsingular eigenvector matrix).
bool complete_eigensystem(const Matrix& m, std::vector<Complex>& eigs_out) {
    Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/true);
    if (solver.info() != Eigen::Success)
        throw EigensolverFailure("classify: eigensolver did not converge");
    eigs_out.assign(solver.eigenvalues().data(),
                    solver.eigenvalues().data() + solver.eigenvalues().size());
    Eigen::JacobiSVD<Matrix> svd(solver.eigenvectors());
    const auto& sv = svd.singularValues();
    return sv[sv.size() - 1] > static_cast<double>(m.rows()) * sv[0] * 1e-12;
}

}  // namespace

OperatorClassification classify_operator(const LinearOperator& T, const ClassifyOptions& options,
                                         const std::optional<Vector>& seed_vector) {
    OperatorClassification out;
    out.gates = necessary_conditions_report(T);

    auto& reasons = out.report.reasons;
    if (!out.gates.norm_gt_one)
        reasons.push_back({"Prop4.2.1", "operator norm " + std::to_string(out.gates.norm) +
                                            " does not exceed 1"});
    if (!out.gates.dense_range)
        reasons.push_back({"Prop2.3", "range has numerical codimension " +
                                          std::to_string(out.gates.range_defect)});
    // The spectral gate presumes complex scalars; on a real space nonreal
    // functionals are unavailable and the region criterion does not apply.
    if (options.field == ScalarField::Complex && !out.gates.adjoint_spectrum_ok)
        reasons.push_back({"Prop4.2.2",
                           "adjoint point spectrum leaves { |z| > 1, z not real }"});

    for (int m = 1; m <= options.max_m; ++m) {
        out.isometry_checks.push_back(
            is_m_isometry(T, m, options.p_exp, options.samples, options.tol, options.seed));
        if (out.isometry_checks.back().is_m_isometry)
            reasons.push_back({"Thm4.3", "operator is a (" + std::to_string(m) + "," +
                                             std::to_string(options.p_exp) + ")-isometry"});
    }

    const bool is_diagonal = std::holds_alternative<DiagonalSpec>(T.spec().node);
    bool complete = true;
    if (is_diagonal) {
        out.eigenvalues = std::get<DiagonalSpec>(T.spec().node).entries;
    } else {
        complete = complete_eigensystem(T.matrix(), out.eigenvalues);
    }

    std::optional<ClassifierReport> eig_report;
    if (is_diagonal) {
        eig_report = diagonal_classifier(out.eigenvalues, options.field);
        for (const auto& r : eig_report->reasons) reasons.push_back(r);
        out.report.caveat_flags = eig_report->caveat_flags;
    } else {
        // Conjugate pairs are reportable regardless of the verdict route.
        ClassifierReport pair_scan = diagonal_classifier(out.eigenvalues, ScalarField::Complex);
        out.report.caveat_flags = pair_scan.caveat_flags;
    }

    if (!reasons.empty()) {
        out.report.verdict = Verdict::NotConvexCyclic;
    } else if (is_diagonal) {
        out.report.verdict = eig_report->verdict;
    } else {
        // Dense route: a complete set of eigenvectors with distinct
        // eigenvalues in { |z| > 1, z not real } certifies convex-cyclicity.
        // The adjoint gate already placed every eigenvalue in that region.
        if (options.field == ScalarField::Real)
            throw UndecidedOperator(
                "classify: real-field positive criteria are implemented for diagonal "
                "spectra only");
        if (!complete)
            throw UndecidedOperator(
                "classify: eigenvectors do not span; no implemented criterion decides this "
                "operator");
        if (!pairwise_distinct(out.eigenvalues))
            throw UndecidedOperator(
                "classify: repeated eigenvalues on a non-diagonal operator; no implemented "
                "criterion decides this operator");
        reasons.push_back({"Thm6.5", "complete eigenvector set with distinct eigenvalues of "
                                     "modulus > 1 and nonzero imaginary part"});
        out.report.verdict = out.report.caveat_flags.empty()
                                 ? Verdict::ConvexCyclic
                                 : Verdict::PaperCriterionPassesWithCaveat;
    }

    if (!out.report.caveat_flags.empty()) {
        const Vector seed = seed_vector ? *seed_vector : Vector(Vector::Ones(T.dim()));
        try {
            out.witness = conjugate_confinement_witness(out.eigenvalues, seed);
        } catch (const ZeroCoordinateAtPair&) {
            // Seed degenerate at every pair; the caveat stands without a witness.
        }
    }
    return out;
}

}  // namespace cvxcyclic
