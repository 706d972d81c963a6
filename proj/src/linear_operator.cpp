#include "cvxcyclic/linear_operator.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "cvxcyclic/errors.hpp"

namespace cvxcyclic {

LinearOperator::LinearOperator(Matrix matrix, OperatorSpec spec)
    : matrix_(std::move(matrix)), spec_(std::move(spec)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1)
        throw InvalidSpec("operator matrix must be square and nonempty");
    if (!all_finite(matrix_)) throw InvalidSpec("operator matrix has nonfinite entries");
}

Vector LinearOperator::apply(const Vector& v) const {
    if (v.size() != matrix_.rows())
        throw DimensionMismatch("apply: operator dim " + std::to_string(matrix_.rows()) +
                                " vs vector dim " + std::to_string(v.size()));
    return matrix_ * v;
}

namespace {

Matrix materialize(const OperatorSpec& s) {
    struct Visitor {
        Matrix operator()(const DiagonalSpec& d) const {
            const int n = static_cast<int>(d.entries.size());
            Matrix m = Matrix::Zero(n, n);
            for (int i = 0; i < n; ++i) m(i, i) = d.entries[i];
            return m;
        }
        Matrix operator()(const DenseSpec& d) const {
            const int n = static_cast<int>(d.rows.size());
            Matrix m(n, n);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) m(i, k) = d.rows[i][k];
            return m;
        }
        Matrix operator()(const BackwardShiftSpec& d) const {
            Matrix m = Matrix::Zero(d.dim, d.dim);
            for (int k = 0; k + 1 < d.dim; ++k) m(k, k + 1) = d.weights[k];
            return m;
        }
        Matrix operator()(const ForwardShiftSpec& d) const {
            Matrix m = Matrix::Zero(d.dim, d.dim);
            for (int k = 0; k + 1 < d.dim; ++k) m(k + 1, k) = d.weights[k];
            return m;
        }
        Matrix operator()(const IdentitySpec& d) const {
            return Matrix::Identity(d.dim, d.dim);
        }
        Matrix operator()(const SumSpec& d) const {
            Matrix m = d.coeffs[0] * materialize(d.terms[0]);
            for (std::size_t i = 1; i < d.terms.size(); ++i)
                m += d.coeffs[i] * materialize(d.terms[i]);
            return m;
        }
        Matrix operator()(const DirectSumSpec& d) const {
            int total = 0;
            std::vector<Matrix> blocks;
            blocks.reserve(d.parts.size());
            for (const auto& p : d.parts) {
                blocks.push_back(materialize(p));
                total += static_cast<int>(blocks.back().rows());
            }
            Matrix m = Matrix::Zero(total, total);
            int off = 0;
            for (const auto& b : blocks) {
                const int n = static_cast<int>(b.rows());
                m.block(off, off, n, n) = b;
                off += n;
            }
            return m;
        }
        Matrix operator()(const ScaleSpec& d) const {
            return d.factor * materialize(d.inner.front());
        }
        Matrix operator()(const NegateSpec& d) const {
            return -materialize(d.inner.front());
        }
    };
    return std::visit(Visitor{}, s.node);
}

}  // namespace

LinearOperator build_operator(const OperatorSpec& spec) {
    spec.dim();  // validate the whole tree before materializing
    return LinearOperator(materialize(spec), spec);
}

double operator_norm(const LinearOperator& T) {
    // Hermitian eigenproblem on T*T; exact enough at desk scale and free of
    // power-iteration convergence caveats.
    const Matrix& m = T.matrix();
    Matrix gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw EigensolverFailure("operator_norm: Hermitian eigensolver failed");
    const double top = solver.eigenvalues().maxCoeff();
    return std::sqrt(std::max(0.0, top));
}

std::vector<Complex> adjoint_point_spectrum(const LinearOperator& T) {
    Matrix adj = T.matrix().adjoint();
    Eigen::ComplexEigenSolver<Matrix> solver(adj, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw EigensolverFailure("adjoint_point_spectrum: eigensolver did not converge");
    std::vector<Complex> eigs(T.dim());
    for (int i = 0; i < T.dim(); ++i) eigs[i] = solver.eigenvalues()[i];
    return eigs;
}

int range_density_defect(const LinearOperator& T, double rank_tol) {
    Eigen::JacobiSVD<Matrix> svd(T.matrix());
    const auto& sv = svd.singularValues();
    const double sigma_max = sv.size() > 0 ? sv[0] : 0.0;
    const double threshold = T.dim() * sigma_max * rank_tol;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > threshold) ++rank;
    return T.dim() - rank;
}

}  // namespace cvxcyclic
