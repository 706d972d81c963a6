#pragma once

#include <vector>

#include "cvxcyclic/operator_spec.hpp"
#include "cvxcyclic/types.hpp"

namespace cvxcyclic {

/// A fully materialized finite-dimensional operator. Dense on purpose:
/// every operator here lives at desk scale, so exactness beats sparsity.
class LinearOperator {
public:
    LinearOperator(Matrix matrix, OperatorSpec spec);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }
    const OperatorSpec& spec() const { return spec_; }

    Vector apply(const Vector& v) const;

private:
    Matrix matrix_;
    OperatorSpec spec_;
};

LinearOperator build_operator(const OperatorSpec& spec);

inline Vector apply(const LinearOperator& T, const Vector& v) {
    return T.apply(v);
}

/// Largest singular value (spectral norm).
double operator_norm(const LinearOperator& T);

/// Point spectrum of the adjoint T*, multiplicities preserved.
std::vector<Complex> adjoint_point_spectrum(const LinearOperator& T);

/// dim - numerical rank; singular values above dim * sigma_max * rank_tol
/// count toward the rank. Zero means full (= dense) range in finite dim.
int range_density_defect(const LinearOperator& T, double rank_tol = 1e-12);

}  // namespace cvxcyclic
