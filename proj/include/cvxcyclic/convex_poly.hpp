#pragma once

#include <cstddef>
#include <vector>

#include "cvxcyclic/linear_operator.hpp"
#include "cvxcyclic/types.hpp"

namespace cvxcyclic {

/// Polynomial with nonnegative real coefficients summing to one.
/// coeffs()[k] multiplies z^k. Canonical form trims trailing zeros.
class ConvexPolynomial {
public:
    /// Convolution results beyond this degree are rejected rather than
    /// silently truncated.
    static constexpr std::size_t kMaxDegree = 10'000;

    /// Constant polynomial 1 (so p(T) = I).
    ConvexPolynomial() : coeffs_{1.0} {}

    const std::vector<double>& coeffs() const { return coeffs_; }
    std::size_t degree() const { return coeffs_.size() - 1; }

    /// Horner evaluation at a complex point.
    Complex eval(Complex z) const;

    /// p(T) x via one orbit sweep; never forms T^k.
    Vector apply(const LinearOperator& T, const Vector& x) const;

private:
    explicit ConvexPolynomial(std::vector<double> coeffs)
        : coeffs_(std::move(coeffs)) {}
    std::vector<double> coeffs_;

    friend ConvexPolynomial make_convex(std::vector<double> raw);
    friend ConvexPolynomial cesaro_mean(int n);
    friend ConvexPolynomial pkc(int k, double c);
    friend ConvexPolynomial poly_power(const ConvexPolynomial& p, int m);
    friend ConvexPolynomial substitute_monomial(const ConvexPolynomial& p, int n);
};

/// Validates nonnegativity and a coefficient sum within 1e-9 of one, then
/// renormalizes to machine sum 1 and trims trailing zeros.
ConvexPolynomial make_convex(std::vector<double> raw);

/// (1 + z + ... + z^{n-1}) / n.
ConvexPolynomial cesaro_mean(int n);

/// Geometric-weight family: c = 1 gives the arithmetic mean of the first k
/// monomials; c > 1 gives coefficients (c-1) c^{k-1-j} / (c^k - 1).
ConvexPolynomial pkc(int k, double c);

/// p^m by coefficient convolution.
ConvexPolynomial poly_power(const ConvexPolynomial& p, int m);

/// q(z) = p(z^n): coefficient k relocates to position k*n.
ConvexPolynomial substitute_monomial(const ConvexPolynomial& p, int n);

/// || p_k^c(T)(cI - T)x - (c-1)c^k/(c^k-1) (x - (T/c)^k x) ||; zero in exact
/// arithmetic for every T, x, c > 1, k >= 1.
double pkc_identity_residual(const LinearOperator& T, const Vector& x, double c, int k);

/// Accepts "cesaro:n", "pkc:k:c", a JSON coefficient array [a0, a1, ...], or
/// a JSON object {"coeffs": [...]}.
ConvexPolynomial parse_convex_polynomial(const std::string& text);

inline Complex eval_scalar(const ConvexPolynomial& p, Complex z) { return p.eval(z); }

inline Vector apply_poly(const ConvexPolynomial& p, const LinearOperator& T, const Vector& x) {
    return p.apply(T, x);
}

}  // namespace cvxcyclic
