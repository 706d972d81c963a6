#include "cvxcyclic/convex_poly.hpp"

#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "cvxcyclic/errors.hpp"

namespace cvxcyclic {

namespace {

void trim_trailing_zeros(std::vector<double>& c) {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
}

std::vector<double> renormalized(std::vector<double> c) {
    const double s = std::accumulate(c.begin(), c.end(), 0.0);
    for (double& a : c) a /= s;
    return c;
}

}  // namespace

Complex ConvexPolynomial::eval(Complex z) const {
    Complex acc(0.0, 0.0);
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
    return acc;
}

Vector ConvexPolynomial::apply(const LinearOperator& T, const Vector& x) const {
    if (x.size() != T.dim())
        throw DimensionMismatch("apply_poly: operator dim " + std::to_string(T.dim()) +
                                " vs vector dim " + std::to_string(x.size()));
    Vector power = x;  // T^k x, updated in place
    Vector acc = coeffs_[0] * x;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        power = T.apply(power);
        if (coeffs_[k] != 0.0) acc += coeffs_[k] * power;
    }
    return acc;
}

ConvexPolynomial make_convex(std::vector<double> raw) {
    if (raw.empty()) throw InvalidArgument("make_convex: empty coefficient list");
    if (raw.size() > ConvexPolynomial::kMaxDegree + 1)
        throw InvalidArgument("make_convex: degree exceeds cap " +
                              std::to_string(ConvexPolynomial::kMaxDegree));
    for (double a : raw) {
        if (!std::isfinite(a)) throw InvalidArgument("make_convex: nonfinite coefficient");
        if (a < 0.0)
            throw NegativeCoefficient("make_convex: coefficient " + std::to_string(a) +
                                      " is negative");
    }
    const double s = std::accumulate(raw.begin(), raw.end(), 0.0);
    if (std::abs(s - 1.0) > 1e-9)
        throw SumNotOne("make_convex: coefficients sum to " + std::to_string(s));
    auto c = renormalized(std::move(raw));
    trim_trailing_zeros(c);
    return ConvexPolynomial(std::move(c));
}

ConvexPolynomial cesaro_mean(int n) {
    if (n < 1) throw InvalidArgument("cesaro_mean: n must be >= 1");
    if (static_cast<std::size_t>(n) > ConvexPolynomial::kMaxDegree + 1)
        throw InvalidArgument("cesaro_mean: degree exceeds cap");
    return ConvexPolynomial(std::vector<double>(n, 1.0 / n));
}

ConvexPolynomial pkc(int k, double c) {
    if (k < 1) throw InvalidArgument("pkc: k must be >= 1");
    if (!(c >= 1.0)) throw InvalidArgument("pkc: c must be >= 1");
    if (static_cast<std::size_t>(k) > ConvexPolynomial::kMaxDegree + 1)
        throw InvalidArgument("pkc: degree exceeds cap");
    if (c == 1.0) return cesaro_mean(k);
    // a_j = (c-1) c^{k-1-j} / (c^k - 1), written with negative powers so large
    // k cannot overflow.
    const double tail = 1.0 - std::pow(c, -static_cast<double>(k));
    std::vector<double> coeffs(k);
    for (int j = 0; j < k; ++j)
        coeffs[j] = (c - 1.0) * std::pow(c, -static_cast<double>(j + 1)) / tail;
    return ConvexPolynomial(renormalized(std::move(coeffs)));
}

ConvexPolynomial poly_power(const ConvexPolynomial& p, int m) {
    if (m < 1) throw InvalidArgument("poly_power: m must be >= 1");
    const auto& a = p.coeffs();
    if ((a.size() - 1) * static_cast<std::size_t>(m) > ConvexPolynomial::kMaxDegree)
        throw InvalidArgument("poly_power: degree exceeds cap");
    std::vector<double> acc{1.0};
    for (int i = 0; i < m; ++i) {
        std::vector<double> next(acc.size() + a.size() - 1, 0.0);
        for (std::size_t r = 0; r < acc.size(); ++r)
            for (std::size_t s = 0; s < a.size(); ++s) next[r + s] += acc[r] * a[s];
        acc = std::move(next);
    }
    acc = renormalized(std::move(acc));
    trim_trailing_zeros(acc);
    return ConvexPolynomial(std::move(acc));
}

ConvexPolynomial substitute_monomial(const ConvexPolynomial& p, int n) {
    if (n < 1) throw InvalidArgument("substitute_monomial: n must be >= 1");
    const auto& a = p.coeffs();
    if ((a.size() - 1) * static_cast<std::size_t>(n) > ConvexPolynomial::kMaxDegree)
        throw InvalidArgument("substitute_monomial: degree exceeds cap");
    std::vector<double> out((a.size() - 1) * n + 1, 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) out[k * n] = a[k];
    return ConvexPolynomial(std::move(out));
}

ConvexPolynomial parse_convex_polynomial(const std::string& text) {
    if (text.rfind("cesaro:", 0) == 0) {
        try {
            return cesaro_mean(std::stoi(text.substr(7)));
        } catch (const Error&) {
            throw;
        } catch (...) {
            throw InvalidArgument("parse polynomial: bad cesaro form \"" + text + "\"");
        }
    }
    if (text.rfind("pkc:", 0) == 0) {
        const auto rest = text.substr(4);
        const auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw InvalidArgument("parse polynomial: expected pkc:k:c, got \"" + text + "\"");
        try {
            return pkc(std::stoi(rest.substr(0, colon)), std::stod(rest.substr(colon + 1)));
        } catch (const Error&) {
            throw;
        } catch (...) {
            throw InvalidArgument("parse polynomial: bad pkc form \"" + text + "\"");
        }
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (...) {
        throw InvalidArgument("parse polynomial: \"" + text +
                              "\" is neither cesaro:n, pkc:k:c, nor JSON coefficients");
    }
    if (j.is_object() && j.contains("coeffs")) j = j["coeffs"];
    if (!j.is_array()) throw InvalidArgument("parse polynomial: expected coefficient array");
    std::vector<double> coeffs;
    for (const auto& a : j) {
        if (!a.is_number()) throw InvalidArgument("parse polynomial: coefficients must be numbers");
        coeffs.push_back(a.get<double>());
    }
    return make_convex(std::move(coeffs));
}

double pkc_identity_residual(const LinearOperator& T, const Vector& x, double c, int k) {
    if (x.size() != T.dim())
        throw DimensionMismatch("pkc_identity_residual: dims disagree");
    if (!(c > 1.0)) throw InvalidArgument("pkc_identity_residual: c must be > 1");
    if (k < 1) throw InvalidArgument("pkc_identity_residual: k must be >= 1");

    const Vector lhs = pkc(k, c).apply(T, Vector(c * x - T.apply(x)));

    Vector contracted = x;  // (T/c)^k x
    for (int i = 0; i < k; ++i) contracted = T.apply(contracted) / c;
    const double factor = (c - 1.0) / (1.0 - std::pow(c, -static_cast<double>(k)));
    const Vector rhs = factor * (x - contracted);

    return (lhs - rhs).norm();
}

}  // namespace cvxcyclic
