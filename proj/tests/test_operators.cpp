#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/QR>
#include <algorithm>

#include "cvxcyclic/errors.hpp"
#include "cvxcyclic/json_util.hpp"
#include "cvxcyclic/linear_operator.hpp"
#include "test_support.hpp"

using namespace cvxcyclic;
namespace tt = cvxcyclic::testing;

namespace {
const Complex I2(0.0, 2.0);
}

TEST_CASE("diagonal build") {
    const LinearOperator T = build_operator(spec::diagonal({I2, -I2}));
    CHECK(T.dim() == 2);
    CHECK(T.matrix()(0, 0) == I2);
    CHECK(T.matrix()(1, 1) == -I2);
    CHECK(T.matrix()(0, 1) == Complex(0, 0));
}

TEST_CASE("identity build") {
    const LinearOperator T = build_operator(spec::identity(3));
    CHECK(T.matrix().isIdentity(0.0));
    auto rng = tt::make_rng(7);
    const Vector v = tt::random_vector(rng, 3);
    CHECK((T.apply(v) - v).norm() == 0.0);
}

TEST_CASE("sum builds 2I + B") {
    const LinearOperator T = build_operator(
        spec::sum({{Complex(2, 0), spec::identity(2)},
                   {Complex(1, 0), spec::backward_shift({1.0}, 2)}}));
    CHECK(T.matrix()(0, 0) == Complex(2, 0));
    CHECK(T.matrix()(0, 1) == Complex(1, 0));
    CHECK(T.matrix()(1, 0) == Complex(0, 0));
    CHECK(T.matrix()(1, 1) == Complex(2, 0));

    Vector v(2);
    v << Complex(1, 0), Complex(1, 0);
    const Vector w = T.apply(v);
    CHECK(w[0] == Complex(3, 0));
    CHECK(w[1] == Complex(2, 0));
}

TEST_CASE("shift actions") {
    const LinearOperator B = build_operator(spec::backward_shift({1.0, 1.0}, 3));
    Vector e3 = Vector::Zero(3);
    e3[2] = 1.0;
    const Vector w = B.apply(e3);
    CHECK(w[0] == Complex(0, 0));
    CHECK(w[1] == Complex(1, 0));
    CHECK(w[2] == Complex(0, 0));

    const LinearOperator F = build_operator(spec::forward_shift({1.0, 1.0}, 3));
    Vector e1 = Vector::Zero(3);
    e1[0] = 1.0;
    const Vector u = F.apply(e1);
    CHECK(u[1] == Complex(1, 0));
}

TEST_CASE("diagonal action") {
    const LinearOperator T = build_operator(spec::diagonal({I2, -I2}));
    Vector v(2);
    v << Complex(1, 0), Complex(1, 0);
    const Vector w = T.apply(v);
    CHECK(w[0] == I2);
    CHECK(w[1] == -I2);
}

TEST_CASE("direct sum with negate matches the block matrix exactly") {
    auto rng = tt::make_rng(42);
    const Matrix a = tt::random_matrix(rng, 3);
    const OperatorSpec sa = spec::dense(a);
    const LinearOperator T = build_operator(spec::direct_sum({sa, spec::negate(sa)}));
    REQUIRE(T.dim() == 6);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(T.matrix()(i, j) == a(i, j));
            CHECK(T.matrix()(3 + i, 3 + j) == -a(i, j));
            CHECK(T.matrix()(i, 3 + j) == Complex(0, 0));
            CHECK(T.matrix()(3 + i, j) == Complex(0, 0));
        }
}

TEST_CASE("operator norm") {
    CHECK(operator_norm(build_operator(spec::identity(3))) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(operator_norm(build_operator(spec::diagonal({I2, -I2}))) ==
          doctest::Approx(2.0).epsilon(1e-8));
    const auto twice_shift =
        spec::scale(Complex(2, 0), spec::backward_shift(std::vector<double>(7, 1.0), 8));
    CHECK(operator_norm(build_operator(twice_shift)) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("norm scales by |c|") {
    auto rng = tt::make_rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix m = tt::random_matrix(rng, 5);
        const Complex c = tt::random_complex(rng) * 3.0;
        const double base = operator_norm(build_operator(spec::dense(m)));
        const double scaled =
            operator_norm(build_operator(spec::scale(c, spec::dense(m))));
        CHECK(scaled == doctest::Approx(std::abs(c) * base).epsilon(1e-8));
    }
}

TEST_CASE("adjoint point spectrum") {
    auto sorted = [](std::vector<Complex> v) {
        std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        return v;
    };

    SUBCASE("diagonal gives conjugates") {
        auto rng = tt::make_rng(3);
        std::vector<Complex> entries;
        for (int i = 0; i < 5; ++i) entries.push_back(tt::random_complex(rng) * 2.0);
        const auto eigs = sorted(adjoint_point_spectrum(build_operator(spec::diagonal(entries))));
        std::vector<Complex> expected;
        for (Complex z : entries) expected.push_back(std::conj(z));
        expected = sorted(expected);
        for (std::size_t i = 0; i < expected.size(); ++i)
            CHECK(std::abs(eigs[i] - expected[i]) <= 1e-9 * std::max(1.0, std::abs(expected[i])));
    }
    SUBCASE("identity") {
        const auto eigs = adjoint_point_spectrum(build_operator(spec::identity(2)));
        for (Complex z : eigs) CHECK(std::abs(z - Complex(1, 0)) <= 1e-12);
    }
    SUBCASE("triangular 2I+B") {
        Matrix m(2, 2);
        m << Complex(2, 0), Complex(1, 0), Complex(0, 0), Complex(2, 0);
        const auto eigs = adjoint_point_spectrum(build_operator(spec::dense(m)));
        for (Complex z : eigs) CHECK(std::abs(z - Complex(2, 0)) <= 1e-9);
    }
}

TEST_CASE("range density defect") {
    CHECK(range_density_defect(build_operator(spec::forward_shift({1.0, 1.0}, 3))) == 1);
    CHECK(range_density_defect(build_operator(spec::identity(4))) == 0);
    CHECK(range_density_defect(build_operator(spec::diagonal({I2, -I2}))) == 0);
}

TEST_CASE("zero defect implies solvable systems") {
    auto rng = tt::make_rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix m = tt::random_matrix(rng, 6);
        const LinearOperator T = build_operator(spec::dense(m));
        if (range_density_defect(T) != 0) continue;
        const Vector v = tt::random_unit_vector(rng, 6);
        const Vector u = m.colPivHouseholderQr().solve(v);
        CHECK((m * u - v).norm() <= 1e-8 * v.norm());
    }
}

TEST_CASE("dimension errors") {
    CHECK_THROWS_AS(build_operator(spec::sum({{Complex(1, 0), spec::identity(2)},
                                              {Complex(1, 0), spec::identity(3)}})),
                    DimensionMismatch);
    const LinearOperator T = build_operator(spec::identity(2));
    CHECK_THROWS_AS(T.apply(Vector::Zero(3)), DimensionMismatch);
    CHECK_THROWS_AS(build_operator(spec::backward_shift({1.0}, 3)), InvalidSpec);
}

TEST_CASE("nonfinite entries rejected") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(build_operator(spec::diagonal({Complex(inf, 0)})), InvalidSpec);
    CHECK_THROWS_AS(build_operator(spec::scale(Complex(inf, 0), spec::identity(2))), InvalidSpec);
}

TEST_CASE("spec json wire format") {
    const OperatorSpec s =
        spec::sum({{Complex(2, 0), spec::identity(2)},
                   {Complex(1, 0), spec::backward_shift({1.0}, 2)}});
    const auto j = s.to_json();
    CHECK(j["type"] == "sum");
    CHECK(j["terms"][0]["coeff"][0] == 2.0);
    CHECK(j["terms"][0]["spec"]["type"] == "identity");
    CHECK(j["terms"][0]["spec"]["dim"] == 2);
    CHECK(j["terms"][1]["spec"]["type"] == "backward_shift");
    CHECK(j["terms"][1]["spec"]["weights"][0] == 1.0);

    const OperatorSpec back = OperatorSpec::from_json(j);
    CHECK(build_operator(back).matrix() == build_operator(s).matrix());
}

TEST_CASE("spec json round trip over random trees") {
    auto rng = tt::make_rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const OperatorSpec s = spec::direct_sum(
            {spec::scale(tt::random_complex(rng), spec::dense(tt::random_matrix(rng, 2))),
             spec::negate(spec::diagonal({tt::random_complex(rng), tt::random_complex(rng)}))});
        const OperatorSpec back = OperatorSpec::from_json(s.to_json());
        CHECK(build_operator(back).matrix() == build_operator(s).matrix());
    }
}

TEST_CASE("malformed spec json") {
    CHECK_THROWS_AS(OperatorSpec::parse("{\"type\":\"nope\"}"), ConfigError);
    CHECK_THROWS_AS(OperatorSpec::parse("{\"entries\":[]}"), ConfigError);
    CHECK_THROWS_AS(OperatorSpec::parse("not json"), ConfigError);
    CHECK_THROWS_AS(OperatorSpec::parse("{\"type\":\"diagonal\",\"entries\":[[1]]}"),
                    ConfigError);
}
