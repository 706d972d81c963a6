#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "cvxcyclic/convex_poly.hpp"
#include "cvxcyclic/errors.hpp"
#include "cvxcyclic/hull.hpp"
#include "test_support.hpp"

using namespace cvxcyclic;
namespace tt = cvxcyclic::testing;

namespace {

std::vector<double> random_convex_coeffs(std::mt19937_64& rng, int max_len = 40) {
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_real_distribution<double> mass(0.0, 1.0);
    std::vector<double> raw(len(rng));
    double total = 0.0;
    for (double& a : raw) {
        a = mass(rng);
        total += a;
    }
    if (total == 0.0) raw[0] = total = 1.0;
    for (double& a : raw) a /= total;
    return raw;
}

}  // namespace

TEST_CASE("make_convex accepts simplex points") {
    const auto p = make_convex({0.2, 0.8});
    CHECK(p.coeffs() == std::vector<double>{0.2, 0.8});
    CHECK(make_convex({1.0}).coeffs() == std::vector<double>{1.0});
}

TEST_CASE("make_convex rejections") {
    CHECK_THROWS_AS(make_convex({0.5, 0.6}), SumNotOne);
    CHECK_THROWS_AS(make_convex({-0.1, 1.1}), NegativeCoefficient);
    CHECK_THROWS_AS(make_convex({}), InvalidArgument);
}

TEST_CASE("make_convex renormalizes near-one sums and trims trailing zeros") {
    const auto p = make_convex({0.25 + 1e-10, 0.75, 0.0});
    CHECK(p.coeffs().size() == 2);
    const double s = std::accumulate(p.coeffs().begin(), p.coeffs().end(), 0.0);
    CHECK(std::abs(s - 1.0) <= 1e-12);
}

TEST_CASE("eval at one is one") {
    auto rng = tt::make_rng(5);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto p = make_convex(random_convex_coeffs(rng));
        CHECK(std::abs(p.eval(Complex(1, 0)) - Complex(1, 0)) <= 1e-12);
    }
}

TEST_CASE("eval examples") {
    CHECK(make_convex({0.0, 1.0}).eval(Complex(0, 2)) == Complex(0, 2));
    // direct substitution: 4/7 + (2/7)*2 + (1/7)*4 = 12/7
    const double expected = 4.0 / 7 + (2.0 / 7) * 2 + (1.0 / 7) * 4;
    CHECK(std::abs(pkc(3, 2.0).eval(Complex(2, 0)).real() - expected) <= 1e-14);
    CHECK(std::abs(pkc(3, 2.0).eval(Complex(2, 0)).imag()) == 0.0);
}

TEST_CASE("apply_poly basics") {
    const LinearOperator D = build_operator(spec::diagonal({Complex(0, 2), Complex(0, -2)}));
    Vector x(2);
    x << Complex(1, 0), Complex(1, 0);

    CHECK((make_convex({1.0}).apply(D, x) - x).norm() == 0.0);

    const Vector avg = make_convex({0.5, 0.5}).apply(D, x);
    CHECK(avg[0] == Complex(0.5, 1.0));
    CHECK(avg[1] == Complex(0.5, -1.0));

    const LinearOperator I = build_operator(spec::identity(2));
    CHECK((cesaro_mean(3).apply(I, x) - x).norm() <= 1e-15);
}

TEST_CASE("apply_poly matches the orbit-row combination") {
    auto rng = tt::make_rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const LinearOperator T = build_operator(spec::dense(tt::random_matrix(rng, 4)));
        const Vector x = tt::random_unit_vector(rng, 4);
        const auto p = make_convex(random_convex_coeffs(rng, 12));
        const OrbitTable orbit = compute_orbit(T, x, static_cast<int>(p.degree()));
        Vector expected = Vector::Zero(4);
        for (std::size_t k = 0; k < p.coeffs().size(); ++k)
            expected += p.coeffs()[k] * orbit.rows[k];
        const Vector got = p.apply(T, x);
        CHECK((got - expected).norm() <= 1e-10 * std::max(1.0, expected.norm()));
    }
}

TEST_CASE("cesaro means") {
    CHECK(cesaro_mean(3).coeffs() == std::vector<double>(3, 1.0 / 3));
    CHECK(cesaro_mean(1).coeffs() == std::vector<double>{1.0});
    CHECK(cesaro_mean(2).coeffs() == std::vector<double>{0.5, 0.5});
    CHECK_THROWS_AS(cesaro_mean(0), InvalidArgument);
}

TEST_CASE("pkc family") {
    const auto p = pkc(3, 2.0);
    REQUIRE(p.coeffs().size() == 3);
    CHECK(p.coeffs()[0] == doctest::Approx(4.0 / 7).epsilon(1e-14));
    CHECK(p.coeffs()[1] == doctest::Approx(2.0 / 7).epsilon(1e-14));
    CHECK(p.coeffs()[2] == doctest::Approx(1.0 / 7).epsilon(1e-14));

    CHECK(pkc(1, 5.0).coeffs() == std::vector<double>{1.0});
    CHECK(pkc(2, 1.0).coeffs() == std::vector<double>{0.5, 0.5});
    CHECK_THROWS_AS(pkc(0, 2.0), InvalidArgument);
    CHECK_THROWS_AS(pkc(2, 0.5), InvalidArgument);
}

TEST_CASE("pkc coincides with the arithmetic mean at c = 1") {
    for (int k = 1; k <= 50; ++k) CHECK(pkc(k, 1.0).coeffs() == cesaro_mean(k).coeffs());
}

TEST_CASE("pkc coefficients strictly decrease for c > 1") {
    auto rng = tt::make_rng(13);
    std::uniform_real_distribution<double> cdist(1.01, 6.0);
    std::uniform_int_distribution<int> kdist(2, 40);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = pkc(kdist(rng), cdist(rng));
        for (std::size_t j = 0; j + 1 < p.coeffs().size(); ++j)
            CHECK(p.coeffs()[j] > p.coeffs()[j + 1]);
    }
}

TEST_CASE("poly_power") {
    const auto sq = poly_power(make_convex({0.5, 0.5}), 2);
    REQUIRE(sq.coeffs().size() == 3);
    CHECK(sq.coeffs()[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(sq.coeffs()[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sq.coeffs()[2] == doctest::Approx(0.25).epsilon(1e-15));

    CHECK(poly_power(make_convex({1.0}), 5).coeffs() == std::vector<double>{1.0});
    const auto p = make_convex({0.3, 0.7});
    CHECK(poly_power(p, 1).coeffs() == p.coeffs());
}

TEST_CASE("substitute_monomial") {
    const auto q = substitute_monomial(make_convex({0.6, 0.4}), 2);
    CHECK(q.coeffs() == std::vector<double>{0.6, 0.0, 0.4});
    CHECK(substitute_monomial(make_convex({1.0}), 7).coeffs() == std::vector<double>{1.0});
    const auto r = substitute_monomial(cesaro_mean(3), 3);
    CHECK(r.coeffs().size() == 7);
    CHECK(r.coeffs()[3] == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(r.coeffs()[1] == 0.0);
}

TEST_CASE("constructor outputs always revalidate") {
    auto rng = tt::make_rng(31);
    std::uniform_int_distribution<int> mdist(1, 5);
    std::uniform_int_distribution<int> ndist(1, 6);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = make_convex(random_convex_coeffs(rng, 10));
        CHECK_NOTHROW(make_convex(poly_power(p, mdist(rng)).coeffs()));
        CHECK_NOTHROW(make_convex(substitute_monomial(p, ndist(rng)).coeffs()));
        CHECK_NOTHROW(make_convex(pkc(ndist(rng), 1.0 + mdist(rng)).coeffs()));
        CHECK_NOTHROW(make_convex(cesaro_mean(ndist(rng)).coeffs()));
    }
}

TEST_CASE("pkc identity residual collapses at k = 1 and for the identity") {
    auto rng = tt::make_rng(37);
    const LinearOperator T = build_operator(spec::dense(tt::random_matrix(rng, 4)));
    const Vector x = tt::random_unit_vector(rng, 4);
    CHECK(pkc_identity_residual(T, x, 2.0, 1) <= 1e-14);

    const LinearOperator I = build_operator(spec::identity(4));
    CHECK(pkc_identity_residual(I, x, 1.7, 9) <= 1e-12);
}

TEST_CASE("pkc identity residual stays within the contract bound") {
    auto rng = tt::make_rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const LinearOperator T = build_operator(spec::dense(tt::random_matrix(rng, 5)));
        const Vector x = tt::random_vector(rng, 5);
        const double scale =
            (1.0 + x.norm()) * std::pow(std::max(1.0, operator_norm(T)), 20);
        CHECK(pkc_identity_residual(T, x, 1.5, 20) <= 1e-9 * scale);
    }
}

TEST_CASE("polynomial parsing") {
    CHECK(parse_convex_polynomial("cesaro:3").coeffs() == cesaro_mean(3).coeffs());
    CHECK(parse_convex_polynomial("pkc:3:2").coeffs() == pkc(3, 2.0).coeffs());
    CHECK(parse_convex_polynomial("[0.2, 0.8]").coeffs() == std::vector<double>{0.2, 0.8});
    CHECK(parse_convex_polynomial("{\"coeffs\":[1.0]}").coeffs() == std::vector<double>{1.0});
    CHECK_THROWS_AS(parse_convex_polynomial("pkc:3"), InvalidArgument);
    CHECK_THROWS_AS(parse_convex_polynomial("cesaro:x"), InvalidArgument);
    CHECK_THROWS_AS(parse_convex_polynomial("wat"), InvalidArgument);
    CHECK_THROWS_AS(parse_convex_polynomial("[0.5, 0.6]"), SumNotOne);
}

TEST_CASE("degree cap") {
    CHECK_THROWS_AS(cesaro_mean(20'000), InvalidArgument);
    CHECK_THROWS_AS(substitute_monomial(make_convex({0.0, 1.0}), 20'000), InvalidArgument);
}
