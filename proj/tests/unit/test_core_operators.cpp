#include <doctest.h>

#include <random>

#include "lambertheta/laurent_series.hpp"
#include "oracles.hpp"

using namespace lambertheta;

namespace {

bool close(Scalar a, Scalar b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

LaurentSeries random_series(std::mt19937_64& rng, int degree) {
    return LaurentSeries::polynomial(oracle::random_poly(rng, degree));
}

}  // namespace

TEST_CASE("lambda_derivative on monomials and constants") {
    auto d = lambda_derivative(LaurentSeries::monomial(3), 2.0);
    CHECK(d.min_exponent() == 2);
    CHECK(d.coefficient(2) == Scalar(8.0));

    auto c = lambda_derivative(LaurentSeries::constant(5.0), 0.37);
    CHECK(c.min_exponent() == -1);
    CHECK(c.coefficient(-1) == Scalar(5.0));

    auto x = lambda_derivative(LaurentSeries::monomial(1), 1.0).normalized();
    CHECK(x == LaurentSeries::constant(1.0));
}

TEST_CASE("monomial law is exact") {
    for (Scalar lambda : {Scalar(0.5), Scalar(-0.5), Scalar(0.3, 0.4), Scalar(1.0)}) {
        for (int n = 0; n <= 16; ++n) {
            auto d = lambda_derivative(LaurentSeries::monomial(n), lambda);
            CHECK(d.coefficient(n - 1) == ipow(lambda, n));
        }
    }
}

TEST_CASE("lambda_derivative matches the naive coefficient map") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto c = oracle::random_poly(rng, 12);
        const Scalar lambda(0.2, 0.4);
        auto ref = oracle::lambda_derivative(c, 0, lambda);
        auto d = lambda_derivative(LaurentSeries::polynomial(c), lambda);
        for (int e = 0; e <= 12; ++e) CHECK(close(d.coefficient(e - 1), ref[e], 1e-14));
    }
}

TEST_CASE("lambda_derivative_pow") {
    SUBCASE("x^4, lambda 0.5, n 2") {
        auto f = LaurentSeries::monomial(4);
        auto closed = lambda_derivative_pow(f, 0.5, 2);
        auto iter = lambda_derivative(lambda_derivative(f, 0.5), 0.5);
        CHECK(close(closed.coefficient(2), std::pow(0.5, 7), 1e-15));
        CHECK(approx_equal(closed, iter, 1e-14));
    }
    SUBCASE("n = 0 is the identity") {
        auto f = LaurentSeries::polynomial({1.0, 2.0, 3.0});
        CHECK(lambda_derivative_pow(f, 0.4, 0) == f);
    }
    SUBCASE("x^2, lambda 3, n 2 gives 27") {
        auto r = lambda_derivative_pow(LaurentSeries::monomial(2), 3.0, 2).normalized();
        CHECK(r.min_exponent() == 0);
        CHECK(close(r.coefficient(0), 27.0, 1e-15));
    }
    SUBCASE("closed form against iteration on random polynomials") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> mod(0.2, 0.9), arg(-3.14, 3.14);
        for (int trial = 0; trial < 30; ++trial) {
            auto f = random_series(rng, 12);
            const Scalar lambda = std::polar(mod(rng), arg(rng));
            auto iter = f;
            for (int n = 0; n <= 6; ++n) {
                CHECK(approx_equal(lambda_derivative_pow(f, lambda, n), iter, 1e-12));
                iter = lambda_derivative(iter, lambda);
            }
        }
    }
    SUBCASE("lambda = 0 with a negative exponent") {
        CHECK_THROWS_AS(lambda_derivative(LaurentSeries::monomial(-1), 0.0), Error);
    }
}

TEST_CASE("product rules") {
    std::mt19937_64 rng(3);
    const auto x = LaurentSeries::monomial(1);
    for (Scalar lambda : {Scalar(0.3), Scalar(-0.5), Scalar(0.2, 0.4)}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto f = random_series(rng, 6);
            auto g = random_series(rng, 6);
            CHECK(approx_equal(lambda_derivative(f * g, lambda),
                               x * lambda_derivative(f, lambda) * lambda_derivative(g, lambda), 1e-12));
            for (int n = 0; n <= 4; ++n) {
                auto lhs = lambda_derivative_pow(f * g, lambda, n);
                auto rhs = ipow(lambda, choose2(n)) * LaurentSeries::monomial(n) *
                           lambda_derivative_pow(f, lambda, n) * lambda_derivative_pow(g, lambda, n);
                CHECK(approx_equal(lhs, rhs, 1e-12));
            }
        }
    }
}

TEST_CASE("linearity") {
    std::mt19937_64 rng(5);
    auto f = random_series(rng, 9);
    auto g = random_series(rng, 5);
    const Scalar a(0.7, -0.2), b(-1.3, 0.5), lambda(0.2, 0.4);
    CHECK(approx_equal(lambda_derivative(a * f + b * g, lambda),
                       a * lambda_derivative(f, lambda) + b * lambda_derivative(g, lambda), 1e-15));
}

TEST_CASE("theta operator") {
    SUBCASE("K = 0 and y = 0 leave f unchanged") {
        auto f = LaurentSeries::polynomial({0.5, -1.0, 2.0});
        CHECK(approx_equal(theta_apply(f, 0.3, 0.5, 0), f, 0.0));
        CHECK(approx_equal(theta_apply(LaurentSeries::monomial(2), 0.0, 0.5, 25), LaurentSeries::monomial(2), 0.0));
    }
    SUBCASE("monomial image is a geometric descent") {
        const int n = 3;
        const Scalar y = 0.4, lambda = 0.6;
        auto t = theta_apply(LaurentSeries::monomial(n), y, lambda, 20);
        const Scalar r = ipow(lambda, n) * y;
        for (int k = 0; k <= 20; ++k) CHECK(close(t.coefficient(n - k), ipow(r, k), 1e-13));
    }
    SUBCASE("closed form values") {
        CHECK(close(theta_monomial(0, 2.0, 1.0, 0.5), 2.0, 1e-15));
        CHECK(close(theta_monomial(1, 1.0, 0.5, 0.5), 4.0 / 3.0, 1e-15));
        CHECK(close(theta_monomial(5, Scalar(0.7, 0.2), 0.0, 0.3), ipow(Scalar(0.7, 0.2), 5), 1e-15));
    }
    SUBCASE("long truncations stay finite") {
        // λ^C(K,2) underflows here; the operator must not divide by it.
        const Scalar x(0.8, 0.3), y = 0.7, lambda = 0.3;
        const auto t = theta_apply(LaurentSeries::monomial(2), y, lambda, 400);
        CHECK(close(t.evaluate(x), theta_monomial(2, x, y, lambda), 1e-12));
    }
    SUBCASE("pole") {
        CHECK_THROWS_AS(theta_monomial(3, 0.125, 1.0, 0.5), Error);
    }
}

TEST_CASE("Laurent arithmetic") {
    LaurentSeries a(-2, {1.0, 0.0, 3.0});
    LaurentSeries b(0, {2.0, 1.0});
    CHECK((a + b).coefficient(0) == Scalar(5.0));
    CHECK((a - a).normalized() == LaurentSeries::constant(0.0));
    CHECK((a * b).coefficient(-2) == Scalar(2.0));
    CHECK((a * b).coefficient(1) == Scalar(3.0));
    CHECK(close(a.evaluate(2.0), 0.25 + 3.0, 1e-15));
    CHECK(a.shifted(2).min_exponent() == 0);
    LaurentSeries padded(-1, {0.0, 1.0, 0.0});
    CHECK(padded.normalized() == LaurentSeries::monomial(0));
}

TEST_CASE("complex literals") {
    CHECK(format_scalar(0.1) == "0.1");
    CHECK(format_scalar({1.0, -2.0}) == "1-2i");
    CHECK(format_scalar({0.25, 0.5}) == "0.25+0.5i");
    CHECK(parse_scalar("0.2-0.3i") == Scalar(0.2, -0.3));
    CHECK(parse_scalar("-1.5i") == Scalar(0.0, -1.5));
    CHECK(parse_scalar("3") == Scalar(3.0));
    CHECK_FALSE(parse_scalar("1e-3"));
    CHECK_FALSE(parse_scalar("1+i2"));
    CHECK_FALSE(parse_scalar(""));
    for (Scalar v : {Scalar(1.0 / 3.0, -2.0 / 7.0), Scalar(123.456, 0.0), Scalar(-0.5, 0.125)}) {
        CHECK(parse_scalar(format_scalar(v)) == v);
    }
}
