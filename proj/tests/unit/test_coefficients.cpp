#include <doctest.h>

#include "lambertheta/closed_forms.hpp"
#include "lambertheta/coefficients.hpp"
#include "oracles.hpp"

using namespace lambertheta;

namespace {

SequenceSpec lucas(double s, double t) { return SequenceSpec(seq::Lucas{s, t}); }

void check_exact(const SequenceSpec& spec, const std::vector<long long>& expected, int first = 0) {
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const auto n = static_cast<std::int64_t>(i) + first;
        CHECK(integer_coefficient(spec, n) == BigInt(expected[i]));
        CHECK(coefficient(spec, n) == Scalar(static_cast<double>(expected[i])));
    }
}

}  // namespace

TEST_CASE("elementary coefficients") {
    CHECK(coefficient(SequenceSpec(seq::InvFactorial{}), 0) == Scalar(1.0));
    CHECK(coefficient(SequenceSpec(seq::InvFactorial{}), 5) == Scalar(1.0 / 120.0));
    CHECK(coefficient(SequenceSpec(seq::AltSign{-1}), 3) == Scalar(-1.0));
    CHECK(coefficient(SequenceSpec(seq::AltSignOverNPlus1{-1}), 3) == Scalar(-0.25));
    CHECK(coefficient(SequenceSpec(seq::AltInvEvenFactorial{}), 2) == Scalar(1.0 / 24.0));
    CHECK(coefficient(SequenceSpec(seq::AltInvOddFactorial{}), 1) == Scalar(-1.0 / 6.0));
    // 170!⁻¹ is still a normal double; it must not collapse to zero on the way.
    CHECK(coefficient(SequenceSpec(seq::InvFactorial{}), 170).real() > 0.0);
}

TEST_CASE("table sequences") {
    SequenceSpec t(seq::Table{{1.0, Scalar(0, 2), 3.0}});
    CHECK(t.length() == 3u);
    CHECK(coefficient(t, 1) == Scalar(0, 2));
    CHECK_THROWS_AS(coefficient(t, 3), Error);
    CHECK_THROWS_AS(SequenceSpec(seq::Table{{}}), Error);
}

TEST_CASE("printed Lucas specializations") {
    check_exact(lucas(1, 1), oracle::kFibonacci);
    check_exact(lucas(2, 1), oracle::kPell);
    check_exact(lucas(1, 2), oracle::kJacobsthal);
    check_exact(lucas(3, -2), oracle::kMersenne);
    check_exact(lucas(2, -1), oracle::kNatural);
    for (int n = 0; n <= 30; ++n) {
        CHECK(integer_coefficient(lucas(3, -2), n) == (BigInt(1) << n) - 1);
        CHECK(integer_coefficient(lucas(2, -1), n) == BigInt(n));
    }
}

TEST_CASE("(p,q)-numbers") {
    const auto spec = lucas(5, -6);
    for (int n = 0; n <= 20; ++n) {
        BigInt p = 1, q = 1;
        for (int i = 0; i < n; ++i) {
            p *= 2;
            q *= 3;
        }
        CHECK(integer_coefficient(spec, n) == (p - q) / (2 - 3));
    }
}

TEST_CASE("Chebyshev U through the floating recurrence") {
    const double t = 0.7, theta = std::acos(t);
    const SequenceSpec spec(seq::Lucas{2 * t, -1.0});
    CHECK_FALSE(has_integer_parameters(*spec.as<seq::Lucas>()));
    for (int n = 0; n <= 25; ++n) {
        CHECK(std::abs(coefficient(spec, n) - std::sin(n * theta) / std::sin(theta)) < 1e-10);
    }
}

TEST_CASE("Binet consistency") {
    for (auto [s, t] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {1.0, 2.0}}) {
        const auto roots = lucas_roots(s, t);
        for (int n = 0; n <= 25; ++n) {
            const Scalar binet =
                (oracle::pow_n(roots.phi, n) - oracle::pow_n(roots.varphi, n)) / (roots.phi - roots.varphi);
            const Scalar a = coefficient(lucas(s, t), n);
            CHECK(std::abs(a - binet) <= 1e-10 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("lucas_roots") {
    auto golden = lucas_roots(1, 1);
    CHECK(std::abs(golden.phi - (1 + std::sqrt(5.0)) / 2) < 1e-12);
    CHECK(std::abs(golden.varphi - (1 - std::sqrt(5.0)) / 2) < 1e-12);
    auto silver = lucas_roots(2, 1);
    CHECK(std::abs(silver.phi - (1 + std::sqrt(2.0))) < 1e-12);
    CHECK(std::abs(silver.phi * silver.phi - 2.0 * silver.phi - 1.0) < 1e-12);
    try {
        lucas_roots(2, -1);
        FAIL("expected DegenerateRoots");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateRoots);
    }
}

TEST_CASE("lucas_generating_check") {
    CHECK(lucas_generating_check(1, 1, 0.0) == Scalar(0.0));
    CHECK(std::abs(lucas_generating_check(1, 1, 0.2) - 0.2 / 0.76) < 1e-14);
    Scalar brute{};
    {
        double a0 = 0, a1 = 1, un = 1;
        for (int n = 0; n <= 40; ++n) {
            brute += a0 * un;
            const double a2 = 2 * a1 + a0;
            a0 = a1;
            a1 = a2;
            un *= 0.1;
        }
    }
    CHECK(std::abs(lucas_generating_check(2, 1, 0.1) - brute) < 1e-14);
}

TEST_CASE("printed polytopic rows") {
    check_exact(SequenceSpec(seq::Polytopic{1, 1}), oracle::kNatural);
    check_exact(SequenceSpec(seq::Polytopic{2, 1}), oracle::kTriangular);
    check_exact(SequenceSpec(seq::Polytopic{3, 1}), oracle::kTetrahedral);
    check_exact(SequenceSpec(seq::Polytopic{4, 1}), oracle::kPentachoron);
    check_exact(SequenceSpec(seq::Polytopic{5, 1}), oracle::kHexateron);
    CHECK(coefficient(SequenceSpec(seq::Polytopic{2, -1}), 3) == Scalar(-6.0));
}

TEST_CASE("polytopic generating function") {
    for (int d = 1; d <= 5; ++d) {
        const SequenceSpec spec(seq::Polytopic{d, 1});
        Scalar sum{};
        for (int n = 1; n <= 60; ++n) sum += coefficient(spec, n) * std::pow(0.3, n);
        CHECK(std::abs(sum - 0.3 / std::pow(0.7, d + 1)) < 1e-10);
    }
}

TEST_CASE("big-integer helpers") {
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(5, 7) == 0);
    CHECK(factorial(25) == BigInt("15511210043330985984000000"));
}

TEST_CASE("ratio bounds") {
    CHECK(SequenceSpec(seq::AltSign{1}).ratio_bound(0) == doctest::Approx(1.0));
    CHECK(SequenceSpec(seq::InvFactorial{}).ratio_bound(9) <= 0.1 + 1e-15);
    const double fib = SequenceSpec(seq::Lucas{1.0, 1.0}).ratio_bound(5);
    CHECK(fib >= 1.6180339887 - 1e-9);
    CHECK(std::isfinite(fib));
}
