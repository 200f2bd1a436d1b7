#include <doctest.h>

#include <random>

#include "lambertheta/evaluators.hpp"
#include "lambertheta/verify.hpp"
#include "oracles.hpp"

using namespace lambertheta;

namespace {

const SequenceSpec kOnes(seq::AltSign{1});
const ClosedForm kGeom(form::Geometric{1});
const ClosedForm kExp(form::Exp{});

bool rel_close(Scalar a, Scalar b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

oracle::Coeff ones() {
    return [](int) { return Scalar(1.0); };
}

std::vector<std::string> whats(const std::vector<Violation>& v) {
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(e.what);
    return out;
}

}  // namespace

TEST_CASE("validate_domain") {
    const DomainRadii unit{1.0, 1.0};
    CHECK(validate_domain(LambertParams{1, 0.2, 0.3, 0.5}, unit).empty());
    CHECK(whats(validate_domain(LambertParams{1, 1.5, 0.3, 0.5}, unit)) == std::vector<std::string>{"|y|<|x| violated"});
    CHECK(whats(validate_domain(MehlerParams{1, 0.3, 0.5, 0.5, 0.25, 0.5}, unit)) ==
          std::vector<std::string>{"z≠w violated", "|w|<|z| violated"});
    const auto same = validate_domain(LambertParams{1, 1, 0.3, 0.5}, unit);
    REQUIRE_FALSE(same.empty());
    CHECK(same.front().what == "x≠y violated");
    CHECK_FALSE(same.front().relaxable);
    const auto big_lambda = validate_domain(LambertParams{1, 0.2, 0.3, 1.0}, unit);
    REQUIRE(big_lambda.size() == 1u);
    CHECK(big_lambda[0].what == "|λ|<1 violated");
    // The literal double-sum example has |y| = |μ^{I-1} x| far past the horizon.
    const auto ds = validate_domain(DoubleSumParams{1, 0.1, 0.2, 0.3, 0.5, 0.6}, unit);
    REQUIRE(ds.size() == 1u);
    CHECK(ds[0].relaxable);
    CHECK(validate_domain(DoubleSumParams{1, 0.1, 0.05, 0.3, 0.5, 0.9}, unit).empty());
    CHECK_THROWS_AS(validate_domain(LambertParams{1, std::nan(""), 0.3, 0.5}, unit), Error);
}

TEST_CASE("Lambert") {
    const LambertParams p{1, 0.2, 0.3, 0.5};
    SUBCASE("z = 0 keeps the n = 0 term") {
        const auto r = eval_lambert_lhs(kOnes, LambertParams{1, 0.2, 0, 0.5});
        CHECK(r.converged);
        CHECK(rel_close(r.value, 1.25, 1e-15));
    }
    SUBCASE("geometric expansion oracle") {
        const auto lhs = eval_lambert_lhs(kOnes, p);
        const auto rhs = eval_lambert_rhs(kGeom, p);
        const Scalar ref = oracle::lambert_geometric_expansion(ones(), p.x, p.y, p.z, p.lambda, 80, 80);
        CHECK(rel_close(lhs.value, ref, 1e-10));
        CHECK(rel_close(rhs.value, lhs.value, 1e-10));
    }
    SUBCASE("single-entry table") {
        const auto r = eval_lambert_lhs(SequenceSpec(seq::Table{{1.0}}), LambertParams{1, 0.2, 0.7, 0.5});
        CHECK(r.value == Scalar(1.0) / Scalar(0.8));
    }
    SUBCASE("y = 0 leaves f(xz)") {
        const auto r = eval_lambert_rhs(kExp, LambertParams{1, 0, 0.3, 0.5});
        CHECK(rel_close(r.value, std::exp(0.3), 1e-15));
    }
    SUBCASE("classical anchor") {
        const double q = 0.1;
        const auto r = eval_lambert_rhs(kGeom, LambertParams{1, q, q, q}, {1e-14});
        const long double direct = oracle::classical_lambert([](int) { return 1.0L; }, q, 60);
        CHECK(std::abs(q * r.value - static_cast<double>(direct)) < 1e-13);
    }
    SUBCASE("specialization (1,q,q,q)") {
        const double q = 0.1;
        const auto r = eval_lambert_lhs(kOnes, LambertParams{1, q, q, q}, {1e-14});
        double direct = 0;
        for (int n = 0; n < 60; ++n) direct += std::pow(q, n) / (1 - std::pow(q, n + 1));
        CHECK(rel_close(r.value, direct, 1e-13));
    }
    SUBCASE("pole at n = 3") {
        const Scalar lambda = 0.5, y = 0.5;
        try {
            eval_lambert_lhs(kOnes, LambertParams{ipow(lambda, 3) * y, y, 0.3, lambda});
            FAIL("expected a pole");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::PoleProximity);
            CHECK(e.index() == 3);
        }
    }
    SUBCASE("max terms carries the partial sum") {
        EvalConfig cfg;
        cfg.max_terms = 5;
        try {
            eval_lambert_lhs(kOnes, LambertParams{1, 0.2, 0.9, 0.5}, cfg);
            FAIL("expected MaxTermsExceeded");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::MaxTermsExceeded);
            REQUIRE(e.partial());
            CHECK_FALSE(e.partial()->converged);
            CHECK(e.partial()->terms_used == 5);
        }
    }
    SUBCASE("ratio >= 1 on the right") {
        CHECK_THROWS_AS(eval_lambert_rhs(kGeom, LambertParams{1, 1.2, 0.3, 0.5}), Error);
    }
}

TEST_CASE("Mehler") {
    SUBCASE("exponential corollary oracle") {
        const MehlerParams p{1, 0.3, 1, 0.2, 0.25, 0.5};
        const auto lhs = eval_mehler_lhs(SequenceSpec(seq::InvFactorial{}), p);
        const auto rhs = eval_mehler_rhs(kExp, p);
        const Scalar ref = oracle::mehler_exp_direct(p.x, p.y, p.z, p.w, p.t, p.lambda, 80);
        CHECK(rel_close(rhs.value, ref, 1e-10));
        CHECK(rel_close(lhs.value, ref, 1e-10));
    }
    SUBCASE("geometric pair") {
        const MehlerParams p{1, 0.3, 1, 0.2, 0.25, 0.5};
        CHECK(rel_close(eval_mehler_lhs(kOnes, p).value, eval_mehler_rhs(kGeom, p).value, 1e-10));
    }
    SUBCASE("w = y = 0") {
        CHECK(rel_close(eval_mehler_rhs(kExp, MehlerParams{1, 0, 1, 0, 0.2, 0.5}).value, std::exp(0.2), 1e-15));
    }
    SUBCASE("t = 0") {
        const MehlerParams p{1, 0.3, 1, 0.2, 0, 0.5};
        const Scalar closed = 1.0 / ((1.0 - 0.2) * (1.0 - 0.3));
        CHECK(rel_close(eval_mehler_lhs(kOnes, p).value, closed, 1e-14));
        CHECK(rel_close(eval_mehler_rhs(kGeom, p).value, closed, 1e-10));
    }
}

TEST_CASE("Rogers") {
    SUBCASE("double-sum oracle") {
        const RogersParams p{1, 0.2, 0.3, 0.25, 0.5};
        const auto lhs = eval_rogers_lhs(kOnes, kOnes, p);
        const auto rhs = eval_rogers_rhs(kGeom, kGeom, p);
        const Scalar ref = oracle::rogers_direct(ones(), ones(), p.x, p.y, p.t, p.s, p.lambda, 80);
        CHECK(rel_close(lhs.value, ref, 1e-10));
        CHECK(rel_close(rhs.value, ref, 1e-10));
    }
    SUBCASE("y = 0 gives f(tx) g(sx)") {
        const auto r = eval_rogers_rhs(kExp, kExp, RogersParams{1, 0, 0.1, 0.2, 0.5});
        CHECK(rel_close(r.value, std::exp(0.3), 1e-14));
    }
    SUBCASE("s = 0 reduces to Lambert in t") {
        const SequenceSpec fact(seq::InvFactorial{});
        const auto r = eval_rogers_lhs(fact, kOnes, RogersParams{1, 0.2, 0.4, 0, 0.5});
        const auto l = eval_lambert_lhs(fact, LambertParams{1, 0.2, 0.4, 0.5});
        CHECK(rel_close(r.value, l.value, 1e-12));
    }
    SUBCASE("swap symmetry") {
        const SequenceSpec a(seq::InvFactorial{});
        const SequenceSpec b(seq::AltSign{-1});
        const ClosedForm fa(form::Exp{}), fb(form::Geometric{-1});
        const RogersParams p{1, 0.2, 0.3, 0.45, Scalar(0.3, 0.2)};
        const RogersParams q{1, 0.2, 0.45, 0.3, Scalar(0.3, 0.2)};
        CHECK(rel_close(eval_rogers_lhs(a, b, p).value, eval_rogers_lhs(b, a, q).value, 1e-10));
        CHECK(rel_close(eval_rogers_rhs(fa, fb, p).value, eval_rogers_rhs(fb, fa, q).value, 1e-10));
    }
}

TEST_CASE("DoubleSum") {
    SUBCASE("brute-force oracle") {
        const DoubleSumParams p{1, 0.1, 0.05, 0.3, 0.5, 0.9};
        const auto lhs = eval_doublesum_lhs(kOnes, p);
        const auto rhs = eval_doublesum_rhs(kGeom, p);
        const Scalar ref = oracle::doublesum_direct(ones(), p.x, p.y, p.z, p.t, p.lambda, p.mu, 60, 60);
        CHECK(rel_close(lhs.value, ref, 1e-9));
        CHECK(rel_close(rhs.value, ref, 1e-9));
    }
    SUBCASE("z = 0 collapses to Lambert") {
        const auto ds = eval_doublesum_lhs(kOnes, DoubleSumParams{1, 0.1, 0, 0.3, 0.5, 0.6});
        const auto l = eval_lambert_lhs(kOnes, LambertParams{1, 0.1, 0.3, 0.5});
        CHECK(rel_close(ds.value, l.value, 1e-12));
        const auto dr = eval_doublesum_rhs(kGeom, DoubleSumParams{1, 0.1, 0, 0.3, 0.5, 0.6});
        const auto lr = eval_lambert_rhs(kGeom, LambertParams{1, 0.1, 0.3, 0.5});
        CHECK(rel_close(dr.value, lr.value, 1e-12));
    }
    SUBCASE("y = 0") {
        const DoubleSumParams p{1, 0, 0.2, 0.3, 0.5, 0.6};
        Scalar expected{};
        for (int i = 0; i < 60; ++i) expected += std::pow(0.2, i) * std::exp(std::pow(0.6, i) * 0.3);
        CHECK(rel_close(eval_doublesum_lhs(SequenceSpec(seq::InvFactorial{}), p).value, expected, 1e-10));
        CHECK(rel_close(eval_doublesum_rhs(kExp, p).value, expected, 1e-10));
    }
    SUBCASE("horizon") {
        CHECK(doublesum_outer_horizon(0.1, 1, 1e-10) == 13);
        CHECK(doublesum_outer_horizon(0, 1, 1e-10) == 1);
    }
}

TEST_CASE("Multivariate") {
    SUBCASE("m = 3 against the equal-variable power form") {
        const MultivariateParams p{{1, 1, 1}, {0.2, 0.2, 0.2}, {0.5, 0.5, 0.5}, 0.4};
        const auto lhs = eval_multivariate_lhs(kOnes, p);
        const auto rhs = eval_multivariate_rhs(kGeom, p);
        const Scalar ref = oracle::equal_variable_power(ones(), 1, 0.2, 0.4, 0.5, 3, 200);
        CHECK(rel_close(lhs.value, ref, 1e-9));
        CHECK(rel_close(rhs.value, ref, 1e-9));
    }
    SUBCASE("m = 1 is Lambert bit for bit") {
        const MultivariateParams p{{Scalar(0.9, 0.1)}, {0.3}, {Scalar(0.2, 0.4)}, 0.6};
        const LambertParams l{p.x[0], p.y[0], p.z, p.lambda[0]};
        const auto ml = eval_multivariate_lhs(kOnes, p);
        const auto ll = eval_lambert_lhs(kOnes, l);
        CHECK(ml.value == ll.value);
        CHECK(ml.terms_used == ll.terms_used);
        CHECK(eval_multivariate_rhs(kGeom, p).value == eval_lambert_rhs(kGeom, l).value);
    }
    SUBCASE("all y = 0") {
        const MultivariateParams p{{1, 0.9}, {0, 0}, {0.5, 0.3}, 0.5};
        CHECK(rel_close(eval_multivariate_rhs(kExp, p).value, std::exp(0.45), 1e-14));
        CHECK(rel_close(eval_multivariate_lhs(SequenceSpec(seq::InvFactorial{}), p).value, std::exp(0.45), 1e-12));
    }
}

TEST_CASE("convergence monotonicity") {
    std::mt19937_64 rng(42);
    for (const auto& pair : standard_pairs()) {
        const auto p = std::get<LambertParams>(draw_params(Family::Lambert, pair, nullptr, rng));
        const auto loose = eval_lambert_lhs(pair.spec, p, {1e-8});
        const auto tight = eval_lambert_lhs(pair.spec, p, {1e-12});
        CAPTURE(pair.name);
        CHECK(std::abs(loose.value - tight.value) <= 5e-7 * std::abs(tight.value));
    }
}

TEST_CASE("parameter naming") {
    SeriesParams p = MultivariateParams{{1, 1}, {0.2, 0.3}, {0.5, 0.6}, 0.1};
    const auto names = named_params(p);
    REQUIRE(names.size() == 7u);
    CHECK(names[0].first == "x1");
    CHECK(names.back().first == "z");
    set_param(p, "lambda2", 0.3);
    CHECK(std::get<MultivariateParams>(p).lambda[1] == Scalar(0.3));
    CHECK_THROWS_AS(set_param(p, "mu", 0.3), Error);
    CHECK(family_of(p) == Family::Multivariate);
    CHECK(parse_family("double-sum") == Family::DoubleSum);
    CHECK_FALSE(parse_family("nope"));
}
