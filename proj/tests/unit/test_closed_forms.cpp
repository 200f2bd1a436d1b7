#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lambertheta/closed_forms.hpp"
#include "oracles.hpp"

using namespace lambertheta;

namespace {

/// Terms needed before the geometric tail from `spec.ratio_bound` drops below
/// 1e-15·scale at radius |u|.
std::int64_t terms_for_tail(const SequenceSpec& spec, double rho, double scale) {
    double mag = 1.0;
    for (std::int64_t n = 0; n < 20000; ++n) {
        mag = std::abs(coefficient(spec, n)) * std::pow(rho, static_cast<double>(n));
        const double q = rho * spec.ratio_bound(n);
        if (n > 0 && q < 1 && mag * q / (1 - q) <= 1e-15 * scale) return n;
    }
    return 20000;
}

std::vector<Scalar> sample_grid(double radius) {
    const double r = std::isfinite(radius) ? 0.9 * radius : 0.9 * 2.0;
    std::vector<Scalar> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(std::polar(r * (0.1 + 0.9 * (i % 5) / 4.0), 0.7 * i));
    return pts;
}

}  // namespace

TEST_CASE("pointwise values") {
    CHECK(eval_closed_form(ClosedForm(form::Exp{}), 0.0) == Scalar(1.0));
    CHECK(std::abs(eval_closed_form(ClosedForm(form::Geometric{1}), 0.5) - 2.0) < 1e-15);
    CHECK(std::abs(eval_closed_form(ClosedForm(form::LucasGF{1.0, 1.0}), 0.2) - 0.2 / 0.76) < 1e-15);
    CHECK(std::abs(eval_closed_form(ClosedForm(form::Cos{}), 0.25) - std::cos(0.5)) < 1e-15);
    CHECK(std::abs(eval_closed_form(ClosedForm(form::Sin{}), -0.25) - std::sinh(0.5) / 0.5) < 1e-15);
    CHECK(std::abs(eval_closed_form(ClosedForm(form::Log{1}), 0.0) - 1.0) < 1e-15);
}

TEST_CASE("radius enforcement") {
    CHECK_THROWS_AS(eval_closed_form(ClosedForm(form::Geometric{1}), 1.0), Error);
    CHECK(std::isinf(ClosedForm(form::Exp{}).radius()));
    CHECK(ClosedForm(form::LucasGF{1.0, 1.0}).radius() == doctest::Approx(1.0 / 1.6180339887498949));
}

TEST_CASE("series_residual examples") {
    CHECK(series_residual(ClosedForm(form::Exp{}), 0.3, 25) < 1e-14);
    CHECK(series_residual(ClosedForm(form::Cos{}), 0.0, 0) == 0.0);
    // The residual is exactly the geometric tail 0.9^201/0.1 ≈ 6.3e-9.
    const double tail = std::pow(0.9, 201) / 0.1;
    CHECK(std::abs(series_residual(ClosedForm(form::Geometric{1}), 0.9, 200) - tail) < 1e-6 * tail);
}

TEST_CASE("sign variants") {
    for (int sigma : {1, -1}) {
        const ClosedForm log_form(form::Log{sigma});
        CHECK(paired_spec(log_form) == SequenceSpec(seq::AltSignOverNPlus1{sigma}));
        for (double u : {0.1, -0.35, 0.8}) {
            const Scalar v = sigma * u;
            const Scalar displayed = -std::log(1.0 - v) / v;
            CHECK(std::abs(eval_closed_form(log_form, u) - displayed) < 1e-10);
            const Scalar partial =
                oracle::partial_sum([sigma](int n) { return Scalar(std::pow(sigma, n) / (n + 1.0)); }, u, 400);
            CHECK(std::abs(partial - displayed) < 1e-10);
        }
        CHECK(paired_spec(ClosedForm(form::Geometric{sigma})) == SequenceSpec(seq::AltSign{sigma}));
    }
}

TEST_CASE("pairing soundness on every registered pair") {
    std::vector<SeriesPair> pairs = standard_pairs();
    for (int d = 1; d <= 4; ++d) {
        pairs.push_back(find_pair("polytopic-d" + std::to_string(d) + "-minus"));
        pairs.push_back(find_pair("polytopic-d" + std::to_string(d) + "-plus"));
    }
    pairs.push_back(find_pair("lucas-s2-t1"));
    pairs.push_back(find_pair("lucas-s1-t2"));
    for (const auto& pair : pairs) {
        CAPTURE(pair.name);
        CHECK(is_registered_pair(pair.spec, pair.form));
        CHECK(paired_form(pair.spec) == pair.form);
        for (Scalar u : sample_grid(pair.form.radius())) {
            const double scale = std::max(1.0, std::abs(eval_closed_form(pair.form, u)));
            const auto N = terms_for_tail(pair.spec, std::abs(u), scale);
            CHECK(series_residual(pair.form, u, N) < 1e-10 * scale);
        }
    }
}

TEST_CASE("LucasGF three-way agreement") {
    for (auto [s, t] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {1.0, 2.0}}) {
        const ClosedForm f(form::LucasGF{s, t});
        for (Scalar u : sample_grid(f.radius())) {
            const Scalar rational = u / (1.0 - s * u - t * u * u);
            const Scalar partial_fraction = lucas_generating_check(s, t, u);
            CHECK(std::abs(eval_closed_form(f, u) - rational) < 1e-10 * std::max(1.0, std::abs(rational)));
            CHECK(std::abs(partial_fraction - rational) < 1e-10 * std::max(1.0, std::abs(rational)));
        }
    }
}

TEST_CASE("registry") {
    CHECK(find_pair("geom-minus").form == ClosedForm(form::Geometric{1}));
    CHECK(find_pair("geom-plus").form == ClosedForm(form::Geometric{-1}));
    CHECK(find_pair("lucas-s1-t1").spec == SequenceSpec(seq::Lucas{1.0, 1.0}));
    CHECK(standard_pairs().size() == 8u);
    CHECK_THROWS_AS(find_pair("no-such"), Error);
    CHECK_THROWS_AS(find_pair("table:/nonexistent/file"), Error);
}

TEST_CASE("table files") {
    const auto path = std::filesystem::temp_directory_path() / "lambertheta_table_test.txt";
    {
        std::ofstream out(path);
        out << "# coefficients\n1\n0.5-0.25i\n\n2i  # trailing comment\n";
    }
    const auto values = load_table(path);
    REQUIRE(values.size() == 3u);
    CHECK(values[1] == Scalar(0.5, -0.25));
    CHECK(values[2] == Scalar(0.0, 2.0));
    const auto pair = find_pair("table:" + path.string());
    CHECK(std::abs(eval_closed_form(pair.form, 0.5) - (1.0 + Scalar(0.5, -0.25) * 0.5 + Scalar(0, 2) * 0.25)) <
          1e-15);
    std::filesystem::remove(path);
}
