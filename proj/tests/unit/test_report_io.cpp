#include <doctest.h>

#include <limits>

#include "lambertheta/report_io.hpp"

using namespace lambertheta;

TEST_CASE("JSON round trip is bit for bit") {
    auto reports = sweep(Family::Mehler, standard_pairs(), RandomCloud{3, 5});
    reports.push_back(check_identity(LambertParams{1, 1, 0.3, 0.5}, find_pair("geom-minus"), nullptr));
    reports.push_back(check_classical(3, Scalar(0.2, 0.1)));

    IdentityReport odd;
    odd.family = "lambert";
    odd.spec = "quote\"and\\slash";
    odd.params = {{"x", Scalar(1.0 / 3.0, -2e-300)}};
    odd.lhs = EvalResult{{0.1, 0.2}, 7, std::numeric_limits<double>::infinity(), false};
    odd.abs_gap = -std::numeric_limits<double>::infinity();
    odd.verdict = Verdict::Fail;
    odd.flags = {"a", "b"};
    reports.push_back(odd);

    const auto text = reports_to_json(reports);
    const auto back = reports_from_json(text);
    REQUIRE(back.size() == reports.size());
    for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i] == reports[i]);

    const auto single = reports_from_json(report_to_json(reports[0]));
    REQUIRE(single.size() == 1u);
    CHECK(single[0] == reports[0]);
}

TEST_CASE("JSON layout") {
    const auto r = check_identity(LambertParams{1, 0.2, 0.3, 0.5}, find_pair("geom-minus"), nullptr);
    const auto text = reports_to_json({r, r});
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    for (const char* key : {"\"family\"", "\"spec\"", "\"form\"", "\"params\"", "\"lhs\"", "\"rhs\"", "\"abs_gap\"",
                            "\"rel_gap\"", "\"verdict\"", "\"flags\"", "\"terms\"", "\"tail\""}) {
        CHECK(text.find(key) != std::string::npos);
    }
}

TEST_CASE("malformed JSON") {
    CHECK_THROWS_AS(reports_from_json("{"), Error);
    CHECK_THROWS_AS(reports_from_json("{\"family\": 1}"), Error);
    CHECK_THROWS_AS(reports_from_json("[]").at(0), std::out_of_range);
}

TEST_CASE("CSV and text") {
    const auto reports = sweep(Family::Multivariate, {find_pair("exp")}, RandomCloud{2, 1});
    const auto csv = reports_to_csv(reports);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.find("x1=") != std::string::npos);
    CHECK(csv.find(";y1=") != std::string::npos);

    const auto skipped = check_identity(LambertParams{1, 1, 0.3, 0.5}, find_pair("geom-minus"), nullptr);
    const auto line = report_to_text(skipped);
    CHECK(line.rfind("SKIPPED", 0) == 0);
    CHECK(line.find("[x≠y violated]") != std::string::npos);
}
