#include <cmath>
#include <numbers>

#include "lambertheta/verify.hpp"

namespace lambertheta {

namespace {

// Draws stay well inside the theorem domains: geometric ratios ≤ 0.75 (0.5
// for three coordinates), |λ| ≤ 0.9, arguments ≤ 0.9·R (≤ 3 for entire f).
constexpr double kRatioCap = 0.75;
constexpr double kLambdaCap = 0.9;
constexpr double kEntireCap = 3.0;

class Sampler {
public:
    explicit Sampler(std::mt19937_64& rng) : rng_(rng) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    Scalar polar(double lo, double hi) {
        return std::polar(uniform(lo, hi), uniform(-std::numbers::pi, std::numbers::pi));
    }

    /// A value v with |v·anchor| uniform in [0, cap).
    Scalar scaled_to(Scalar anchor, double cap) { return polar(0.0, cap) / anchor; }

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

private:
    std::mt19937_64& rng_;
};

double argument_cap(const ClosedForm& f) {
    const double r = f.radius();
    return std::isfinite(r) ? 0.9 * r : kEntireCap;
}

}  // namespace

SeriesParams draw_params(Family family, const SeriesPair& a, const SeriesPair* b, std::mt19937_64& rng,
                         const EvalConfig& cfg) {
    Sampler s(rng);
    const double cap = argument_cap(a.form);
    switch (family) {
        case Family::Lambert: {
            LambertParams p;
            p.x = s.polar(0.5, 1.5);
            p.y = p.x * s.polar(0.0, kRatioCap);
            p.lambda = s.polar(0.0, kLambdaCap);
            p.z = s.scaled_to(p.x, cap);
            return p;
        }
        case Family::Mehler: {
            MehlerParams p;
            p.x = s.polar(0.5, 1.5);
            p.z = s.polar(0.5, 1.5);
            p.y = p.x * s.polar(0.0, kRatioCap);
            p.w = p.z * s.polar(0.0, kRatioCap);
            p.lambda = s.polar(0.0, kLambdaCap);
            p.t = s.scaled_to(p.x * p.z, cap);
            return p;
        }
        case Family::Rogers: {
            RogersParams p;
            p.x = s.polar(0.5, 1.5);
            p.y = p.x * s.polar(0.0, kRatioCap);
            p.lambda = s.polar(0.0, kLambdaCap);
            p.t = s.scaled_to(p.x, cap);
            p.s = s.scaled_to(p.x, argument_cap(b ? b->form : a.form));
            return p;
        }
        case Family::DoubleSum: {
            DoubleSumParams p;
            p.x = s.polar(0.5, 1.5);
            p.z = p.x * s.polar(0.0, 0.3);
            p.lambda = s.polar(0.0, kLambdaCap);
            do {
                p.mu = s.polar(0.5, kLambdaCap);
            } while (std::abs(p.mu - p.lambda) < 0.05);
            const auto horizon = doublesum_outer_horizon(p.z, p.x, cfg.rel_tol);
            const double reach = std::pow(std::abs(p.mu), static_cast<double>(horizon - 1));
            p.y = p.x * s.polar(0.0, kRatioCap * reach);
            p.t = s.scaled_to(p.x, cap);
            return p;
        }
        case Family::Multivariate: {
            MultivariateParams p;
            const int m = s.pick(1, 3);
            const double ratio_cap = m == 3 ? 0.5 : kRatioCap;
            Scalar prod{1.0, 0.0};
            for (int i = 0; i < m; ++i) {
                p.x.push_back(s.polar(0.7, 1.3));
                p.y.push_back(p.x.back() * s.polar(0.0, ratio_cap));
                p.lambda.push_back(s.polar(0.0, kLambdaCap));
                prod *= p.x.back();
            }
            p.z = s.scaled_to(prod, cap);
            return p;
        }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown family");
}

}  // namespace lambertheta
