#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "lambertheta/evaluators.hpp"
#include "summation.hpp"

namespace lambertheta {

using detail::kInf;

namespace {

void require_shape(const MultivariateParams& p) {
    if (p.x.empty() || p.x.size() != p.y.size() || p.x.size() != p.lambda.size()) {
        throw Error(ErrorKind::InvalidArgument, "multivariate x, y, lambda need equal length >= 1");
    }
    for (auto v : p.x) {
        if (v == Scalar{}) throw Error(ErrorKind::DomainViolation, "every x_i must be nonzero");
    }
}

LambertParams as_lambert(const MultivariateParams& p) { return {p.x[0], p.y[0], p.z, p.lambda[0]}; }

}  // namespace

EvalResult eval_multivariate_lhs(const SequenceSpec& a, const MultivariateParams& p, const EvalConfig& cfg) {
    require_shape(p);
    if (p.x.size() == 1) return eval_lambert_lhs(a, as_lambert(p), cfg);

    const std::size_t m = p.x.size();
    Scalar prod{1.0, 0.0};
    for (auto v : p.x) prod *= v;
    const Scalar u = prod * p.z;
    const double u_abs = std::abs(u);

    detail::Accumulator acc(cfg);
    detail::ObservedRatioTail observed;
    const auto len = a.length();
    std::vector<Scalar> lam_pow(m, Scalar{1.0, 0.0});
    std::vector<double> lam_abs_pow(m, 1.0);
    Scalar u_pow{1.0, 0.0};
    for (std::int64_t n = 0;; ++n) {
        if (len && n >= static_cast<std::int64_t>(*len)) return acc.finish_exact();

        Scalar factor{1.0, 0.0};
        double q = u_abs > 0.0 ? u_abs * a.ratio_bound(n) : 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const Scalar shifted = lam_pow[i] * p.y[i];
            const Scalar denom = p.x[i] - shifted;
            if (detail::near_pole(denom, std::max(std::abs(p.x[i]), std::abs(shifted)), cfg.pole_eps)) {
                throw Error(ErrorKind::PoleProximity,
                            "pole at n=" + std::to_string(n) + " in coordinate " + std::to_string(i + 1), n);
            }
            factor *= p.x[i] / denom;
            if (q > 0.0) {
                q *= detail::pole_factor(lam_abs_pow[i], std::abs(p.lambda[i]), std::abs(p.y[i] / p.x[i]));
            }
        }
        if (std::isnan(q)) q = kInf;
        const Scalar term = coefficient(a, n) * u_pow * factor;

        const double mag = std::abs(term);
        double tail = detail::ratio_tail(mag, q);
        const double seen = observed.push(mag);
        if (tail == kInf) tail = seen;
        if (acc.add(term, tail)) return acc.result(true);

        u_pow *= u;
        for (std::size_t i = 0; i < m; ++i) {
            lam_pow[i] *= p.lambda[i];
            lam_abs_pow[i] *= std::abs(p.lambda[i]);
        }
    }
}

EvalResult eval_multivariate_rhs(const ClosedForm& f, const MultivariateParams& p, const EvalConfig& cfg) {
    require_shape(p);
    if (p.x.size() == 1) return eval_lambert_rhs(f, as_lambert(p), cfg);

    const std::size_t m = p.x.size();
    Scalar prod{1.0, 0.0};
    std::vector<Scalar> ratio(m);
    double rho = 0.0;
    double lam_max = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        prod *= p.x[i];
        ratio[i] = p.y[i] / p.x[i];
        if (!(std::abs(ratio[i]) < 1.0)) {
            const auto k = std::to_string(i + 1);
            throw Error(ErrorKind::DomainViolation, "|y" + k + "|<|x" + k + "| violated");
        }
        rho = std::max(rho, std::abs(ratio[i]));
        lam_max = std::max(lam_max, std::abs(p.lambda[i]));
    }
    const Scalar u = prod * p.z;
    const double u_abs = std::abs(u);

    // ratio_pow[i][k] = (yᵢ/xᵢ)ᵏ and lam_pow[i][k] = λᵢᵏ, extended one degree per shell.
    std::vector<std::vector<Scalar>> ratio_pow(m, {Scalar{1.0, 0.0}});
    std::vector<std::vector<Scalar>> lam_pow(m, {Scalar{1.0, 0.0}});

    detail::Accumulator acc(cfg);
    double lam_max_pow = 1.0;
    for (std::int64_t d = 0;; ++d) {
        if (d > 0) {
            for (std::size_t i = 0; i < m; ++i) {
                ratio_pow[i].push_back(ratio_pow[i].back() * ratio[i]);
                lam_pow[i].push_back(lam_pow[i].back() * p.lambda[i]);
            }
        }
        Scalar shell{};
        std::int64_t count = 0;
        // Walk every composition k₁ + … + k_m = d.
        std::function<void(std::size_t, std::int64_t, Scalar, Scalar)> walk =
            [&](std::size_t i, std::int64_t left, Scalar weight, Scalar scale) {
                if (i + 1 == m) {
                    const auto k = static_cast<std::size_t>(left);
                    shell += weight * ratio_pow[i][k] *
                             eval_closed_form(f, scale * lam_pow[i][k] * u, cfg.pole_eps);
                    ++count;
                    return;
                }
                for (std::int64_t k = 0; k <= left; ++k) {
                    const auto kk = static_cast<std::size_t>(k);
                    walk(i + 1, left - k, weight * ratio_pow[i][kk], scale * lam_pow[i][kk]);
                }
            };
        walk(0, d, Scalar{1.0, 0.0}, Scalar{1.0, 0.0});

        lam_max_pow *= lam_max;
        const double tail = detail::bound_product(detail::shell_count_tail(static_cast<int>(m), rho, d),
                                                  f.majorant(lam_max_pow * u_abs));
        if (acc.add(shell, tail, count)) return acc.result(true);
    }
}

}  // namespace lambertheta
