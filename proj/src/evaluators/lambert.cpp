#include <cmath>
#include <string>

#include "lambertheta/evaluators.hpp"
#include "summation.hpp"

namespace lambertheta {

using detail::kInf;

namespace {

void require_nonzero(Scalar v, const char* name) {
    if (v == Scalar{}) throw Error(ErrorKind::DomainViolation, std::string(name) + " must be nonzero");
}

}  // namespace

EvalResult eval_lambert_lhs(const SequenceSpec& a, const LambertParams& p, const EvalConfig& cfg) {
    require_nonzero(p.x, "x");
    detail::Accumulator acc(cfg);
    detail::ObservedRatioTail observed;
    const auto len = a.length();
    const Scalar u = p.x * p.z;
    const double u_abs = std::abs(u);
    const double lam_abs = std::abs(p.lambda);
    const double r = std::abs(p.y / p.x);

    Scalar u_pow{1.0, 0.0};
    Scalar lam_pow{1.0, 0.0};
    double lam_abs_pow = 1.0;
    for (std::int64_t n = 0;; ++n) {
        if (len && n >= static_cast<std::int64_t>(*len)) return acc.finish_exact();

        const Scalar shifted = lam_pow * p.y;
        const Scalar denom = p.x - shifted;
        if (detail::near_pole(denom, std::max(std::abs(p.x), std::abs(shifted)), cfg.pole_eps)) {
            throw Error(ErrorKind::PoleProximity, "pole at n=" + std::to_string(n), n);
        }
        const Scalar term = coefficient(a, n) * u_pow * p.x / denom;

        const double mag = std::abs(term);
        double q = 0.0;
        if (u_abs > 0.0) q = u_abs * a.ratio_bound(n) * detail::pole_factor(lam_abs_pow, lam_abs, r);
        if (std::isnan(q)) q = kInf;
        double tail = detail::ratio_tail(mag, q);
        const double seen = observed.push(mag);
        if (tail == kInf) tail = seen;

        if (acc.add(term, tail)) return acc.result(true);
        u_pow *= u;
        lam_pow *= p.lambda;
        lam_abs_pow *= lam_abs;
    }
}

EvalResult eval_lambert_rhs(const ClosedForm& f, const LambertParams& p, const EvalConfig& cfg) {
    require_nonzero(p.x, "x");
    const Scalar ratio = p.y / p.x;
    const double rho = std::abs(ratio);
    if (!(rho < 1.0)) throw Error(ErrorKind::DomainViolation, "|y|<|x| violated");

    detail::Accumulator acc(cfg);
    const Scalar u = p.x * p.z;
    const double u_abs = std::abs(u);
    const double lam_abs = std::abs(p.lambda);

    Scalar ratio_pow{1.0, 0.0};
    Scalar lam_pow{1.0, 0.0};
    double ratio_abs_pow = 1.0;
    double lam_abs_pow = 1.0;
    for (std::int64_t k = 0;; ++k) {
        const Scalar term = ratio_pow * eval_closed_form(f, lam_pow * u, cfg.pole_eps);
        // Σ_{j>k} |y/x|ʲ |f(λʲxz)| ≤ |y/x|^{k+1} M(|λ|^{k+1}|xz|) / (1 − |y/x|)
        const double tail =
            detail::bound_product(ratio_abs_pow * rho, f.majorant(lam_abs_pow * lam_abs * u_abs)) / (1.0 - rho);
        if (acc.add(term, tail)) return acc.result(true);
        ratio_pow *= ratio;
        lam_pow *= p.lambda;
        ratio_abs_pow *= rho;
        lam_abs_pow *= lam_abs;
    }
}

}  // namespace lambertheta
