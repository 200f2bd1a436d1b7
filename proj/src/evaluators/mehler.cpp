#include <cmath>
#include <string>

#include "lambertheta/evaluators.hpp"
#include "summation.hpp"

namespace lambertheta {

using detail::kInf;

EvalResult eval_mehler_lhs(const SequenceSpec& a, const MehlerParams& p, const EvalConfig& cfg) {
    if (p.x == Scalar{} || p.z == Scalar{}) {
        throw Error(ErrorKind::DomainViolation, "x and z must be nonzero");
    }
    detail::Accumulator acc(cfg);
    detail::ObservedRatioTail observed;
    const auto len = a.length();
    const Scalar u = p.t * p.x * p.z;
    const double u_abs = std::abs(u);
    const double lam_abs = std::abs(p.lambda);
    const double ry = std::abs(p.y / p.x);
    const double rw = std::abs(p.w / p.z);

    Scalar u_pow{1.0, 0.0};
    Scalar lam_pow{1.0, 0.0};
    double lam_abs_pow = 1.0;
    for (std::int64_t n = 0;; ++n) {
        if (len && n >= static_cast<std::int64_t>(*len)) return acc.finish_exact();

        const Scalar sy = lam_pow * p.y;
        const Scalar sw = lam_pow * p.w;
        const Scalar dx = p.x - sy;
        const Scalar dz = p.z - sw;
        if (detail::near_pole(dx, std::max(std::abs(p.x), std::abs(sy)), cfg.pole_eps) ||
            detail::near_pole(dz, std::max(std::abs(p.z), std::abs(sw)), cfg.pole_eps)) {
            throw Error(ErrorKind::PoleProximity, "pole at n=" + std::to_string(n), n);
        }
        const Scalar term = coefficient(a, n) * u_pow * (p.x / dx) * (p.z / dz);

        const double mag = std::abs(term);
        double q = 0.0;
        if (u_abs > 0.0) {
            q = u_abs * a.ratio_bound(n) * detail::pole_factor(lam_abs_pow, lam_abs, ry) *
                detail::pole_factor(lam_abs_pow, lam_abs, rw);
        }
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

EvalResult eval_mehler_rhs(const ClosedForm& f, const MehlerParams& p, const EvalConfig& cfg) {
    if (p.x == Scalar{} || p.z == Scalar{}) {
        throw Error(ErrorKind::DomainViolation, "x and z must be nonzero");
    }
    const Scalar ry = p.y / p.x;
    const Scalar rw = p.w / p.z;
    if (!(std::abs(ry) < 1.0)) throw Error(ErrorKind::DomainViolation, "|y|<|x| violated");
    if (!(std::abs(rw) < 1.0)) throw Error(ErrorKind::DomainViolation, "|w|<|z| violated");
    const double rho = std::max(std::abs(ry), std::abs(rw));

    detail::Accumulator acc(cfg);
    const Scalar u = p.t * p.x * p.z;
    const double u_abs = std::abs(u);
    const double lam_abs = std::abs(p.lambda);

    // Shell d collects k + n = d: f(λᵈtxz) Σₖ (w/z)ᵏ (y/x)^{d−k}.
    std::vector<Scalar> ry_pow{Scalar{1.0, 0.0}};
    std::vector<Scalar> rw_pow{Scalar{1.0, 0.0}};
    Scalar lam_pow{1.0, 0.0};
    double lam_abs_pow = 1.0;
    for (std::int64_t d = 0;; ++d) {
        if (d > 0) {
            ry_pow.push_back(ry_pow.back() * ry);
            rw_pow.push_back(rw_pow.back() * rw);
        }
        Scalar weight{};
        for (std::int64_t k = 0; k <= d; ++k) weight += rw_pow[static_cast<std::size_t>(k)] * ry_pow[static_cast<std::size_t>(d - k)];
        const Scalar term = weight * eval_closed_form(f, lam_pow * u, cfg.pole_eps);

        lam_abs_pow *= lam_abs;
        const double tail =
            detail::bound_product(detail::shell_count_tail(2, rho, d), f.majorant(lam_abs_pow * u_abs));
        if (acc.add(term, tail, d + 1)) return acc.result(true);
        lam_pow *= p.lambda;
    }
}

}  // namespace lambertheta
