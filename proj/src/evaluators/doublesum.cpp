#include <cmath>
#include <string>
#include <vector>

#include "lambertheta/evaluators.hpp"
#include "summation.hpp"

namespace lambertheta {

namespace {

void require_nonzero_x(const DoubleSumParams& p) {
    if (p.x == Scalar{}) throw Error(ErrorKind::DomainViolation, "x must be nonzero");
}

}  // namespace

EvalResult eval_doublesum_lhs(const SequenceSpec& a, const DoubleSumParams& p, const EvalConfig& cfg) {
    require_nonzero_x(p);
    detail::Accumulator outer(cfg);
    detail::ObservedRatioTail outer_tail;
    const auto len = a.length();
    const Scalar tx = p.t * p.x;

    // Outer term n is aₙ (tx)ⁿ · x Σₖ ρₙᵏ / (μᵏx − λⁿy) with ρₙ = z μ^{n+1} / x.
    EvalConfig inner_cfg = cfg;
    inner_cfg.rel_tol = cfg.rel_tol * 1e-2;
    Scalar tx_pow{1.0, 0.0};
    Scalar lam_pow{1.0, 0.0};
    Scalar mu_pow{p.mu};
    for (std::int64_t n = 0;; ++n) {
        if (len && n >= static_cast<std::int64_t>(*len)) return outer.finish_exact();

        const Scalar c = lam_pow * p.y;
        const Scalar rho = p.z * mu_pow / p.x;
        detail::Accumulator inner(inner_cfg);
        detail::ObservedRatioTail inner_tail;
        Scalar rho_pow{1.0, 0.0};
        Scalar mux{p.x};
        for (std::int64_t k = 0;; ++k) {
            const Scalar denom = mux - c;
            if (detail::near_pole(denom, std::max(std::abs(mux), std::abs(c)), cfg.pole_eps)) {
                throw Error(ErrorKind::PoleProximity,
                            "pole at n=" + std::to_string(n) + ", k=" + std::to_string(k), n);
            }
            const Scalar term = rho_pow / denom;
            if (inner.add(term, inner_tail.push(std::abs(term)))) break;
            rho_pow *= rho;
            mux *= p.mu;
        }

        const Scalar term = coefficient(a, n) * tx_pow * p.x * inner.value();
        if (outer.add(term, outer_tail.push(std::abs(term)), inner.terms())) return outer.result(true);
        tx_pow *= tx;
        lam_pow *= p.lambda;
        mu_pow *= p.mu;
    }
}

EvalResult eval_doublesum_rhs(const ClosedForm& f, const DoubleSumParams& p, const EvalConfig& cfg) {
    require_nonzero_x(p);
    const Scalar zx = p.z / p.x;
    const double r = std::abs(zx);
    const std::int64_t horizon = doublesum_outer_horizon(p.z, p.x, cfg.rel_tol);
    const auto slices = static_cast<std::size_t>(horizon);

    // Slice i is the Lambert right-hand side at x' = μⁱx, z' = t, weighted by (z/x)ⁱ.
    std::vector<Scalar> weight(slices), ratio(slices), base(slices), ratio_pow(slices), lam_pow(slices);
    double ratio_max = 0.0;
    Scalar w{1.0, 0.0};
    Scalar mux{p.x};
    for (std::size_t i = 0; i < slices; ++i) {
        weight[i] = w;
        ratio[i] = p.y / mux;
        base[i] = p.t * mux;
        ratio_max = std::max(ratio_max, std::abs(ratio[i]));
        w *= zx;
        mux *= p.mu;
    }
    if (!(ratio_max < 1.0)) throw Error(ErrorKind::DomainViolation, "|y|<|μ^I x| violated");

    const double rho = std::max(r, ratio_max);
    const double nu = std::max(std::abs(p.lambda), std::abs(p.mu));
    const double tx_abs = std::abs(p.t * p.x);
    // Slices i ≥ I are dropped; each is roughly (z/x)ⁱ f(μⁱtx)/(1 − y/(μⁱx)).
    const double mu_reach = std::pow(std::abs(p.mu), static_cast<double>(horizon)) * tx_abs;
    const double truncation = detail::bound_product(std::pow(r, static_cast<double>(horizon)) / (1.0 - r),
                                                    f.majorant(mu_reach) / (1.0 - ratio_max));

    detail::Accumulator acc(cfg);
    double nu_pow = 1.0;
    for (std::int64_t d = 0;; ++d) {
        const auto top = static_cast<std::size_t>(std::min<std::int64_t>(d, horizon - 1));
        if (static_cast<std::size_t>(d) < slices) {
            ratio_pow[top] = Scalar{1.0, 0.0};
            lam_pow[top] = Scalar{1.0, 0.0};
        }
        Scalar shell{};
        for (std::size_t i = 0; i <= top; ++i) {
            shell += weight[i] * ratio_pow[i] * eval_closed_form(f, lam_pow[i] * base[i], cfg.pole_eps);
            ratio_pow[i] *= ratio[i];
            lam_pow[i] *= p.lambda;
        }
        nu_pow *= nu;
        const double tail =
            detail::bound_product(detail::shell_count_tail(2, rho, d), f.majorant(nu_pow * tx_abs)) + truncation;
        if (acc.add(shell, tail, static_cast<std::int64_t>(top) + 1)) return acc.result(true);
    }
}

}  // namespace lambertheta
