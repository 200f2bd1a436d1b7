#include <cmath>
#include <functional>
#include <string>

#include "evaluators/summation.hpp"
#include "lambertheta/verify.hpp"

namespace lambertheta {

namespace {

constexpr double kDirectTol = 1e-17;
constexpr std::int64_t kDirectCap = 1'000'000;

/// Σ_{n≥1} term(n, qⁿ) until the remainder bound drops below 1e-17 relative.
/// Every classical summand is at most (n+1)|q|ⁿ/(1−|q|)² in modulus.
EvalResult direct_sum(Scalar q, const std::function<Scalar(std::int64_t, Scalar)>& term) {
    const double rho = std::abs(q);
    EvalResult out{};
    if (rho == 0.0) {
        out.converged = true;
        return out;
    }
    const double c = 1.0 / ((1.0 - rho) * (1.0 - rho));
    Scalar sum{};
    Scalar qn{1.0, 0.0};
    for (std::int64_t n = 1; n <= kDirectCap; ++n) {
        qn *= q;
        sum += term(n, qn);
        out.terms_used = n;
        // Σ_{m>n} (m+1)ρᵐ in closed form.
        const double rn = std::pow(rho, static_cast<double>(n + 1));
        out.tail_estimate = c * rn * (static_cast<double>(n + 1) * (1.0 - rho) + 1.0) / ((1.0 - rho) * (1.0 - rho));
        if (out.tail_estimate <= kDirectTol * std::max(std::abs(sum), 1e-300)) {
            out.converged = true;
            break;
        }
    }
    out.value = sum;
    return out;
}

Scalar alt(std::int64_t n) { return {(n & 1) ? 1.0 : -1.0, 0.0}; }  // (−1)^{n−1}

}  // namespace

IdentityReport check_classical(int id, Scalar q, double tol) {
    if (id < 1 || id > kClassicalCount) {
        throw Error(ErrorKind::InvalidArgument, "classical identity id must be 1..5");
    }
    if (!(std::abs(q) < 1.0)) throw Error(ErrorKind::InvalidArgument, "classical identities need |q| < 1");

    const Scalar one{1.0, 0.0};
    auto lambert = [&](auto coeff) {
        return direct_sum(q, [&](std::int64_t n, Scalar qn) { return coeff(n) * qn / (one - qn); });
    };
    EvalResult lhs, rhs;
    switch (id) {
        case 1:
            lhs = lambert([](std::int64_t n) { return alt(n); });
            rhs = direct_sum(q, [&](std::int64_t, Scalar qn) { return qn / (one + qn); });
            break;
        case 2:
            lhs = lambert([](std::int64_t n) { return Scalar(static_cast<double>(n)); });
            rhs = direct_sum(q, [&](std::int64_t, Scalar qn) { return qn / ((one - qn) * (one - qn)); });
            break;
        case 3:
            lhs = lambert([](std::int64_t n) { return alt(n) * static_cast<double>(n); });
            rhs = direct_sum(q, [&](std::int64_t, Scalar qn) { return qn / ((one + qn) * (one + qn)); });
            break;
        case 4:
            lhs = lambert([](std::int64_t n) { return Scalar(1.0 / static_cast<double>(n)); });
            rhs = direct_sum(q, [&](std::int64_t, Scalar qn) { return -log1p(-qn); });
            break;
        default:
            lhs = lambert([](std::int64_t n) { return alt(n) / static_cast<double>(n); });
            rhs = direct_sum(q, [&](std::int64_t, Scalar qn) { return log1p(qn); });
            break;
    }

    IdentityReport r;
    r.family = "classical";
    r.params = {{"q", q}};
    r.spec = "identity-" + std::to_string(id);
    r.form = "direct";
    r.tol = tol;
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_gap = std::abs(lhs.value - rhs.value);
    r.rel_gap = r.abs_gap / std::max(1.0, std::abs(lhs.value));
    if (!lhs.converged || !rhs.converged) {
        r.verdict = Verdict::Fail;
        r.reason = "direct sum not converged";
    } else if (!(r.rel_gap <= tol)) {
        r.verdict = Verdict::Fail;
        r.reason = "rel_gap above tolerance";
    } else {
        r.verdict = Verdict::Pass;
    }
    return r;
}

namespace {

IdentityReport corollary_report(const LambertParams& p, std::string spec, std::string form,
                                const CheckOptions& opts) {
    IdentityReport r;
    r.family = to_string(Family::Lambert);
    r.params = named_params(SeriesParams{p});
    r.spec = std::move(spec);
    r.form = std::move(form);
    r.tol = opts.tol;
    return r;
}

template <typename Lhs, typename Rhs>
void finish_corollary(IdentityReport& r, Lhs&& lhs, Rhs&& rhs) {
    try {
        r.lhs = lhs();
        r.rhs = rhs();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::MaxTermsExceeded) {
            r.verdict = Verdict::Fail;
            r.reason = e.what();
            return;
        }
        r.verdict = Verdict::Skipped;
        r.reason = e.what();
        return;
    }
    r.abs_gap = std::abs(r.lhs->value - r.rhs->value);
    r.rel_gap = r.abs_gap / std::max(1.0, std::abs(r.lhs->value));
    const bool ok = r.lhs->converged && r.rhs->converged && r.rel_gap <= r.tol;
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    if (!ok) r.reason = "corollary mismatch";
}

}  // namespace

IdentityReport check_lucas_corollary(Scalar s, Scalar t, const LambertParams& p, const CheckOptions& opts) {
    const SequenceSpec spec(seq::Lucas{s, t});
    auto r = corollary_report(p, spec.label(), "partial-fractions", opts);
    finish_corollary(
        r, [&] { return eval_lambert_lhs(spec, p, opts.eval); },
        [&] {
            const auto roots = lucas_roots(s, t);
            const ClosedForm geom(form::Geometric{1});
            const auto a = eval_lambert_rhs(geom, {p.x, p.y, roots.phi * p.z, p.lambda}, opts.eval);
            const auto b = eval_lambert_rhs(geom, {p.x, p.y, roots.varphi * p.z, p.lambda}, opts.eval);
            const Scalar gap = roots.phi - roots.varphi;
            return EvalResult{(a.value - b.value) / gap, a.terms_used + b.terms_used,
                              (a.tail_estimate + b.tail_estimate) / std::abs(gap), a.converged && b.converged};
        });
    return r;
}

IdentityReport check_polytopic_corollary(int d, int sign, const LambertParams& p, const CheckOptions& opts) {
    const SequenceSpec spec(seq::Polytopic{d, sign});
    auto r = corollary_report(p, spec.label(), "sum (y/x)^k v/(1-v)^(d+1)", opts);
    finish_corollary(
        r, [&] { return eval_lambert_lhs(spec, p, opts.eval); },
        [&] {
            const Scalar ratio = p.y / p.x;
            const double rho = std::abs(ratio);
            if (!(rho < 1.0)) throw Error(ErrorKind::DomainViolation, "|y|<|x| violated");
            const Scalar u = p.x * p.z;
            const double lam = std::abs(p.lambda);
            detail::Accumulator acc(opts.eval);
            Scalar ratio_pow{1.0, 0.0}, lam_pow{1.0, 0.0};
            double bound_pow = rho, lam_next = lam * std::abs(u);
            const Scalar one{1.0, 0.0};
            for (;;) {
                const Scalar v = static_cast<double>(sign) * lam_pow * u;
                const Scalar term = ratio_pow * v / ipow(one - v, d + 1);
                const double major = lam_next < 1.0 ? lam_next / std::pow(1.0 - lam_next, d + 1) : detail::kInf;
                const double tail = detail::bound_product(bound_pow, major) / (1.0 - rho);
                if (acc.add(term, tail)) return acc.result(true);
                ratio_pow *= ratio;
                lam_pow *= p.lambda;
                bound_pow *= rho;
                lam_next *= lam;
            }
        });
    return r;
}

}  // namespace lambertheta
