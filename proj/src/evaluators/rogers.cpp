#include <cmath>
#include <string>
#include <vector>

#include "lambertheta/evaluators.hpp"
#include "summation.hpp"

namespace lambertheta {

namespace {

/// Lazily extended list cₙ·vⁿ of one Rogers factor, zero past a table's end.
class WeightedCoefficients {
public:
    WeightedCoefficients(const SequenceSpec& spec, Scalar v) : spec_(spec), v_(v), len_(spec.length()) {}

    Scalar operator[](std::int64_t n) {
        while (static_cast<std::int64_t>(cache_.size()) <= n) {
            const auto m = static_cast<std::int64_t>(cache_.size());
            const Scalar c = (len_ && m >= static_cast<std::int64_t>(*len_)) ? Scalar{} : coefficient(spec_, m);
            cache_.push_back(c * pow_);
            pow_ *= v_;
        }
        return cache_[static_cast<std::size_t>(n)];
    }

    std::optional<std::size_t> length() const { return len_; }

private:
    const SequenceSpec& spec_;
    Scalar v_;
    std::optional<std::size_t> len_;
    std::vector<Scalar> cache_;
    Scalar pow_{1.0, 0.0};
};

}  // namespace

EvalResult eval_rogers_lhs(const SequenceSpec& a, const SequenceSpec& b, const RogersParams& p,
                           const EvalConfig& cfg) {
    if (p.x == Scalar{}) throw Error(ErrorKind::DomainViolation, "x must be nonzero");
    detail::Accumulator acc(cfg);
    detail::ObservedRatioTail observed;
    WeightedCoefficients wa(a, p.t * p.x);
    WeightedCoefficients wb(b, p.s * p.x);

    // With two finite tables every shell past (La−1)+(Lb−1) is empty.
    std::optional<std::int64_t> last_shell;
    if (a.length() && b.length()) {
        last_shell = static_cast<std::int64_t>(*a.length() + *b.length()) - 2;
    }

    Scalar lam_pow{1.0, 0.0};
    for (std::int64_t d = 0;; ++d) {
        if (last_shell && d > *last_shell) return acc.finish_exact();

        const Scalar shifted = lam_pow * p.y;
        const Scalar denom = p.x - shifted;
        if (detail::near_pole(denom, std::max(std::abs(p.x), std::abs(shifted)), cfg.pole_eps)) {
            throw Error(ErrorKind::PoleProximity, "pole at n=" + std::to_string(d), d);
        }
        Scalar conv{};
        for (std::int64_t n = 0; n <= d; ++n) conv += wa[n] * wb[d - n];
        const Scalar term = conv * p.x / denom;

        const double tail = observed.push(std::abs(term));
        if (acc.add(term, tail, d + 1)) return acc.result(true);
        lam_pow *= p.lambda;
    }
}

EvalResult eval_rogers_rhs(const ClosedForm& f, const ClosedForm& g, const RogersParams& p,
                           const EvalConfig& cfg) {
    if (p.x == Scalar{}) throw Error(ErrorKind::DomainViolation, "x must be nonzero");
    const Scalar ratio = p.y / p.x;
    const double rho = std::abs(ratio);
    if (!(rho < 1.0)) throw Error(ErrorKind::DomainViolation, "|y|<|x| violated");

    detail::Accumulator acc(cfg);
    const Scalar u1 = p.t * p.x;
    const Scalar u2 = p.s * p.x;
    const double lam_abs = std::abs(p.lambda);

    Scalar ratio_pow{1.0, 0.0};
    Scalar lam_pow{1.0, 0.0};
    double ratio_abs_pow = 1.0;
    double lam_abs_pow = 1.0;
    for (std::int64_t k = 0;; ++k) {
        const Scalar term = ratio_pow * eval_closed_form(f, lam_pow * u1, cfg.pole_eps) *
                            eval_closed_form(g, lam_pow * u2, cfg.pole_eps);
        lam_abs_pow *= lam_abs;
        const double m = f.majorant(lam_abs_pow * std::abs(u1)) * g.majorant(lam_abs_pow * std::abs(u2));
        const double tail = detail::bound_product(ratio_abs_pow * rho, m) / (1.0 - rho);
        if (acc.add(term, tail)) return acc.result(true);
        ratio_pow *= ratio;
        lam_pow *= p.lambda;
        ratio_abs_pow *= rho;
    }
}

}  // namespace lambertheta
