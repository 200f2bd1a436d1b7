#include "lambertheta/laurent_series.hpp"

#include <algorithm>
#include <cmath>

namespace lambertheta {

namespace {

std::optional<std::int64_t> min_truncation(std::optional<std::int64_t> a,
                                           std::optional<std::int64_t> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

// Drop coefficients above a known truncation order.
void clip_to_truncation(std::int64_t min_exp, std::vector<Scalar>& coeffs,
                        std::optional<std::int64_t> trunc) {
    if (!trunc) return;
    const std::int64_t keep = *trunc - min_exp + 1;
    if (keep < 1) {
        coeffs.assign(1, Scalar{});
        return;
    }
    if (static_cast<std::int64_t>(coeffs.size()) > keep) coeffs.resize(static_cast<std::size_t>(keep));
}

}  // namespace

LaurentSeries::LaurentSeries(std::int64_t min_exponent, std::vector<Scalar> coeffs,
                             std::optional<std::int64_t> truncation_order)
    : min_exponent_(min_exponent), coeffs_(std::move(coeffs)), truncation_order_(truncation_order) {
    if (coeffs_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "LaurentSeries needs at least one coefficient");
    }
    for (const auto& c : coeffs_) require_finite(c, "LaurentSeries coefficient");
    if (truncation_order_ && *truncation_order_ < max_exponent()) {
        throw Error(ErrorKind::InvalidArgument,
                    "truncation order below the highest stored exponent");
    }
}

LaurentSeries LaurentSeries::monomial(std::int64_t exponent, Scalar coeff) {
    return LaurentSeries(exponent, {coeff});
}

Scalar LaurentSeries::coefficient(std::int64_t exponent) const {
    if (exponent < min_exponent_ || exponent > max_exponent()) return {};
    return coeffs_[static_cast<std::size_t>(exponent - min_exponent_)];
}

LaurentSeries LaurentSeries::normalized() const {
    std::size_t lo = 0;
    std::size_t hi = coeffs_.size();
    while (lo < hi && coeffs_[lo] == Scalar{}) ++lo;
    while (hi > lo && coeffs_[hi - 1] == Scalar{}) --hi;
    if (lo == hi) {
        // Identically zero over the known window.
        return LaurentSeries(0, {Scalar{}}, truncation_order_ ? std::optional(std::max<std::int64_t>(0, *truncation_order_)) : std::nullopt);
    }
    std::vector<Scalar> c(coeffs_.begin() + static_cast<std::ptrdiff_t>(lo),
                          coeffs_.begin() + static_cast<std::ptrdiff_t>(hi));
    return LaurentSeries(min_exponent_ + static_cast<std::int64_t>(lo), std::move(c), truncation_order_);
}

Scalar LaurentSeries::evaluate(Scalar x) const {
    Scalar positive{};
    for (std::int64_t e = max_exponent(); e >= std::max<std::int64_t>(0, min_exponent_); --e) {
        positive = positive * x + coefficient(e);
    }
    if (min_exponent_ >= 0) {
        return positive * ipow(x, min_exponent_ > 0 ? min_exponent_ : 0);
    }
    // Negative part: Horner in u = 1/x from the most negative exponent up.
    const Scalar u = Scalar{1.0, 0.0} / x;
    const std::int64_t top = std::min<std::int64_t>(-1, max_exponent());
    Scalar negative{};
    for (std::int64_t e = min_exponent_; e <= top; ++e) {
        negative = negative * u + coefficient(e);
    }
    negative *= ipow(u, -top);
    return positive + negative;
}

LaurentSeries LaurentSeries::operator-() const {
    std::vector<Scalar> c(coeffs_);
    for (auto& v : c) v = -v;
    return LaurentSeries(min_exponent_, std::move(c), truncation_order_);
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    const auto trunc = min_truncation(a.truncation_order_, b.truncation_order_);
    const std::int64_t lo = std::min(a.min_exponent(), b.min_exponent());
    std::int64_t hi = std::max(a.max_exponent(), b.max_exponent());
    if (trunc) hi = std::min(hi, *trunc);
    if (hi < lo) hi = lo;
    std::vector<Scalar> c(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t e = lo; e <= hi; ++e) {
        c[static_cast<std::size_t>(e - lo)] = a.coefficient(e) + b.coefficient(e);
    }
    return LaurentSeries(lo, std::move(c), trunc ? std::optional(std::max(*trunc, hi)) : std::nullopt);
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(Scalar s, const LaurentSeries& a) {
    std::vector<Scalar> c(a.coeffs_);
    for (auto& v : c) v *= s;
    return LaurentSeries(a.min_exponent_, std::move(c), a.truncation_order_);
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    // Unknown terms of a start at trunc_a + 1; their lowest product exponent
    // with b is trunc_a + 1 + min_b.
    std::optional<std::int64_t> trunc;
    if (a.truncation_order_) trunc = *a.truncation_order_ + b.min_exponent();
    if (b.truncation_order_) {
        trunc = min_truncation(trunc, *b.truncation_order_ + a.min_exponent());
    }
    const std::int64_t lo = a.min_exponent() + b.min_exponent();
    std::vector<Scalar> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    clip_to_truncation(lo, c, trunc);
    const std::int64_t hi = lo + static_cast<std::int64_t>(c.size()) - 1;
    return LaurentSeries(lo, std::move(c), trunc ? std::optional(std::max(*trunc, hi)) : std::nullopt);
}

LaurentSeries LaurentSeries::shifted(std::int64_t k) const {
    return LaurentSeries(min_exponent_ + k, coeffs_,
                         truncation_order_ ? std::optional(*truncation_order_ + k) : std::nullopt);
}

bool approx_equal(const LaurentSeries& a, const LaurentSeries& b, double rel_tol) {
    const std::int64_t lo = std::min(a.min_exponent(), b.min_exponent());
    const std::int64_t hi = std::max(a.max_exponent(), b.max_exponent());
    double scale = 0.0;
    for (std::int64_t e = lo; e <= hi; ++e) {
        scale = std::max({scale, std::abs(a.coefficient(e)), std::abs(b.coefficient(e))});
    }
    for (std::int64_t e = lo; e <= hi; ++e) {
        if (std::abs(a.coefficient(e) - b.coefficient(e)) > rel_tol * scale) return false;
    }
    return true;
}

LaurentSeries lambda_derivative(const LaurentSeries& f, Scalar lambda) {
    std::vector<Scalar> c(f.coeffs().begin(), f.coeffs().end());
    // Incremental powers keep the monomial law exact for small exponents.
    Scalar power = ipow(lambda, f.min_exponent());
    for (auto& v : c) {
        v *= power;
        power *= lambda;
    }
    const auto trunc = f.truncation_order();
    return LaurentSeries(f.min_exponent() - 1, std::move(c),
                         trunc ? std::optional(*trunc - 1) : std::nullopt);
}

LaurentSeries lambda_derivative_pow(const LaurentSeries& f, Scalar lambda, std::int64_t n) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative derivative order");
    if (n == 0) return f;
    if (n >= 2 && lambda == Scalar{}) {
        throw Error(ErrorKind::ZeroLambdaPower, "D_lambda^n with lambda = 0 and n >= 2");
    }
    std::vector<Scalar> c(f.coeffs().begin(), f.coeffs().end());
    const std::int64_t shift = choose2(n);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::int64_t j = f.min_exponent() + static_cast<std::int64_t>(i);
        c[i] *= ipow(lambda, n * j - shift);
    }
    const auto trunc = f.truncation_order();
    return LaurentSeries(f.min_exponent() - n, std::move(c),
                         trunc ? std::optional(*trunc - n) : std::nullopt);
}

LaurentSeries theta_apply(const LaurentSeries& f, Scalar y, Scalar lambda, std::int64_t K) {
    if (K < 0) throw Error(ErrorKind::InvalidArgument, "negative operator truncation");
    if (K >= 2 && lambda == Scalar{}) {
        throw Error(ErrorKind::ZeroLambdaPower, "partial theta with lambda = 0 and K >= 2");
    }
    // λ^C(k,2) yᵏ D_λᵏ xᵉ = (λᵉy)ᵏ x^{e−k}. Forming the product per exponent
    // avoids dividing by λ^C(k,2), which underflows long before K is large.
    const auto src = f.coeffs();
    const auto lo = f.min_exponent();
    std::vector<Scalar> out(src.size() + static_cast<std::size_t>(K));
    for (std::size_t i = 0; i < src.size(); ++i) {
        const auto e = lo + static_cast<std::int64_t>(i);
        const Scalar step = ipow(lambda, e) * y;
        Scalar term = src[i];
        for (std::int64_t k = 0; k <= K; ++k) {
            out[i + static_cast<std::size_t>(K - k)] += term;
            term *= step;
        }
    }
    return LaurentSeries(lo - K, std::move(out), f.truncation_order());
}

Scalar theta_monomial(std::int64_t n, Scalar x, Scalar y, Scalar lambda, double pole_eps) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative monomial degree");
    const Scalar shifted = ipow(lambda, n) * y;
    const Scalar denom = x - shifted;
    if (std::abs(denom) <= pole_eps * std::max(std::abs(x), std::abs(shifted))) {
        throw Error(ErrorKind::PoleProximity, "x is within pole distance of lambda^n y", n);
    }
    return require_finite(ipow(x, n + 1) / denom, "theta_monomial");
}

}  // namespace lambertheta
