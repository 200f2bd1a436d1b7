#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lambertheta/common.hpp"

namespace lambertheta {

/// Truncated Laurent series Σ cₙ xⁿ over a contiguous exponent window
/// [min_exponent, min_exponent + size - 1].
///
/// `truncation_order` is the highest exponent whose coefficient is known;
/// everything above it is unknown rather than zero. An empty optional marks
/// an exact (finitely supported) series such as a polynomial.
class LaurentSeries {
public:
    LaurentSeries(std::int64_t min_exponent, std::vector<Scalar> coeffs,
                  std::optional<std::int64_t> truncation_order = std::nullopt);

    static LaurentSeries monomial(std::int64_t exponent, Scalar coeff = {1.0, 0.0});
    static LaurentSeries constant(Scalar value) { return monomial(0, value); }
    static LaurentSeries polynomial(std::vector<Scalar> coeffs) {
        return LaurentSeries(0, std::move(coeffs));
    }

    std::int64_t min_exponent() const noexcept { return min_exponent_; }
    std::int64_t max_exponent() const noexcept {
        return min_exponent_ + static_cast<std::int64_t>(coeffs_.size()) - 1;
    }
    std::span<const Scalar> coeffs() const noexcept { return coeffs_; }
    std::optional<std::int64_t> truncation_order() const noexcept { return truncation_order_; }
    bool is_exact() const noexcept { return !truncation_order_.has_value(); }

    /// Coefficient at `exponent`; zero outside the stored window when known.
    Scalar coefficient(std::int64_t exponent) const;

    /// Strip leading and trailing exact zeros. A series that is identically
    /// zero keeps a single zero coefficient.
    LaurentSeries normalized() const;

    /// Horner on the nonnegative part plus Horner in 1/x for the negative part.
    Scalar evaluate(Scalar x) const;

    LaurentSeries operator-() const;
    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
    friend LaurentSeries operator*(Scalar s, const LaurentSeries& a);
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);

    /// Multiply by xᵏ.
    LaurentSeries shifted(std::int64_t k) const;

    /// Coefficientwise comparison over the union window, relative to the
    /// largest coefficient magnitude of either side.
    friend bool approx_equal(const LaurentSeries& a, const LaurentSeries& b, double rel_tol);

    friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;

private:
    std::int64_t min_exponent_;
    std::vector<Scalar> coeffs_;
    std::optional<std::int64_t> truncation_order_;
};

/// λ-derivative D_λ f(x) = f(λx)/x. The coefficient of xⁿ moves to xⁿ⁻¹
/// scaled by λⁿ. Throws ZeroLambdaPower only when λ = 0 meets a negative
/// exponent.
LaurentSeries lambda_derivative(const LaurentSeries& f, Scalar lambda);

/// n-fold λ-derivative via D_λⁿ f(x) = f(λⁿx) / (λ^C(n,2) xⁿ).
/// Requires λ ≠ 0 when n ≥ 2.
LaurentSeries lambda_derivative_pow(const LaurentSeries& f, Scalar lambda, std::int64_t n);

/// Partial theta operator truncated after K+1 operator terms:
/// Σ_{k=0..K} λ^C(k,2) yᵏ D_λᵏ f.
LaurentSeries theta_apply(const LaurentSeries& f, Scalar y, Scalar lambda, std::int64_t K);

/// Closed form of the partial theta operator on a monomial,
/// x^{n+1} / (x - λⁿ y). Throws PoleProximity when the denominator is
/// within `pole_eps` (relative) of zero.
Scalar theta_monomial(std::int64_t n, Scalar x, Scalar y, Scalar lambda,
                      double pole_eps = kDefaultPoleEps);

/// C(n, 2) as a signed integer.
constexpr std::int64_t choose2(std::int64_t n) noexcept { return n * (n - 1) / 2; }

}  // namespace lambertheta
