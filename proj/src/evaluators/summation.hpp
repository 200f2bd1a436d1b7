#pragma once

// Shared machinery for the series evaluators: a compensated accumulator that
// applies the stopping rule, and tail models.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

#include "lambertheta/common.hpp"
#include "lambertheta/evaluators.hpp"

namespace lambertheta::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kValueFloor = 1e-300;
inline constexpr int kConsecutiveSmall = 3;

/// Neumaier summation per component, plus the stopping rule: the last
/// kConsecutiveSmall terms were below rel_tol·|partial| and the tail estimate
/// is below rel_tol·|partial| (absolute rel_tol when the partial is ~0).
class Accumulator {
public:
    explicit Accumulator(const EvalConfig& cfg) : cfg_(cfg) {}

    /// Adds a term that cost `cost` summand evaluations. Returns true once the
    /// stopping rule holds. Throws MaxTermsExceeded when the budget runs out.
    bool add(Scalar term, double tail, std::int64_t cost = 1) {
        require_finite(term, "series term");
        add_component(sum_re_, comp_re_, term.real());
        add_component(sum_im_, comp_im_, term.imag());
        terms_ += cost;
        tail_ = tail;

        const double threshold = scale() * cfg_.rel_tol;
        small_run_ = std::abs(term) <= threshold ? small_run_ + 1 : 0;
        if (small_run_ >= kConsecutiveSmall && tail_ <= threshold) return true;
        if (terms_ >= cfg_.max_terms) {
            throw Error(ErrorKind::MaxTermsExceeded, "series did not converge within max_terms")
                .with_partial(result(false));
        }
        return false;
    }

    /// The series is known to end here (finite table): the tail is exactly 0.
    EvalResult finish_exact() {
        tail_ = 0.0;
        return result(true);
    }

    EvalResult result(bool converged) const { return {value(), terms_, tail_, converged}; }

    Scalar value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }
    std::int64_t terms() const { return terms_; }

private:
    static void add_component(double& sum, double& comp, double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }

    double scale() const {
        const double m = std::abs(value());
        return m < kValueFloor ? 1.0 : m;
    }

    EvalConfig cfg_;
    double sum_re_ = 0.0, comp_re_ = 0.0, sum_im_ = 0.0, comp_im_ = 0.0;
    std::int64_t terms_ = 0;
    double tail_ = kInf;
    int small_run_ = 0;
};

/// Tail model from observed term magnitudes, for series without an a-priori
/// ratio bound: geometric continuation with the largest of the last three
/// successive ratios. Infinite until three ratios are known or while any of
/// them is ≥ 1.
class ObservedRatioTail {
public:
    double push(double magnitude) {
        if (count_ > 0) {
            double r;
            if (last_ == 0.0) {
                r = magnitude == 0.0 ? 0.0 : kInf;
            } else {
                r = magnitude / last_;
            }
            ratios_[next_] = r;
            next_ = (next_ + 1) % ratios_.size();
            ratio_count_ = std::min<int>(ratio_count_ + 1, static_cast<int>(ratios_.size()));
        }
        last_ = magnitude;
        ++count_;
        return estimate();
    }

    double estimate() const {
        if (ratio_count_ < static_cast<int>(ratios_.size())) return kInf;
        const double q = *std::max_element(ratios_.begin(), ratios_.end());
        if (!(q < 1.0)) return kInf;
        return last_ * q / (1.0 - q);
    }

private:
    std::array<double, 3> ratios_{};
    std::size_t next_ = 0;
    int ratio_count_ = 0;
    std::int64_t count_ = 0;
    double last_ = 0.0;
};

/// Geometric tail |term|·q/(1−q) for an a-priori ratio bound q.
inline double ratio_tail(double magnitude, double q) {
    if (!(q < 1.0)) return kInf;
    if (magnitude == 0.0) return 0.0;
    return magnitude * q / (1.0 - q);
}

/// a·b with 0·∞ read as 0, for bounds where a zero factor kills the tail.
inline double bound_product(double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : a * b; }

/// Σ_{j>d} C(j+m−1, m−1) ρʲ, the number-of-multi-indices weighted tail used
/// by shell-ordered sums over m indices.
double shell_count_tail(int m, double rho, std::int64_t d);

/// |λ|ⁿ·|y/x| style factor (1 + |λ|ⁿr)/(1 − |λ|^{n+1}r) bounding the ratio
/// |x − λⁿy| / |x − λ^{n+1}y| for all later n. +inf when the bound breaks.
inline double pole_factor(double lam_pow_n, double lam_abs, double r) {
    const double below = 1.0 - lam_pow_n * lam_abs * r;
    if (below <= 0.0) return kInf;
    return (1.0 + lam_pow_n * r) / below;
}

inline bool near_pole(Scalar denom, double scale, double pole_eps) {
    return std::abs(denom) <= pole_eps * scale;
}

}  // namespace lambertheta::detail
