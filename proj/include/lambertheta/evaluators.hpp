#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lambertheta/closed_forms.hpp"
#include "lambertheta/coefficients.hpp"
#include "lambertheta/common.hpp"

namespace lambertheta {

enum class Family { Lambert, Mehler, Rogers, DoubleSum, Multivariate };

const char* to_string(Family f);
std::optional<Family> parse_family(std::string_view name);

/// Σ aₙ x^{n+1}/(x − λⁿy) zⁿ
struct LambertParams {
    Scalar x, y, z, lambda;
};
/// Σ aₙ x^{n+1}/(x − λⁿy) · z^{n+1}/(z − λⁿw) · tⁿ
struct MehlerParams {
    Scalar x, y, z, w, t, lambda;
};
/// Σₙ Σₘ aₙ bₘ x^{n+m+1}/(x − λ^{n+m}y) tⁿ sᵐ
struct RogersParams {
    Scalar x, y, t, s, lambda;
};
/// Σₙ aₙ Σₖ (μᵏx)^{n+1}/(μᵏx − λⁿy) (z/x)ᵏ tⁿ
struct DoubleSumParams {
    Scalar x, y, z, t, lambda, mu;
};
/// Σ aₙ Πᵢ xᵢ^{n+1}/(xᵢ − λᵢⁿyᵢ) zⁿ
struct MultivariateParams {
    std::vector<Scalar> x, y, lambda;
    Scalar z;
};

using SeriesParams =
    std::variant<LambertParams, MehlerParams, RogersParams, DoubleSumParams, MultivariateParams>;

Family family_of(const SeriesParams& p);

/// Parameters in a fixed order, multivariate coordinates as x1, y1, lambda1, …
std::vector<std::pair<std::string, Scalar>> named_params(const SeriesParams& p);

/// Assign a parameter by the names used in `named_params`. Throws
/// InvalidArgument for a name the family does not have.
void set_param(SeriesParams& p, std::string_view name, Scalar value);

struct EvalConfig {
    double rel_tol = 1e-10;
    std::int64_t max_terms = 1'000'000;
    double pole_eps = kDefaultPoleEps;
};

/// Radii of convergence of the generating functions involved; `second` is
/// only read by the Rogers family.
struct DomainRadii {
    double first;
    double second;
};

DomainRadii radii_of(const ClosedForm& f, const ClosedForm* g = nullptr);

struct Violation {
    std::string what;
    /// True for the geometric-ratio hypotheses (|y|<|x| and analogues) that
    /// advisory mode lets through; false for poles, |λ| and radius bounds.
    bool relaxable;
};

/// Checks every family-specific strict inequality with a 1e-12 margin.
/// Empty result means the parameters are inside the theorem's domain.
std::vector<Violation> validate_domain(const SeriesParams& p, const DomainRadii& radii,
                                       const EvalConfig& cfg = {});

/// Outer truncation index for the double-sum right-hand side: the smallest
/// I with |z/x|^I < 1e-2 · rel_tol.
std::int64_t doublesum_outer_horizon(Scalar z, Scalar x, double rel_tol);

// Each evaluator sums its series until the stopping rule closes and throws
// MaxTermsExceeded (carrying the partial sum) when max_terms runs out.
// Left-hand sides throw PoleProximity with the offending index; right-hand
// sides throw DomainViolation when a geometric ratio reaches 1 and
// OutsideRadius/PoleProximity from the generating function.

EvalResult eval_lambert_lhs(const SequenceSpec& a, const LambertParams& p, const EvalConfig& cfg = {});
EvalResult eval_lambert_rhs(const ClosedForm& f, const LambertParams& p, const EvalConfig& cfg = {});

EvalResult eval_mehler_lhs(const SequenceSpec& a, const MehlerParams& p, const EvalConfig& cfg = {});
EvalResult eval_mehler_rhs(const ClosedForm& f, const MehlerParams& p, const EvalConfig& cfg = {});

EvalResult eval_rogers_lhs(const SequenceSpec& a, const SequenceSpec& b, const RogersParams& p,
                           const EvalConfig& cfg = {});
EvalResult eval_rogers_rhs(const ClosedForm& f, const ClosedForm& g, const RogersParams& p,
                           const EvalConfig& cfg = {});

EvalResult eval_doublesum_lhs(const SequenceSpec& a, const DoubleSumParams& p, const EvalConfig& cfg = {});
EvalResult eval_doublesum_rhs(const ClosedForm& f, const DoubleSumParams& p, const EvalConfig& cfg = {});

EvalResult eval_multivariate_lhs(const SequenceSpec& a, const MultivariateParams& p,
                                 const EvalConfig& cfg = {});
EvalResult eval_multivariate_rhs(const ClosedForm& f, const MultivariateParams& p,
                                 const EvalConfig& cfg = {});

/// Family dispatch. `b`/`g` are used by Rogers only and default to `a`/`f`.
EvalResult eval_lhs(const SeriesParams& p, const SequenceSpec& a, const SequenceSpec* b,
                    const EvalConfig& cfg = {});
EvalResult eval_rhs(const SeriesParams& p, const ClosedForm& f, const ClosedForm* g,
                    const EvalConfig& cfg = {});

}  // namespace lambertheta
