#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lambertheta/closed_forms.hpp"
#include "lambertheta/evaluators.hpp"

namespace lambertheta {

enum class Verdict { Pass, Fail, Skipped };

const char* to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view text);

/// Flag attached when advisory mode lets a point outside the theorem's
/// |y|<|x|-type hypotheses through.
inline constexpr const char* kOutsideHypotheses = "outside theorem hypotheses";

struct IdentityReport {
    std::string family;
    std::vector<std::pair<std::string, Scalar>> params;
    std::string spec;
    std::string form;
    std::optional<EvalResult> lhs;
    std::optional<EvalResult> rhs;
    double abs_gap = std::numeric_limits<double>::quiet_NaN();
    double rel_gap = std::numeric_limits<double>::quiet_NaN();
    double tol = 0.0;
    Verdict verdict = Verdict::Skipped;
    /// Why a point was SKIPPED or FAILed ("x≠y violated", "pole at n=3",
    /// "lhs not converged", …); empty on PASS.
    std::string reason;
    std::vector<std::string> flags;

    friend bool operator==(const IdentityReport&, const IdentityReport&);
};

enum class DomainMode { Strict, Advisory };

struct CheckOptions {
    EvalConfig eval{};
    /// Report tolerance on rel_gap = |lhs − rhs| / max(1, |lhs|).
    double tol = 1e-8;
    DomainMode mode = DomainMode::Strict;
};

/// Default report tolerance: 100× the evaluator's rel_tol.
inline double default_report_tol(const EvalConfig& cfg) { return 100.0 * cfg.rel_tol; }

/// Evaluate both sides of the family's identity and compare. Domain
/// violations, poles and radius failures become SKIPPED; only in-domain
/// disagreement or non-convergence is FAIL. Throws UnpairedSpecForm when a
/// spec is checked against a form that is not its generating function.
IdentityReport check_identity(const SeriesParams& params, const SequenceSpec& spec, const ClosedForm& form,
                              const CheckOptions& opts = {});

/// Rogers needs a second (spec, form) pair; other families ignore it.
IdentityReport check_identity(const SeriesParams& params, const SequenceSpec& spec, const ClosedForm& form,
                              const SequenceSpec& spec_b, const ClosedForm& form_b,
                              const CheckOptions& opts = {});

IdentityReport check_identity(const SeriesParams& params, const SeriesPair& a, const SeriesPair* b,
                              const CheckOptions& opts = {});

/// Classical Lambert-series identities, both sides by direct summation:
///  1  Σ (−1)^{n−1} qⁿ/(1−qⁿ)      = Σ qⁿ/(1+qⁿ)
///  2  Σ n qⁿ/(1−qⁿ)               = Σ qⁿ/(1−qⁿ)²
///  3  Σ (−1)^{n−1} n qⁿ/(1−qⁿ)    = Σ qⁿ/(1+qⁿ)²
///  4  Σ (1/n) qⁿ/(1−qⁿ)           = Σ ln(1/(1−qⁿ))
///  5  Σ ((−1)^{n−1}/n) qⁿ/(1−qⁿ)  = Σ ln(1+qⁿ)
/// Throws InvalidArgument for an id outside 1..5 or |q| ≥ 1.
IdentityReport check_classical(int id, Scalar q, double tol = 1e-9);

inline constexpr int kClassicalCount = 5;

/// Lambert series with Lucas(s,t) coefficients against its partial-fraction
/// right-hand side Σₖ (y/x)ᵏ (1/(φ−φ′)) (1/(1−φλᵏxz) − 1/(1−φ′λᵏxz)).
IdentityReport check_lucas_corollary(Scalar s, Scalar t, const LambertParams& p, const CheckOptions& opts = {});

/// Lambert series with Polytopic(d,σ) coefficients against
/// Σₖ (y/x)ᵏ σλᵏxz/(1 − σλᵏxz)^{d+1}.
IdentityReport check_polytopic_corollary(int d, int sign, const LambertParams& p, const CheckOptions& opts = {});

// ---------------------------------------------------------------------------
// Sweeps

/// In-domain random parameters for `family` with margins ≥ 0.05 on every
/// strict inequality. `b` is the second Rogers factor.
SeriesParams draw_params(Family family, const SeriesPair& a, const SeriesPair* b, std::mt19937_64& rng,
                         const EvalConfig& cfg = {});

/// Cartesian grid: each axis overrides one named parameter of `base`.
struct ParameterGrid {
    SeriesParams base;
    std::vector<std::pair<std::string, std::vector<Scalar>>> axes;
};

struct RandomCloud {
    std::size_t count = 50;
    std::uint64_t seed = 0;
};

using PointSource = std::variant<ParameterGrid, RandomCloud>;

struct SweepPoint {
    SeriesParams params;
    std::size_t pair_a;
    std::size_t pair_b;
};

struct SweepPlan {
    std::vector<SeriesPair> pairs;
    std::vector<SweepPoint> points;
};

/// Every grid point (or `count` seeded draws) for every pair, in pair-major
/// order. Rogers pairs pair i with pair (i+1) mod |pairs|. Throws EmptyGrid
/// for an empty pair set or an empty grid axis.
SweepPlan plan_sweep(Family family, const std::vector<SeriesPair>& pairs, const PointSource& source,
                     const EvalConfig& cfg = {});

std::vector<SeriesParams> expand_grid(const ParameterGrid& grid);

/// Reference implementation: one point after another.
std::vector<IdentityReport> run_sweep_serial(const SweepPlan& plan, const CheckOptions& opts);

/// OpenMP over points; the result order is the plan order.
std::vector<IdentityReport> run_sweep_parallel(const SweepPlan& plan, const CheckOptions& opts);

std::vector<IdentityReport> sweep(Family family, const std::vector<SeriesPair>& pairs, const PointSource& source,
                                  const CheckOptions& opts = {}, bool parallel = true);

struct SweepSummary {
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t skipped = 0;
};

SweepSummary summarize(const std::vector<IdentityReport>& reports);

}  // namespace lambertheta
