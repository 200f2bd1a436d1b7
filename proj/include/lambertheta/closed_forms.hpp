#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lambertheta/coefficients.hpp"
#include "lambertheta/common.hpp"

namespace lambertheta {

namespace form {

/// 1/(1 - σu); "minus" variant is σ = +1.
struct Geometric {
    int sign = 1;
    friend bool operator==(const Geometric&, const Geometric&) = default;
};
/// -ln(1 - σu)/(σu), Taylor coefficients σⁿ/(n+1).
struct Log {
    int sign = 1;
    friend bool operator==(const Log&, const Log&) = default;
};
struct Exp {
    friend bool operator==(const Exp&, const Exp&) = default;
};
/// cos(√u) = Σ (-1)ⁿ uⁿ/(2n)!.
struct Cos {
    friend bool operator==(const Cos&, const Cos&) = default;
};
/// sin(√u)/√u = Σ (-1)ⁿ uⁿ/(2n+1)!.
struct Sin {
    friend bool operator==(const Sin&, const Sin&) = default;
};
/// v/(1 - v)^{d+1} with v = σu.
struct PolytopicGF {
    int d = 1;
    int sign = 1;
    friend bool operator==(const PolytopicGF&, const PolytopicGF&) = default;
};
/// u/(1 - s u - t u²).
struct LucasGF {
    Scalar s;
    Scalar t;
    friend bool operator==(const LucasGF&, const LucasGF&) = default;
};
/// Polynomial Σ aₙ uⁿ of a finite table.
struct TableGF {
    std::vector<Scalar> values;
    friend bool operator==(const TableGF&, const TableGF&) = default;
};

}  // namespace form

/// A generating function f(u) = Σ aₙ uⁿ with pointwise evaluation and its
/// radius of convergence (+inf for entire functions).
class ClosedForm {
public:
    using Kind = std::variant<form::Geometric, form::Log, form::Exp, form::Cos, form::Sin,
                              form::PolytopicGF, form::LucasGF, form::TableGF>;

    explicit ClosedForm(Kind kind);

    const Kind& kind() const noexcept { return kind_; }
    double radius() const noexcept { return radius_; }
    std::string label() const;

    /// Σ |aₙ| ρⁿ, an upper bound for sup_{|u| ≤ ρ} |f(u)|. +inf outside the
    /// majorant's own region of convergence.
    double majorant(double rho) const;

    friend bool operator==(const ClosedForm&, const ClosedForm&) = default;

private:
    Kind kind_;
    double radius_;
};

/// The sequence whose generating function `form` is.
SequenceSpec paired_spec(const ClosedForm& form);

/// The generating function of `spec`.
ClosedForm paired_form(const SequenceSpec& spec);

bool is_registered_pair(const SequenceSpec& spec, const ClosedForm& form);

/// f(u). Throws OutsideRadius when |u| ≥ radius·(1 − 1e-12) and
/// PoleProximity when a rational form's denominator is within `pole_eps`.
Scalar eval_closed_form(const ClosedForm& form, Scalar u, double pole_eps = kDefaultPoleEps);

/// |f(u) − Σ_{n=0}^{N} aₙ uⁿ| with aₙ from the paired sequence.
double series_residual(const ClosedForm& form, Scalar u, std::int64_t N);

/// Named (sequence, generating function) pair as exposed on the command line.
struct SeriesPair {
    std::string name;
    SequenceSpec spec;
    ClosedForm form;
};

/// Resolve a registry name: geom-plus, geom-minus, log-plus, log-minus, exp,
/// cos, sin, polytopic-d<k>-{plus,minus}, lucas-s<s>-t<t>, table:<path>.
/// "minus" selects the 1 − u denominators. Throws InvalidArgument for
/// unknown names.
SeriesPair find_pair(std::string_view name);

/// The eight pairs exercised by the round-trip suite.
std::vector<SeriesPair> standard_pairs();

/// Read a coefficient table: one complex literal per line, `#` comments.
std::vector<Scalar> load_table(const std::filesystem::path& path);

}  // namespace lambertheta
