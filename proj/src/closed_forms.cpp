#include "lambertheta/closed_forms.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "overloaded.hpp"

namespace lambertheta {

namespace {

using detail::overloaded;

constexpr double kInf = std::numeric_limits<double>::infinity();

double lucas_radius(Scalar s, Scalar t) {
    // Roots of x² − s x − t; the generating function's poles are their reciprocals.
    const Scalar root = std::sqrt(s * s + 4.0 * t);
    const double big = std::max(std::abs(0.5 * (s + root)), std::abs(0.5 * (s - root)));
    return big == 0.0 ? kInf : 1.0 / big;
}

double radius_of(const ClosedForm::Kind& kind) {
    return std::visit(overloaded{
                          [](const form::Geometric&) { return 1.0; },
                          [](const form::Log&) { return 1.0; },
                          [](const form::PolytopicGF&) { return 1.0; },
                          [](const form::LucasGF& l) { return lucas_radius(l.s, l.t); },
                          [](const auto&) { return kInf; },
                      },
                      kind);
}

void check_pole(Scalar denom, double pole_eps, const char* what) {
    if (std::abs(denom) <= pole_eps) throw Error(ErrorKind::PoleProximity, what);
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

[[noreturn]] void unknown(std::string_view name) {
    throw Error(ErrorKind::InvalidArgument, "unknown spec/form name '" + std::string(name) + "'");
}

}  // namespace

ClosedForm::ClosedForm(Kind kind) : kind_(std::move(kind)), radius_(radius_of(kind_)) {
    std::visit(overloaded{
                   [](const form::Geometric& k) {
                       if (k.sign != 1 && k.sign != -1) throw Error(ErrorKind::InvalidArgument, "sign must be +1 or -1");
                   },
                   [](const form::Log& k) {
                       if (k.sign != 1 && k.sign != -1) throw Error(ErrorKind::InvalidArgument, "sign must be +1 or -1");
                   },
                   [](const form::PolytopicGF& k) {
                       if (k.sign != 1 && k.sign != -1) throw Error(ErrorKind::InvalidArgument, "sign must be +1 or -1");
                       if (k.d < 1) throw Error(ErrorKind::InvalidArgument, "polytopic d must be >= 1");
                   },
                   [](const form::TableGF& k) {
                       if (k.values.empty()) throw Error(ErrorKind::InvalidArgument, "empty coefficient table");
                   },
                   [](const auto&) {},
               },
               kind_);
}

std::string ClosedForm::label() const {
    auto pm = [](int s) { return s > 0 ? std::string("-") : std::string("+"); };
    return std::visit(
        overloaded{
            [&](const form::Geometric& k) { return "Geometric(" + pm(k.sign) + ")"; },
            [&](const form::Log& k) { return "Log(" + pm(k.sign) + ")"; },
            [](const form::Exp&) { return std::string("Exp"); },
            [](const form::Cos&) { return std::string("Cos"); },
            [](const form::Sin&) { return std::string("Sin"); },
            [&](const form::PolytopicGF& k) {
                return "PolytopicGF(d=" + std::to_string(k.d) + "," + pm(k.sign) + ")";
            },
            [](const form::LucasGF& k) {
                return "LucasGF(" + format_scalar(k.s) + "," + format_scalar(k.t) + ")";
            },
            [](const form::TableGF& k) { return "TableGF(" + std::to_string(k.values.size()) + ")"; },
        },
        kind_);
}

double ClosedForm::majorant(double rho) const {
    rho = std::abs(rho);
    return std::visit(
        overloaded{
            [rho](const form::Geometric&) { return rho < 1.0 ? 1.0 / (1.0 - rho) : kInf; },
            [rho](const form::Log&) {
                if (rho >= 1.0) return kInf;
                return rho < 1e-8 ? 1.0 + 0.5 * rho : -std::log1p(-rho) / rho;
            },
            [rho](const form::Exp&) { return std::exp(rho); },
            [rho](const form::Cos&) { return std::cosh(std::sqrt(rho)); },
            [rho](const form::Sin&) {
                const double r = std::sqrt(rho);
                return r < 1e-4 ? 1.0 + rho / 6.0 : std::sinh(r) / r;
            },
            [rho](const form::PolytopicGF& k) {
                return rho < 1.0 ? rho / std::pow(1.0 - rho, k.d + 1) : kInf;
            },
            [rho](const form::LucasGF& k) {
                // |{n}_{s,t}| ≤ {n}_{|s|,|t|} by induction on the recurrence.
                const double denom = 1.0 - std::abs(k.s) * rho - std::abs(k.t) * rho * rho;
                return denom > 0.0 ? rho / denom : kInf;
            },
            [rho](const form::TableGF& k) {
                double acc = 0.0;
                for (auto it = k.values.rbegin(); it != k.values.rend(); ++it) acc = acc * rho + std::abs(*it);
                return acc;
            },
        },
        kind_);
}

SequenceSpec paired_spec(const ClosedForm& f) {
    return std::visit(
        overloaded{
            [](const form::Geometric& k) { return SequenceSpec(seq::AltSign{k.sign}); },
            [](const form::Log& k) { return SequenceSpec(seq::AltSignOverNPlus1{k.sign}); },
            [](const form::Exp&) { return SequenceSpec(seq::InvFactorial{}); },
            [](const form::Cos&) { return SequenceSpec(seq::AltInvEvenFactorial{}); },
            [](const form::Sin&) { return SequenceSpec(seq::AltInvOddFactorial{}); },
            [](const form::PolytopicGF& k) { return SequenceSpec(seq::Polytopic{k.d, k.sign}); },
            [](const form::LucasGF& k) { return SequenceSpec(seq::Lucas{k.s, k.t}); },
            [](const form::TableGF& k) { return SequenceSpec(seq::Table{k.values}); },
        },
        f.kind());
}

ClosedForm paired_form(const SequenceSpec& spec) {
    return std::visit(
        overloaded{
            [](const seq::AltSign& k) { return ClosedForm(form::Geometric{k.sign}); },
            [](const seq::AltSignOverNPlus1& k) { return ClosedForm(form::Log{k.sign}); },
            [](const seq::InvFactorial&) { return ClosedForm(form::Exp{}); },
            [](const seq::AltInvEvenFactorial&) { return ClosedForm(form::Cos{}); },
            [](const seq::AltInvOddFactorial&) { return ClosedForm(form::Sin{}); },
            [](const seq::Polytopic& k) { return ClosedForm(form::PolytopicGF{k.d, k.sign}); },
            [](const seq::Lucas& k) { return ClosedForm(form::LucasGF{k.s, k.t}); },
            [](const seq::Table& k) { return ClosedForm(form::TableGF{k.values}); },
        },
        spec.kind());
}

bool is_registered_pair(const SequenceSpec& spec, const ClosedForm& f) {
    return paired_spec(f) == spec;
}

Scalar eval_closed_form(const ClosedForm& f, Scalar u, double pole_eps) {
    if (std::isfinite(f.radius()) && std::abs(u) >= f.radius() * (1.0 - 1e-12)) {
        throw Error(ErrorKind::OutsideRadius,
                    f.label() + " evaluated outside its radius of convergence");
    }
    const Scalar one{1.0, 0.0};
    const Scalar value = std::visit(
        overloaded{
            [&](const form::Geometric& k) {
                const Scalar denom = one - static_cast<double>(k.sign) * u;
                check_pole(denom, pole_eps, "geometric form at its pole");
                return one / denom;
            },
            [&](const form::Log& k) {
                const Scalar v = static_cast<double>(k.sign) * u;
                if (v == Scalar{}) return one;
                return -log1p(-v) / v;
            },
            [&](const form::Exp&) { return std::exp(u); },
            [&](const form::Cos&) { return std::cos(std::sqrt(u)); },
            [&](const form::Sin&) {
                if (std::abs(u) < 1e-4) return one - u / 6.0 + u * u / 120.0 - u * u * u / 5040.0;
                const Scalar r = std::sqrt(u);
                return std::sin(r) / r;
            },
            [&](const form::PolytopicGF& k) {
                const Scalar v = static_cast<double>(k.sign) * u;
                const Scalar base = one - v;
                check_pole(base, pole_eps, "polytopic form at its pole");
                return v / ipow(base, k.d + 1);
            },
            [&](const form::LucasGF& k) {
                const Scalar denom = one - k.s * u - k.t * u * u;
                check_pole(denom, pole_eps, "Lucas form at its pole");
                return u / denom;
            },
            [&](const form::TableGF& k) {
                Scalar acc{};
                for (auto it = k.values.rbegin(); it != k.values.rend(); ++it) acc = acc * u + *it;
                return acc;
            },
        },
        f.kind());
    return require_finite(value, "eval_closed_form");
}

double series_residual(const ClosedForm& f, Scalar u, std::int64_t N) {
    const Scalar exact = eval_closed_form(f, u);
    const SequenceSpec spec = paired_spec(f);
    const auto len = spec.length();
    const std::int64_t top = len ? std::min<std::int64_t>(N, static_cast<std::int64_t>(*len) - 1) : N;
    // Horner from the top coefficient down.
    Scalar partial{};
    for (std::int64_t n = top; n >= 0; --n) partial = partial * u + coefficient(spec, n);
    return std::abs(exact - partial);
}

SeriesPair find_pair(std::string_view name) {
    auto make = [&](ClosedForm f) {
        SequenceSpec s = paired_spec(f);
        return SeriesPair{std::string(name), std::move(s), std::move(f)};
    };
    if (name == "geom-minus") return make(ClosedForm(form::Geometric{1}));
    if (name == "geom-plus") return make(ClosedForm(form::Geometric{-1}));
    if (name == "log-minus") return make(ClosedForm(form::Log{1}));
    if (name == "log-plus") return make(ClosedForm(form::Log{-1}));
    if (name == "exp") return make(ClosedForm(form::Exp{}));
    if (name == "cos") return make(ClosedForm(form::Cos{}));
    if (name == "sin") return make(ClosedForm(form::Sin{}));

    constexpr std::string_view poly = "polytopic-d";
    if (name.starts_with(poly)) {
        std::string_view rest = name.substr(poly.size());
        const auto dash = rest.find('-');
        if (dash == std::string_view::npos) unknown(name);
        const auto d = parse_int(rest.substr(0, dash));
        const std::string_view variant = rest.substr(dash + 1);
        if (!d || *d < 1 || *d > 64 || (variant != "plus" && variant != "minus")) unknown(name);
        return make(ClosedForm(form::PolytopicGF{static_cast<int>(*d), variant == "minus" ? 1 : -1}));
    }

    constexpr std::string_view lucas = "lucas-s";
    if (name.starts_with(lucas)) {
        std::string_view rest = name.substr(lucas.size());
        const auto sep = rest.find("-t");
        if (sep == std::string_view::npos) unknown(name);
        const auto s = parse_scalar(rest.substr(0, sep));
        const auto t = parse_scalar(rest.substr(sep + 2));
        if (!s || !t || *s == Scalar{} || *t == Scalar{}) unknown(name);
        return make(ClosedForm(form::LucasGF{*s, *t}));
    }

    constexpr std::string_view table = "table:";
    if (name.starts_with(table)) {
        return make(ClosedForm(form::TableGF{load_table(std::string(name.substr(table.size())))}));
    }
    unknown(name);
}

std::vector<SeriesPair> standard_pairs() {
    std::vector<SeriesPair> out;
    for (const char* name : {"geom-minus", "geom-plus", "log-minus", "log-plus", "exp", "cos", "sin",
                             "lucas-s1-t1"}) {
        out.push_back(find_pair(name));
    }
    return out;
}

std::vector<Scalar> load_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open table file " + path.string());
    std::vector<Scalar> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto v = parse_scalar(line);
        if (!v) {
            throw Error(ErrorKind::InvalidArgument,
                        path.string() + ":" + std::to_string(lineno) + ": bad complex literal");
        }
        values.push_back(*v);
    }
    if (values.empty()) throw Error(ErrorKind::InvalidArgument, "table file has no coefficients");
    return values;
}

}  // namespace lambertheta
