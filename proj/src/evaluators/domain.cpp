#include <cmath>
#include <string>

#include "../overloaded.hpp"
#include "lambertheta/evaluators.hpp"
#include "summation.hpp"

namespace lambertheta {

namespace {

using detail::overloaded;

constexpr double kMargin = 1e-12;

bool lt(double a, double b) { return a < b * (1.0 - kMargin); }

bool distinct(Scalar a, Scalar b) {
    return std::abs(a - b) > kMargin * std::max(std::abs(a), std::abs(b));
}

class Checker {
public:
    void ne(Scalar a, Scalar b, const std::string& what) {
        if (!distinct(a, b)) out.push_back({what + " violated", false});
    }
    void less(double a, double b, const std::string& what, bool relaxable = false) {
        if (!lt(a, b)) out.push_back({what + " violated", relaxable});
    }

    std::vector<Violation> out;
};

void require_finite_params(const SeriesParams& p) {
    for (const auto& [name, v] : named_params(p)) {
        if (!is_finite(v)) throw Error(ErrorKind::NonFinite, "parameter " + name + " is not finite");
    }
}

Scalar& multivariate_slot(MultivariateParams& m, std::string_view name) {
    if (name == "z") return m.z;
    std::vector<Scalar>* vec = nullptr;
    std::string_view rest;
    if (name.rfind("lambda", 0) == 0) {
        vec = &m.lambda;
        rest = name.substr(6);
    } else if (!name.empty() && (name[0] == 'x' || name[0] == 'y')) {
        vec = name[0] == 'x' ? &m.x : &m.y;
        rest = name.substr(1);
    }
    std::size_t idx = 0;
    bool ok = vec != nullptr && !rest.empty();
    for (char c : rest) {
        if (c < '0' || c > '9') {
            ok = false;
            break;
        }
        idx = idx * 10 + static_cast<std::size_t>(c - '0');
    }
    if (!ok || idx < 1 || idx > vec->size()) {
        throw Error(ErrorKind::InvalidArgument, "unknown multivariate parameter '" + std::string(name) + "'");
    }
    return (*vec)[idx - 1];
}

}  // namespace

const char* to_string(Family f) {
    switch (f) {
        case Family::Lambert: return "lambert";
        case Family::Mehler: return "mehler";
        case Family::Rogers: return "rogers";
        case Family::DoubleSum: return "doublesum";
        case Family::Multivariate: return "multivariate";
    }
    return "?";
}

std::optional<Family> parse_family(std::string_view name) {
    for (auto f : {Family::Lambert, Family::Mehler, Family::Rogers, Family::DoubleSum, Family::Multivariate}) {
        if (name == to_string(f)) return f;
    }
    if (name == "double-sum") return Family::DoubleSum;
    return std::nullopt;
}

Family family_of(const SeriesParams& p) { return static_cast<Family>(p.index()); }

std::vector<std::pair<std::string, Scalar>> named_params(const SeriesParams& p) {
    return std::visit(
        overloaded{
            [](const LambertParams& q) -> std::vector<std::pair<std::string, Scalar>> {
                return {{"x", q.x}, {"y", q.y}, {"z", q.z}, {"lambda", q.lambda}};
            },
            [](const MehlerParams& q) -> std::vector<std::pair<std::string, Scalar>> {
                return {{"x", q.x}, {"y", q.y}, {"z", q.z}, {"w", q.w}, {"t", q.t}, {"lambda", q.lambda}};
            },
            [](const RogersParams& q) -> std::vector<std::pair<std::string, Scalar>> {
                return {{"x", q.x}, {"y", q.y}, {"t", q.t}, {"s", q.s}, {"lambda", q.lambda}};
            },
            [](const DoubleSumParams& q) -> std::vector<std::pair<std::string, Scalar>> {
                return {{"x", q.x}, {"y", q.y}, {"z", q.z}, {"t", q.t}, {"lambda", q.lambda}, {"mu", q.mu}};
            },
            [](const MultivariateParams& q) {
                std::vector<std::pair<std::string, Scalar>> out;
                const auto add = [&](const char* base, const std::vector<Scalar>& v) {
                    for (std::size_t i = 0; i < v.size(); ++i) out.emplace_back(base + std::to_string(i + 1), v[i]);
                };
                add("x", q.x);
                add("y", q.y);
                add("lambda", q.lambda);
                out.emplace_back("z", q.z);
                return out;
            },
        },
        p);
}

void set_param(SeriesParams& p, std::string_view name, Scalar value) {
    auto fail = [&]() -> Scalar& {
        throw Error(ErrorKind::InvalidArgument, std::string(to_string(family_of(p))) +
                                                    " has no parameter '" + std::string(name) + "'");
    };
    Scalar& slot = std::visit(
        overloaded{
            [&](LambertParams& q) -> Scalar& {
                if (name == "x") return q.x;
                if (name == "y") return q.y;
                if (name == "z") return q.z;
                if (name == "lambda") return q.lambda;
                return fail();
            },
            [&](MehlerParams& q) -> Scalar& {
                if (name == "x") return q.x;
                if (name == "y") return q.y;
                if (name == "z") return q.z;
                if (name == "w") return q.w;
                if (name == "t") return q.t;
                if (name == "lambda") return q.lambda;
                return fail();
            },
            [&](RogersParams& q) -> Scalar& {
                if (name == "x") return q.x;
                if (name == "y") return q.y;
                if (name == "t") return q.t;
                if (name == "s") return q.s;
                if (name == "lambda") return q.lambda;
                return fail();
            },
            [&](DoubleSumParams& q) -> Scalar& {
                if (name == "x") return q.x;
                if (name == "y") return q.y;
                if (name == "z") return q.z;
                if (name == "t") return q.t;
                if (name == "lambda") return q.lambda;
                if (name == "mu") return q.mu;
                return fail();
            },
            [&](MultivariateParams& q) -> Scalar& { return multivariate_slot(q, name); },
        },
        p);
    slot = value;
}

DomainRadii radii_of(const ClosedForm& f, const ClosedForm* g) {
    return {f.radius(), g ? g->radius() : f.radius()};
}

std::int64_t doublesum_outer_horizon(Scalar z, Scalar x, double rel_tol) {
    const double r = std::abs(z / x);
    if (!(r < 1.0)) throw Error(ErrorKind::DomainViolation, "|z|<|x| violated");
    if (r == 0.0) return 1;
    const double target = 1e-2 * rel_tol;
    auto horizon = static_cast<std::int64_t>(std::floor(std::log(target) / std::log(r)));
    horizon = std::max<std::int64_t>(horizon, 1);
    while (horizon > 1 && std::pow(r, static_cast<double>(horizon - 1)) < target) --horizon;
    while (!(std::pow(r, static_cast<double>(horizon)) < target)) ++horizon;
    return horizon;
}

std::vector<Violation> validate_domain(const SeriesParams& p, const DomainRadii& radii, const EvalConfig& cfg) {
    require_finite_params(p);
    Checker c;
    std::visit(
        overloaded{
            [&](const LambertParams& q) {
                c.ne(q.x, q.y, "x≠y");
                c.less(std::abs(q.y), std::abs(q.x), "|y|<|x|", true);
                c.less(std::abs(q.lambda), 1.0, "|λ|<1");
                c.less(std::abs(q.x * q.z), radii.first, "|xz|<R");
            },
            [&](const MehlerParams& q) {
                c.ne(q.x, q.y, "x≠y");
                c.ne(q.z, q.w, "z≠w");
                c.less(std::abs(q.y), std::abs(q.x), "|y|<|x|", true);
                c.less(std::abs(q.w), std::abs(q.z), "|w|<|z|", true);
                c.less(std::abs(q.lambda), 1.0, "|λ|<1");
                c.less(std::abs(q.t * q.x * q.z), radii.first, "|txz|<R");
            },
            [&](const RogersParams& q) {
                c.ne(q.x, q.y, "x≠y");
                c.less(std::abs(q.y), std::abs(q.x), "|y|<|x|", true);
                c.less(std::abs(q.lambda), 1.0, "|λ|<1");
                c.less(std::abs(q.x * q.t), radii.first, "|xt|<R1");
                c.less(std::abs(q.s * q.x), radii.second, "|sx|<R2");
            },
            [&](const DoubleSumParams& q) {
                c.ne(q.x, q.y, "x≠y");
                c.less(std::abs(q.y), std::abs(q.x), "|y|<|x|", true);
                c.less(std::abs(q.z), std::abs(q.x), "|z|<|x|", true);
                c.ne(q.mu, q.lambda, "μ≠λ");
                c.less(std::abs(q.lambda), 1.0, "|λ|<1");
                c.less(std::abs(q.mu), 1.0, "|μ|<1");
                c.less(std::abs(q.t * q.x), radii.first, "|tx|<R");
                // The right-hand side needs |y/(μⁱx)| < 1 for every outer index kept.
                if (lt(std::abs(q.z), std::abs(q.x)) && lt(std::abs(q.y), std::abs(q.x)) && q.x != Scalar{}) {
                    const auto horizon = doublesum_outer_horizon(q.z, q.x, cfg.rel_tol);
                    const double reach = std::pow(std::abs(q.mu), static_cast<double>(horizon - 1)) * std::abs(q.x);
                    c.less(std::abs(q.y), reach, "|y|<|μ^I x|", true);
                }
            },
            [&](const MultivariateParams& q) {
                if (q.x.empty() || q.x.size() != q.y.size() || q.x.size() != q.lambda.size()) {
                    throw Error(ErrorKind::InvalidArgument, "multivariate x, y, lambda need equal length >= 1");
                }
                Scalar prod{1.0, 0.0};
                for (std::size_t i = 0; i < q.x.size(); ++i) {
                    c.ne(q.x[i], q.y[i], "x" + std::to_string(i + 1) + "≠y" + std::to_string(i + 1));
                }
                for (std::size_t i = 0; i < q.x.size(); ++i) {
                    const auto k = std::to_string(i + 1);
                    c.less(std::abs(q.y[i]), std::abs(q.x[i]), "|y" + k + "|<|x" + k + "|", true);
                }
                for (std::size_t i = 0; i < q.x.size(); ++i) {
                    c.less(std::abs(q.lambda[i]), 1.0, "|λ" + std::to_string(i + 1) + "|<1");
                    prod *= q.x[i];
                }
                c.less(std::abs(prod * q.z), radii.first, "|Xz|<R");
            },
        },
        p);
    return std::move(c.out);
}

EvalResult eval_lhs(const SeriesParams& p, const SequenceSpec& a, const SequenceSpec* b, const EvalConfig& cfg) {
    return std::visit(
        overloaded{
            [&](const LambertParams& q) { return eval_lambert_lhs(a, q, cfg); },
            [&](const MehlerParams& q) { return eval_mehler_lhs(a, q, cfg); },
            [&](const RogersParams& q) { return eval_rogers_lhs(a, b ? *b : a, q, cfg); },
            [&](const DoubleSumParams& q) { return eval_doublesum_lhs(a, q, cfg); },
            [&](const MultivariateParams& q) { return eval_multivariate_lhs(a, q, cfg); },
        },
        p);
}

EvalResult eval_rhs(const SeriesParams& p, const ClosedForm& f, const ClosedForm* g, const EvalConfig& cfg) {
    return std::visit(
        overloaded{
            [&](const LambertParams& q) { return eval_lambert_rhs(f, q, cfg); },
            [&](const MehlerParams& q) { return eval_mehler_rhs(f, q, cfg); },
            [&](const RogersParams& q) { return eval_rogers_rhs(f, g ? *g : f, q, cfg); },
            [&](const DoubleSumParams& q) { return eval_doublesum_rhs(f, q, cfg); },
            [&](const MultivariateParams& q) { return eval_multivariate_rhs(f, q, cfg); },
        },
        p);
}

namespace detail {

double shell_count_tail(int m, double rho, std::int64_t d) {
    if (rho == 0.0) return 0.0;
    if (!(rho < 1.0)) return kInf;
    if (m == 1) return std::pow(rho, static_cast<double>(d + 1)) / (1.0 - rho);
    if (m == 2) {
        const double r = std::pow(rho, static_cast<double>(d + 1));
        const double dd = static_cast<double>(d + 1);
        return r * (dd * (1.0 - rho) + 1.0) / ((1.0 - rho) * (1.0 - rho));
    }
    // General m: sum the terms directly until they are negligible and shrinking.
    std::int64_t j = d + 1;
    // C(j+m-1, m-1) ρ^j via logs to avoid overflow in the binomial.
    auto log_term = [&](std::int64_t jj) {
        return std::lgamma(static_cast<double>(jj + m)) - std::lgamma(static_cast<double>(m)) -
               std::lgamma(static_cast<double>(jj + 1)) + static_cast<double>(jj) * std::log(rho);
    };
    double term = std::exp(log_term(j));
    double sum = 0.0;
    for (int guard = 0; guard < 1'000'000; ++guard) {
        sum += term;
        const double ratio = rho * static_cast<double>(j + m) / static_cast<double>(j + 1);
        term *= ratio;
        ++j;
        if (ratio < 1.0 && term <= 1e-17 * sum) {
            return sum + term * ratio / (1.0 - ratio);
        }
    }
    return kInf;
}

}  // namespace detail

}  // namespace lambertheta
