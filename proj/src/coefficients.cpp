#include "lambertheta/coefficients.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>

#include "overloaded.hpp"

namespace lambertheta {

namespace {

using boost::multiprecision::cpp_rational;

constexpr double kInf = std::numeric_limits<double>::infinity();

using detail::overloaded;

double to_double(const BigInt& numerator, const BigInt& denominator) {
    return static_cast<double>(cpp_rational(numerator, denominator));
}

std::int64_t as_integer(double v) { return static_cast<std::int64_t>(v); }

void require_sign(int sign) {
    if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidArgument, "sign must be +1 or -1");
}

Scalar lucas_float(const seq::Lucas& l, std::int64_t n) {
    if (n == 0) return {};
    Scalar prev{};
    Scalar cur{1.0, 0.0};
    for (std::int64_t k = 1; k < n; ++k) {
        Scalar next = l.s * cur + l.t * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

BigInt lucas_exact(std::int64_t s, std::int64_t t, std::int64_t n) {
    if (n == 0) return 0;
    BigInt prev = 0;
    BigInt cur = 1;
    for (std::int64_t k = 1; k < n; ++k) {
        BigInt next = s * cur + t * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

double sign_pow(int sign, std::int64_t n) { return (sign < 0 && (n & 1)) ? -1.0 : 1.0; }

}  // namespace

BigInt factorial(std::int64_t n) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative factorial");
    BigInt r = 1;
    for (std::int64_t k = 2; k <= n; ++k) r *= k;
    return r;
}

BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    // Each partial product r * (n-k+i) / i is an integer.
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

bool has_integer_parameters(const seq::Lucas& l) {
    auto integral = [](Scalar v) {
        return v.imag() == 0.0 && std::floor(v.real()) == v.real() && std::abs(v.real()) < 9.0e15;
    };
    return integral(l.s) && integral(l.t);
}

SequenceSpec::SequenceSpec(Kind kind) : kind_(std::move(kind)) {
    std::visit(overloaded{
                   [](const seq::AltSign& k) { require_sign(k.sign); },
                   [](const seq::AltSignOverNPlus1& k) { require_sign(k.sign); },
                   [](const seq::Polytopic& k) {
                       require_sign(k.sign);
                       if (k.d < 1) throw Error(ErrorKind::InvalidArgument, "polytopic d must be >= 1");
                   },
                   [](const seq::Lucas& k) {
                       if (k.s == Scalar{} || k.t == Scalar{}) {
                           throw Error(ErrorKind::InvalidArgument, "Lucas parameters need s != 0 and t != 0");
                       }
                   },
                   [](const seq::Table& k) {
                       if (k.values.empty()) throw Error(ErrorKind::InvalidArgument, "empty coefficient table");
                       for (auto v : k.values) require_finite(v, "table coefficient");
                   },
                   [](const auto&) {},
               },
               kind_);
}

std::optional<std::size_t> SequenceSpec::length() const {
    if (const auto* t = as<seq::Table>()) return t->values.size();
    return std::nullopt;
}

double SequenceSpec::ratio_bound(std::int64_t n) const {
    const double m = static_cast<double>(std::max<std::int64_t>(n, 0));
    return std::visit(
        overloaded{
            [](const seq::AltSign&) { return 1.0; },
            [](const seq::AltSignOverNPlus1&) { return 1.0; },
            [m](const seq::InvFactorial&) { return 1.0 / (m + 1.0); },
            [m](const seq::AltInvEvenFactorial&) { return 1.0 / ((2 * m + 1) * (2 * m + 2)); },
            [m](const seq::AltInvOddFactorial&) { return 1.0 / ((2 * m + 2) * (2 * m + 3)); },
            [m](const seq::Polytopic& p) { return m < 1 ? kInf : (m + p.d) / m; },
            [m](const seq::Lucas& l) {
                if (m < 1) return kInf;
                // {k} = (φᵏ − φ′ᵏ)/(φ − φ′): |{k+1}/{k}| ≤ |φ|(1 + ρ^{k+1})/(1 − ρᵏ), ρ = |φ′/φ|,
                // decreasing in k.
                try {
                    const auto roots = lucas_roots(l.s, l.t);
                    const double rho = std::abs(roots.varphi) / std::abs(roots.phi);
                    const double rk = std::pow(rho, m);
                    if (rk >= 1.0 - 1e-12) return kInf;
                    return std::abs(roots.phi) * (1.0 + rk * rho) / (1.0 - rk);
                } catch (const Error&) {
                    return kInf;
                }
            },
            [n](const seq::Table& t) {
                return n + 1 >= static_cast<std::int64_t>(t.values.size()) ? 0.0 : kInf;
            },
        },
        kind_);
}

std::string SequenceSpec::label() const {
    auto sgn = [](int s) { return s > 0 ? std::string("+1") : std::string("-1"); };
    return std::visit(
        overloaded{
            [&](const seq::AltSign& k) { return "AltSign(" + sgn(k.sign) + ")"; },
            [&](const seq::AltSignOverNPlus1& k) { return "AltSignOverNPlus1(" + sgn(k.sign) + ")"; },
            [](const seq::InvFactorial&) { return std::string("InvFactorial"); },
            [](const seq::AltInvEvenFactorial&) { return std::string("AltInvEvenFactorial"); },
            [](const seq::AltInvOddFactorial&) { return std::string("AltInvOddFactorial"); },
            [&](const seq::Polytopic& k) {
                return "Polytopic(d=" + std::to_string(k.d) + "," + sgn(k.sign) + ")";
            },
            [](const seq::Lucas& k) {
                return "Lucas(" + format_scalar(k.s) + "," + format_scalar(k.t) + ")";
            },
            [](const seq::Table& k) { return "Table(" + std::to_string(k.values.size()) + ")"; },
        },
        kind_);
}

Scalar coefficient(const SequenceSpec& spec, std::int64_t n) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative coefficient index");
    return std::visit(
        overloaded{
            [n](const seq::AltSign& k) { return Scalar{sign_pow(k.sign, n), 0.0}; },
            [n](const seq::AltSignOverNPlus1& k) {
                return Scalar{sign_pow(k.sign, n) / static_cast<double>(n + 1), 0.0};
            },
            [n](const seq::InvFactorial&) { return Scalar{to_double(1, factorial(n)), 0.0}; },
            [n](const seq::AltInvEvenFactorial&) {
                return Scalar{sign_pow(-1, n) * to_double(1, factorial(2 * n)), 0.0};
            },
            [n](const seq::AltInvOddFactorial&) {
                return Scalar{sign_pow(-1, n) * to_double(1, factorial(2 * n + 1)), 0.0};
            },
            [n](const seq::Polytopic& k) {
                return Scalar{sign_pow(k.sign, n) * static_cast<double>(binomial(n + k.d - 1, k.d)), 0.0};
            },
            [n](const seq::Lucas& k) {
                if (has_integer_parameters(k)) {
                    const double v = static_cast<double>(
                        lucas_exact(as_integer(k.s.real()), as_integer(k.t.real()), n));
                    return require_finite(Scalar{v, 0.0}, "Lucas coefficient");
                }
                return require_finite(lucas_float(k, n), "Lucas coefficient");
            },
            [n](const seq::Table& k) {
                if (n >= static_cast<std::int64_t>(k.values.size())) {
                    throw Error(ErrorKind::IndexOutOfTable, "index past end of coefficient table", n);
                }
                return k.values[static_cast<std::size_t>(n)];
            },
        },
        spec.kind());
}

BigInt integer_coefficient(const SequenceSpec& spec, std::int64_t n) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative coefficient index");
    if (const auto* p = spec.as<seq::Polytopic>()) {
        BigInt v = binomial(n + p->d - 1, p->d);
        return (p->sign < 0 && (n & 1)) ? BigInt(-v) : v;
    }
    if (const auto* l = spec.as<seq::Lucas>(); l && has_integer_parameters(*l)) {
        return lucas_exact(as_integer(l->s.real()), as_integer(l->t.real()), n);
    }
    if (const auto* a = spec.as<seq::AltSign>()) {
        return (a->sign < 0 && (n & 1)) ? BigInt(-1) : BigInt(1);
    }
    throw Error(ErrorKind::InvalidArgument, spec.label() + " is not an integer sequence");
}

LucasRoots lucas_roots(Scalar s, Scalar t) {
    const Scalar disc = s * s + 4.0 * t;
    if (std::abs(disc) < 1e-12 * std::max(std::norm(s), std::abs(t))) {
        throw Error(ErrorKind::DegenerateRoots, "Lucas characteristic polynomial has a double root");
    }
    const Scalar root = std::sqrt(disc);
    const Scalar a = 0.5 * (s + root);
    const Scalar b = 0.5 * (s - root);
    const Scalar phi = std::abs(a) >= std::abs(b) ? a : b;
    // Vieta for the smaller root avoids cancellation in s − √D.
    return {phi, -t / phi};
}

Scalar lucas_generating_check(Scalar s, Scalar t, Scalar x, double pole_eps) {
    const auto [phi, varphi] = lucas_roots(s, t);
    if (std::abs(x) * std::abs(phi) >= 1.0 - 1e-12) {
        throw Error(ErrorKind::OutsideRadius, "|x| must be below 1/|phi|");
    }
    const Scalar one{1.0, 0.0};
    const Scalar d1 = one - phi * x;
    const Scalar d2 = one - varphi * x;
    if (std::abs(d1) < pole_eps || std::abs(d2) < pole_eps) {
        throw Error(ErrorKind::PoleProximity, "x is at a pole of the Lucas generating function");
    }
    return (one / d1 - one / d2) / (phi - varphi);
}

}  // namespace lambertheta
