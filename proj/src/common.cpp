#include "lambertheta/common.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string_view>

namespace lambertheta {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::ZeroLambdaPower: return "ZeroLambdaPower";
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::IndexOutOfTable: return "IndexOutOfTable";
    case ErrorKind::DegenerateRoots: return "DegenerateRoots";
    case ErrorKind::OutsideRadius: return "OutsideRadius";
    case ErrorKind::MaxTermsExceeded: return "MaxTermsExceeded";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::UnpairedSpecForm: return "UnpairedSpecForm";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Scalar ipow(Scalar base, std::int64_t exponent) {
    if (exponent == 0) return {1.0, 0.0};
    if (exponent < 0) {
        if (base == Scalar{}) {
            throw Error(ErrorKind::ZeroLambdaPower, "zero raised to a negative power");
        }
        return Scalar{1.0, 0.0} / ipow(base, -exponent);
    }
    Scalar result{1.0, 0.0};
    auto e = static_cast<std::uint64_t>(exponent);
    while (e != 0) {
        if (e & 1U) result *= base;
        e >>= 1U;
        if (e != 0) base *= base;
    }
    return result;
}

Scalar log1p(Scalar v) {
    const double re = v.real();
    const double im = v.imag();
    if (std::abs(re) < 0.5 && std::abs(im) < 0.5) {
        // log|1+v| = 0.5 * log1p(2 Re v + |v|^2)
        const double mod2m1 = 2.0 * re + re * re + im * im;
        return {0.5 * std::log1p(mod2m1), std::atan2(im, 1.0 + re)};
    }
    return std::log(Scalar{1.0, 0.0} + v);
}

bool is_finite(Scalar v) noexcept {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

Scalar require_finite(Scalar v, const char* what) {
    if (!is_finite(v)) {
        throw Error(ErrorKind::NonFinite, std::string("non-finite value in ") + what);
    }
    return v;
}

std::string format_scalar(Scalar v) {
    // Shortest text that parses back to the same double.
    char buf[96];
    auto end = std::to_chars(buf, buf + 40, v.real()).ptr;
    if (v.imag() != 0.0) {
        if (!std::signbit(v.imag())) *end++ = '+';
        end = std::to_chars(end, buf + sizeof buf - 1, v.imag()).ptr;
        *end++ = 'i';
    }
    return std::string(buf, end);
}

namespace {

// Decimal number: optional sign, digits, optional fraction. No exponent.
bool parse_decimal(std::string_view s, double& out) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') ++i;
    bool digits = false;
    bool dot = false;
    for (std::size_t j = i; j < s.size(); ++j) {
        if (s[j] >= '0' && s[j] <= '9') {
            digits = true;
        } else if (s[j] == '.' && !dot) {
            dot = true;
        } else {
            return false;
        }
    }
    if (!digits) return false;
    // from_chars rejects a leading '+'.
    std::string_view body = s[0] == '+' ? s.substr(1) : s;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), out);
    return ec == std::errc{} && ptr == body.data() + body.size();
}

}  // namespace

std::optional<Scalar> parse_scalar(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    if (text.empty()) return std::nullopt;

    if (text.back() != 'i') {
        double re = 0.0;
        if (!parse_decimal(text, re)) return std::nullopt;
        return Scalar{re, 0.0};
    }
    text.remove_suffix(1);
    // Split at the last sign that is not the leading character.
    std::size_t split = std::string_view::npos;
    for (std::size_t j = text.size(); j-- > 1;) {
        if (text[j] == '+' || text[j] == '-') {
            split = j;
            break;
        }
    }
    double re = 0.0;
    double im = 0.0;
    if (split == std::string_view::npos) {
        std::string_view imag = text;
        if (imag.empty() || imag == "+" || imag == "-") {
            im = imag == "-" ? -1.0 : 1.0;
        } else if (!parse_decimal(imag, im)) {
            return std::nullopt;
        }
        return Scalar{0.0, im};
    }
    if (!parse_decimal(text.substr(0, split), re)) return std::nullopt;
    std::string_view imag = text.substr(split);
    if (imag == "+" || imag == "-") {
        im = imag == "-" ? -1.0 : 1.0;
    } else if (!parse_decimal(imag, im)) {
        return std::nullopt;
    }
    return Scalar{re, im};
}

}  // namespace lambertheta
