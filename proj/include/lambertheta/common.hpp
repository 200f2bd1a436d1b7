#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace lambertheta {

/// All series parameters and coefficients are complex doubles; real inputs
/// embed with a zero imaginary part.
using Scalar = std::complex<double>;

/// Relative distance below which x - λⁿy (and similar denominators) is
/// treated as a pole.
inline constexpr double kDefaultPoleEps = 1e-9;

enum class ErrorKind {
    ZeroLambdaPower,
    PoleProximity,
    IndexOutOfTable,
    DegenerateRoots,
    OutsideRadius,
    MaxTermsExceeded,
    DomainViolation,
    UnpairedSpecForm,
    EmptyGrid,
    NonFinite,
    InvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Outcome of one series evaluation.
///
/// `converged` means the stopping rule closed: several consecutive terms
/// were below rel_tol * |value| and the tail model agreed.
struct EvalResult {
    Scalar value{};
    std::int64_t terms_used = 0;
    double tail_estimate = 0.0;
    bool converged = false;
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Error(ErrorKind kind, const std::string& what, std::int64_t index)
        : std::runtime_error(what), kind_(kind), index_(index) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// Series index at which the failure was detected (pole index, table index).
    std::optional<std::int64_t> index() const noexcept { return index_; }

    /// Partial sum reached before giving up (MaxTermsExceeded only).
    const std::optional<EvalResult>& partial() const noexcept { return partial_; }

    Error& with_partial(EvalResult r) {
        partial_ = r;
        return *this;
    }

private:
    ErrorKind kind_;
    std::optional<std::int64_t> index_;
    std::optional<EvalResult> partial_;
};

/// Integer power by repeated squaring; negative exponents invert.
/// 0^0 == 1. A zero base with a negative exponent throws ZeroLambdaPower.
Scalar ipow(Scalar base, std::int64_t exponent);

/// log(1 + v) accurate for small |v|.
Scalar log1p(Scalar v);

bool is_finite(Scalar v) noexcept;

/// Throws NonFinite when `v` has an infinite or NaN component.
Scalar require_finite(Scalar v, const char* what);

/// "a+bi" rendering with round-trip precision.
std::string format_scalar(Scalar v);

/// Parse the complex literal grammar `RE`, `RE+IMi`, `RE-IMi`, `IMi`
/// (plain decimal, no locale). Returns nullopt on malformed input.
std::optional<Scalar> parse_scalar(std::string_view text);

}  // namespace lambertheta
