#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "lambertheta/common.hpp"

namespace lambertheta {

using BigInt = boost::multiprecision::cpp_int;

namespace seq {

/// σⁿ
struct AltSign {
    int sign = 1;
    friend bool operator==(const AltSign&, const AltSign&) = default;
};
/// σⁿ / (n+1)
struct AltSignOverNPlus1 {
    int sign = 1;
    friend bool operator==(const AltSignOverNPlus1&, const AltSignOverNPlus1&) = default;
};
/// 1 / n!
struct InvFactorial {
    friend bool operator==(const InvFactorial&, const InvFactorial&) = default;
};
/// (-1)ⁿ / (2n)!
struct AltInvEvenFactorial {
    friend bool operator==(const AltInvEvenFactorial&, const AltInvEvenFactorial&) = default;
};
/// (-1)ⁿ / (2n+1)!
struct AltInvOddFactorial {
    friend bool operator==(const AltInvOddFactorial&, const AltInvOddFactorial&) = default;
};
/// σⁿ C(n+d-1, d), the simplicial d-polytopic numbers.
struct Polytopic {
    int d = 1;
    int sign = 1;
    friend bool operator==(const Polytopic&, const Polytopic&) = default;
};
/// {n+2} = s{n+1} + t{n}, {0} = 0, {1} = 1.
struct Lucas {
    Scalar s;
    Scalar t;
    friend bool operator==(const Lucas&, const Lucas&) = default;
};
/// Finite coefficient list a₀ … a_{N-1}.
struct Table {
    std::vector<Scalar> values;
    friend bool operator==(const Table&, const Table&) = default;
};

}  // namespace seq

/// Descriptor of a coefficient sequence aₙ.
class SequenceSpec {
public:
    using Kind = std::variant<seq::AltSign, seq::AltSignOverNPlus1, seq::InvFactorial,
                              seq::AltInvEvenFactorial, seq::AltInvOddFactorial, seq::Polytopic,
                              seq::Lucas, seq::Table>;

    /// Validates the kind's invariants (sign ±1, d ≥ 1, s,t ≠ 0, table non-empty).
    explicit SequenceSpec(Kind kind);

    const Kind& kind() const noexcept { return kind_; }

    template <typename T>
    const T* as() const noexcept { return std::get_if<T>(&kind_); }

    /// Number of stored coefficients for tables; empty for infinite sequences.
    std::optional<std::size_t> length() const;

    /// Upper bound on sup_{m ≥ n} |a_{m+1} / a_m|; +inf when no such bound is
    /// available (a zero coefficient or roots of equal modulus).
    double ratio_bound(std::int64_t n) const;

    std::string label() const;

    friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;

private:
    Kind kind_;
};

/// aₙ. Factorials and binomials are formed in arbitrary-size integers before
/// the single rounding to double; integer Lucas parameters use exact
/// recurrence, others a floating recurrence. Table kinds throw
/// IndexOutOfTable past their end.
Scalar coefficient(const SequenceSpec& spec, std::int64_t n);

/// Exact integer value of aₙ for Polytopic and integer-parameter Lucas
/// sequences. Throws InvalidArgument for other kinds.
BigInt integer_coefficient(const SequenceSpec& spec, std::int64_t n);

BigInt binomial(std::int64_t n, std::int64_t k);
BigInt factorial(std::int64_t n);

/// Roots φ, φ′ of x² − s x − t = 0 with |φ| ≥ |φ′|.
struct LucasRoots {
    Scalar phi;
    Scalar varphi;
};

/// Throws DegenerateRoots when |s² + 4t| < 1e-12 · max(|s|², |t|).
LucasRoots lucas_roots(Scalar s, Scalar t);

/// Partial-fraction value (1/(φ−φ′)) (1/(1−φx) − 1/(1−φ′x)) of the Lucas
/// generating function. Requires |x| < 1/|φ|.
Scalar lucas_generating_check(Scalar s, Scalar t, Scalar x, double pole_eps = kDefaultPoleEps);

/// True when s and t are real integers (exact recurrence applies).
bool has_integer_parameters(const seq::Lucas& lucas);

}  // namespace lambertheta
