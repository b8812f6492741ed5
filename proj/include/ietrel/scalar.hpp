#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace ietrel {

using Integer = mpz_class;
using Rational = mpq_class;

/// True for square-free integers d >= 2, the admissible discriminants.
bool is_square_free_discriminant(std::int64_t d);

/// Exact element rat + coef * sqrt(D) of a real quadratic field Q(sqrt(D)).
///
/// The discriminant is tracked per value in memory but only when it matters:
/// a value with coef == 0 is a plain rational, carries discriminant 0, and
/// combines with values of any field. Combining two irrational values whose
/// discriminants differ throws ContextMismatch.
///
/// Ordering is exact (see sign()); nothing in this class rounds.
class QuadExt {
public:
    QuadExt() = default;
    QuadExt(long value) : rat_(value) {}  // NOLINT(google-explicit-constructor)
    QuadExt(int value) : rat_(value) {}   // NOLINT(google-explicit-constructor)
    QuadExt(Rational value);              // NOLINT(google-explicit-constructor)
    QuadExt(Rational rat, Rational coef, std::int64_t discriminant);

    static QuadExt sqrt_of(std::int64_t discriminant);
    static QuadExt fraction(long num, long den);

    const Rational& rational_part() const noexcept { return rat_; }
    const Rational& sqrt_coefficient() const noexcept { return coef_; }
    /// 0 for rational values.
    std::int64_t discriminant() const noexcept { return disc_; }

    bool is_rational() const noexcept { return disc_ == 0; }
    bool is_zero() const noexcept { return disc_ == 0 && sgn(rat_) == 0; }

    /// Exact sign in {-1, 0, +1}.
    int sign() const;

    QuadExt operator-() const;
    QuadExt& operator+=(const QuadExt& rhs);
    QuadExt& operator-=(const QuadExt& rhs);
    QuadExt& operator*=(const QuadExt& rhs);
    QuadExt& operator/=(const QuadExt& rhs);

    friend QuadExt operator+(QuadExt lhs, const QuadExt& rhs) { return lhs += rhs; }
    friend QuadExt operator-(QuadExt lhs, const QuadExt& rhs) { return lhs -= rhs; }
    friend QuadExt operator*(QuadExt lhs, const QuadExt& rhs) { return lhs *= rhs; }
    friend QuadExt operator/(QuadExt lhs, const QuadExt& rhs) { return lhs /= rhs; }

    friend bool operator==(const QuadExt& lhs, const QuadExt& rhs)
    {
        return lhs.disc_ == rhs.disc_ && lhs.rat_ == rhs.rat_ && lhs.coef_ == rhs.coef_;
    }
    friend std::strong_ordering operator<=>(const QuadExt& lhs, const QuadExt& rhs);

private:
    void normalize();

    Rational rat_{0};
    Rational coef_{0};
    std::int64_t disc_ = 0;
};

/// Common discriminant of two values (0 when both are rational).
std::int64_t common_discriminant(std::int64_t lhs, std::int64_t rhs);

QuadExt abs(const QuadExt& x);
Integer floor(const QuadExt& x);
/// x - floor(x), always in [0, 1).
QuadExt mod_one(const QuadExt& x);

/// Approximate value for diagnostics and plotting. Never use for decisions.
double to_float(const QuadExt& x);

std::ostream& operator<<(std::ostream& os, const QuadExt& x);

/// Canonical text form: "p/q", "sqrt(D)", "p/q+r/s*sqrt(D)", ...
std::string to_string(const QuadExt& x);

} // namespace ietrel
