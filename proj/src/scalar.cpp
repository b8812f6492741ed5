#include "ietrel/scalar.hpp"

#include <cmath>
#include <ostream>

#include "ietrel/error.hpp"

namespace ietrel {

bool is_square_free_discriminant(std::int64_t d)
{
    if (d < 2)
        return false;
    for (std::int64_t p = 2; p <= d / p; ++p)
        if (d % (p * p) == 0)
            return false;
    return true;
}

std::int64_t common_discriminant(std::int64_t lhs, std::int64_t rhs)
{
    if (lhs == 0)
        return rhs;
    if (rhs == 0 || rhs == lhs)
        return lhs;
    throw ContextMismatch("scalars from Q(sqrt(" + std::to_string(lhs) + ")) and Q(sqrt(" +
                          std::to_string(rhs) + ")) cannot be combined");
}

QuadExt::QuadExt(Rational value) : rat_(std::move(value))
{
    rat_.canonicalize();
}

QuadExt::QuadExt(Rational rat, Rational coef, std::int64_t discriminant)
    : rat_(std::move(rat)), coef_(std::move(coef)), disc_(discriminant)
{
    rat_.canonicalize();
    coef_.canonicalize();
    if (sgn(coef_) != 0 && !is_square_free_discriminant(disc_))
        throw PreconditionError("discriminant " + std::to_string(disc_) +
                                " is not a square-free integer >= 2");
    normalize();
}

QuadExt QuadExt::sqrt_of(std::int64_t discriminant)
{
    return QuadExt(Rational(0), Rational(1), discriminant);
}

QuadExt QuadExt::fraction(long num, long den)
{
    if (den == 0)
        throw PreconditionError("zero denominator");
    return QuadExt(Rational(num, den));
}

void QuadExt::normalize()
{
    if (sgn(coef_) == 0)
        disc_ = 0;
}

int QuadExt::sign() const
{
    const int sa = sgn(rat_);
    const int sb = sgn(coef_);
    if (sb == 0)
        return sa;
    if (sa == 0 || sa == sb)
        return sb;
    // Opposite signs: the larger magnitude wins; compare rat^2 with coef^2 * D.
    const Rational lhs = rat_ * rat_;
    const Rational rhs = coef_ * coef_ * Rational(static_cast<long>(disc_));
    const int c = cmp(lhs, rhs);
    if (c > 0)
        return sa;
    if (c < 0)
        return sb;
    return 0;
}

QuadExt QuadExt::operator-() const
{
    QuadExt out = *this;
    out.rat_ = -out.rat_;
    out.coef_ = -out.coef_;
    return out;
}

QuadExt& QuadExt::operator+=(const QuadExt& rhs)
{
    disc_ = common_discriminant(disc_, rhs.disc_);
    rat_ += rhs.rat_;
    coef_ += rhs.coef_;
    normalize();
    return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& rhs)
{
    disc_ = common_discriminant(disc_, rhs.disc_);
    rat_ -= rhs.rat_;
    coef_ -= rhs.coef_;
    normalize();
    return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& rhs)
{
    const std::int64_t d = common_discriminant(disc_, rhs.disc_);
    if (d == 0) {
        rat_ *= rhs.rat_;
        return *this;
    }
    Rational rat = rat_ * rhs.rat_ + coef_ * rhs.coef_ * Rational(static_cast<long>(d));
    Rational coef = rat_ * rhs.coef_ + coef_ * rhs.rat_;
    rat_ = std::move(rat);
    coef_ = std::move(coef);
    disc_ = d;
    normalize();
    return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& rhs)
{
    if (rhs.is_zero())
        throw PreconditionError("division by zero");
    if (rhs.is_rational()) {
        rat_ /= rhs.rat_;
        coef_ /= rhs.rat_;
        return *this;
    }
    // x / (c + e sqrt D) = x (c - e sqrt D) / (c^2 - e^2 D).
    const Rational norm =
        rhs.rat_ * rhs.rat_ - rhs.coef_ * rhs.coef_ * Rational(static_cast<long>(rhs.disc_));
    QuadExt conj(rhs.rat_ / norm, -rhs.coef_ / norm, rhs.disc_);
    return *this *= conj;
}

std::strong_ordering operator<=>(const QuadExt& lhs, const QuadExt& rhs)
{
    int s = 0;
    if (lhs.disc_ == 0 && rhs.disc_ == 0)
        s = cmp(lhs.rat_, rhs.rat_);
    else
        s = (lhs - rhs).sign();
    if (s < 0)
        return std::strong_ordering::less;
    if (s > 0)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

QuadExt abs(const QuadExt& x)
{
    return x.sign() < 0 ? -x : x;
}

namespace {

Integer floor_rational(const Rational& q)
{
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

} // namespace

Integer floor(const QuadExt& x)
{
    if (x.is_rational())
        return floor_rational(x.rational_part());

    // coef * sqrt(D) = +-sqrt(p^2 D) / q with p/q = coef. Bracket sqrt(p^2 D)
    // between s and s + 1 using the integer square root, then settle the at
    // most one remaining unit by exact comparison.
    const Rational& coef = x.sqrt_coefficient();
    const Integer p = coef.get_num();
    const Integer& q = coef.get_den();
    Integer radicand = p * p * static_cast<long>(x.discriminant());
    Integer s;
    mpz_sqrt(s.get_mpz_t(), radicand.get_mpz_t());
    const Integer lower_num = sgn(p) > 0 ? Integer(s) : Integer(-(s + 1));
    Rational lower(lower_num, q);
    lower.canonicalize();
    Integer n = floor_rational(x.rational_part() + lower);
    while ((x - QuadExt(Rational(n + 1))).sign() >= 0)
        ++n;
    return n;
}

QuadExt mod_one(const QuadExt& x)
{
    return x - QuadExt(Rational(floor(x)));
}

double to_float(const QuadExt& x)
{
    long double value = x.rational_part().get_d();
    if (!x.is_rational())
        value += static_cast<long double>(x.sqrt_coefficient().get_d()) *
                 std::sqrt(static_cast<long double>(x.discriminant()));
    return static_cast<double>(value);
}

std::string to_string(const QuadExt& x)
{
    const Rational& rat = x.rational_part();
    const Rational& coef = x.sqrt_coefficient();
    if (x.is_rational())
        return rat.get_str();

    std::string out;
    if (sgn(rat) != 0)
        out = rat.get_str();
    const std::string root = "sqrt(" + std::to_string(x.discriminant()) + ")";
    if (coef == 1) {
        out += out.empty() ? root : "+" + root;
    } else if (coef == -1) {
        out += "-" + root;
    } else {
        if (sgn(coef) > 0 && !out.empty())
            out += "+";
        out += coef.get_str() + "*" + root;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const QuadExt& x)
{
    return os << to_string(x);
}

} // namespace ietrel
