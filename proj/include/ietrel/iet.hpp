#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ietrel/interval_set.hpp"
#include "ietrel/scalar.hpp"

namespace ietrel {

/// Permutation/length data of the simplex parameterization f_(pi, lambda).
/// `permutation` is one-based: permutation[j - 1] is the position that interval
/// j occupies after the exchange.
struct PermLambdaSpec {
    std::vector<int> permutation;
    std::vector<QuadExt> lengths;

    void validate() const;
    friend bool operator==(const PermLambdaSpec&, const PermLambdaSpec&) = default;
};

/// An interval exchange transformation of [0, 1) in canonical form.
///
/// Interval j is [starts[j], starts[j + 1]) (the last one ends at 1) and is
/// moved by shifts[j]. Canonical form means starts[0] == 0, the starts are
/// strictly increasing, and adjacent intervals never share a shift, so two
/// maps are equal iff their representations are equal.
class Iet {
public:
    /// The identity map.
    Iet();

    /// Validates that the pieces define a bijection of [0, 1) and
    /// canonicalizes. Throws PreconditionError otherwise.
    static Iet from_pieces(std::vector<QuadExt> starts, std::vector<QuadExt> shifts);
    static Iet from_perm_lambda(const PermLambdaSpec& spec);
    /// x -> x + amount mod 1, for amount in [0, 1).
    static Iet rotation(const QuadExt& amount);

    std::size_t interval_count() const noexcept { return starts_.size(); }
    const std::vector<QuadExt>& starts() const noexcept { return starts_; }
    const std::vector<QuadExt>& shifts() const noexcept { return shifts_; }
    QuadExt interval_end(std::size_t j) const;
    /// Index of the interval containing x; x must lie in [0, 1).
    std::size_t locate(const QuadExt& x) const;

    /// f(x). Throws PreconditionError unless 0 <= x < 1.
    QuadExt operator()(const QuadExt& x) const;

    bool is_identity() const noexcept;
    /// Interior breakpoints; each is a genuine jump of the canonical form.
    std::vector<QuadExt> discontinuities() const;
    /// Complement of the fixed-point set.
    IntervalSet support() const;
    /// Exact value of the integral of |f(x) - x| over [0, 1).
    QuadExt l1_distance_to_identity() const;

    friend bool operator==(const Iet&, const Iet&) = default;

private:
    Iet(std::vector<QuadExt> starts, std::vector<QuadExt> shifts);

    std::vector<QuadExt> starts_;
    std::vector<QuadExt> shifts_;
};

/// (f o g)(x) = f(g(x)).
Iet compose(const Iet& f, const Iet& g);
Iet inverse(const Iet& f);
/// m-fold composition by repeated squaring; negative m uses the inverse.
Iet power(const Iet& f, std::int64_t m);
/// c o f o c^-1.
Iet conjugate(const Iet& f, const Iet& c);
/// [x, f(x), ..., f^(m-1)(x)].
std::vector<QuadExt> orbit(const Iet& f, const QuadExt& x, std::size_t m);

std::ostream& operator<<(std::ostream& os, const Iet& f);

} // namespace ietrel
