#pragma once

#include <iosfwd>
#include <vector>

#include "ietrel/scalar.hpp"

namespace ietrel {

class Iet;

/// Interval with independently open or closed ends. The default shape is
/// half-open [lo, hi), which is what IET pieces and supports use; open balls
/// N_eps(p) need the other flags.
struct Interval {
    QuadExt lo;
    QuadExt hi;
    bool lo_closed = true;
    bool hi_closed = false;

    bool empty() const;
    bool contains(const QuadExt& x) const;
    friend bool operator==(const Interval&, const Interval&) = default;
};

Interval intersect(const Interval& lhs, const Interval& rhs);

/// A finite union of subintervals of [0, 1), kept as sorted maximal
/// components. Because components are maximal the representation of a set is
/// unique, so structural equality is set equality.
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<Interval> pieces);

    static IntervalSet half_open(const QuadExt& lo, const QuadExt& hi);
    static IntervalSet unit();
    /// The open ball of radius `radius` around `center` in R/Z, cut into at
    /// most two linear pieces of [0, 1). Requires 0 < radius <= 1/2.
    static IntervalSet circular_ball(const QuadExt& center, const QuadExt& radius);

    const std::vector<Interval>& pieces() const noexcept { return pieces_; }
    bool empty() const noexcept { return pieces_.empty(); }
    bool contains(const QuadExt& x) const;
    /// Total length.
    QuadExt measure() const;

    IntervalSet unite(const IntervalSet& other) const;
    IntervalSet intersect(const IntervalSet& other) const;
    bool is_disjoint(const IntervalSet& other) const;
    /// True iff other is a subset of *this.
    bool contains_set(const IntervalSet& other) const;
    /// f(S) computed piecewise: S is cut along the intervals of f and each part
    /// is translated.
    IntervalSet image_under(const Iet& f) const;

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    std::vector<Interval> pieces_;
};

std::ostream& operator<<(std::ostream& os, const IntervalSet& s);

} // namespace ietrel
