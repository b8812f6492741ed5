#include "ietrel/interval_set.hpp"

#include <algorithm>
#include <ostream>

#include "ietrel/error.hpp"
#include "ietrel/iet.hpp"

namespace ietrel {

bool Interval::empty() const
{
    const auto c = lo <=> hi;
    if (c > 0)
        return true;
    if (c == 0)
        return !(lo_closed && hi_closed);
    return false;
}

bool Interval::contains(const QuadExt& x) const
{
    const bool above = lo_closed ? lo <= x : lo < x;
    const bool below = hi_closed ? x <= hi : x < hi;
    return above && below;
}

Interval intersect(const Interval& lhs, const Interval& rhs)
{
    Interval out;
    const auto lo = lhs.lo <=> rhs.lo;
    if (lo > 0) {
        out.lo = lhs.lo;
        out.lo_closed = lhs.lo_closed;
    } else if (lo < 0) {
        out.lo = rhs.lo;
        out.lo_closed = rhs.lo_closed;
    } else {
        out.lo = lhs.lo;
        out.lo_closed = lhs.lo_closed && rhs.lo_closed;
    }
    const auto hi = lhs.hi <=> rhs.hi;
    if (hi < 0) {
        out.hi = lhs.hi;
        out.hi_closed = lhs.hi_closed;
    } else if (hi > 0) {
        out.hi = rhs.hi;
        out.hi_closed = rhs.hi_closed;
    } else {
        out.hi = lhs.hi;
        out.hi_closed = lhs.hi_closed && rhs.hi_closed;
    }
    return out;
}

namespace {

// Lower bounds order by value, a closed bound before an open one at the same
// value.
bool lower_before(const Interval& a, const Interval& b)
{
    const auto c = a.lo <=> b.lo;
    if (c != 0)
        return c < 0;
    return a.lo_closed && !b.lo_closed;
}

} // namespace

IntervalSet::IntervalSet(std::vector<Interval> pieces)
{
    std::erase_if(pieces, [](const Interval& i) { return i.empty(); });
    std::sort(pieces.begin(), pieces.end(), lower_before);
    for (auto& next : pieces) {
        if (!pieces_.empty()) {
            Interval& cur = pieces_.back();
            const auto touch = next.lo <=> cur.hi;
            if (touch < 0 || (touch == 0 && (next.lo_closed || cur.hi_closed))) {
                const auto upper = next.hi <=> cur.hi;
                if (upper > 0) {
                    cur.hi = std::move(next.hi);
                    cur.hi_closed = next.hi_closed;
                } else if (upper == 0) {
                    cur.hi_closed = cur.hi_closed || next.hi_closed;
                }
                continue;
            }
        }
        pieces_.push_back(std::move(next));
    }
}

IntervalSet IntervalSet::half_open(const QuadExt& lo, const QuadExt& hi)
{
    return IntervalSet({Interval{lo, hi, true, false}});
}

IntervalSet IntervalSet::unit()
{
    return half_open(QuadExt(0), QuadExt(1));
}

IntervalSet IntervalSet::circular_ball(const QuadExt& center, const QuadExt& radius)
{
    if (radius.sign() <= 0 || radius > QuadExt::fraction(1, 2))
        throw PreconditionError("ball radius must lie in (0, 1/2]");
    if (center.sign() < 0 || center >= QuadExt(1))
        throw PreconditionError("ball center must lie in [0, 1)");
    const QuadExt lo = center - radius;
    const QuadExt hi = center + radius;
    const QuadExt one(1);
    std::vector<Interval> pieces;
    if (lo.sign() < 0) {
        // Wraps below 0: 0 itself is inside the ball.
        pieces.push_back(Interval{QuadExt(0), hi, true, false});
        pieces.push_back(Interval{lo + one, one, false, false});
    } else if (hi > one) {
        pieces.push_back(Interval{lo, one, false, false});
        pieces.push_back(Interval{QuadExt(0), hi - one, true, false});
    } else {
        pieces.push_back(Interval{lo, hi, false, false});
    }
    return IntervalSet(std::move(pieces));
}

bool IntervalSet::contains(const QuadExt& x) const
{
    return std::any_of(pieces_.begin(), pieces_.end(),
                       [&](const Interval& i) { return i.contains(x); });
}

QuadExt IntervalSet::measure() const
{
    QuadExt total;
    for (const auto& i : pieces_)
        total += i.hi - i.lo;
    return total;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const
{
    std::vector<Interval> all = pieces_;
    all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
    return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const
{
    std::vector<Interval> out;
    for (const auto& a : pieces_)
        for (const auto& b : other.pieces_) {
            Interval i = ietrel::intersect(a, b);
            if (!i.empty())
                out.push_back(std::move(i));
        }
    return IntervalSet(std::move(out));
}

bool IntervalSet::is_disjoint(const IntervalSet& other) const
{
    for (const auto& a : pieces_)
        for (const auto& b : other.pieces_)
            if (!ietrel::intersect(a, b).empty())
                return false;
    return true;
}

bool IntervalSet::contains_set(const IntervalSet& other) const
{
    return other.intersect(*this) == other;
}

IntervalSet IntervalSet::image_under(const Iet& f) const
{
    std::vector<Interval> out;
    for (std::size_t j = 0; j < f.interval_count(); ++j) {
        const Interval domain{f.starts()[j], f.interval_end(j), true, false};
        const QuadExt& shift = f.shifts()[j];
        for (const auto& piece : pieces_) {
            Interval i = ietrel::intersect(piece, domain);
            if (i.empty())
                continue;
            i.lo += shift;
            i.hi += shift;
            out.push_back(std::move(i));
        }
    }
    return IntervalSet(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const IntervalSet& s)
{
    if (s.empty())
        return os << "{}";
    bool first = true;
    for (const auto& i : s.pieces()) {
        if (!first)
            os << " u ";
        first = false;
        os << (i.lo_closed ? '[' : '(') << i.lo << ", " << i.hi << (i.hi_closed ? ']' : ')');
    }
    return os;
}

} // namespace ietrel
