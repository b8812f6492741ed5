#include "ietrel/iet.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "ietrel/error.hpp"

namespace ietrel {

void PermLambdaSpec::validate() const
{
    const std::size_t n = permutation.size();
    if (n == 0)
        throw PreconditionError("permutation must be nonempty");
    if (lengths.size() != n)
        throw PreconditionError("permutation and lengths differ in size");
    std::vector<bool> seen(n, false);
    for (int p : permutation) {
        if (p < 1 || static_cast<std::size_t>(p) > n || seen[p - 1])
            throw PreconditionError("not a permutation of {1.." + std::to_string(n) + "}");
        seen[p - 1] = true;
    }
    QuadExt total;
    for (const auto& len : lengths) {
        if (len.sign() <= 0)
            throw PreconditionError("interval lengths must be positive");
        total += len;
    }
    if (total != QuadExt(1))
        throw PreconditionError("interval lengths must sum to 1, got " + to_string(total));
}

Iet::Iet() : starts_{QuadExt(0)}, shifts_{QuadExt(0)} {}

Iet::Iet(std::vector<QuadExt> starts, std::vector<QuadExt> shifts)
    : starts_(std::move(starts)), shifts_(std::move(shifts))
{
}

Iet Iet::from_pieces(std::vector<QuadExt> starts, std::vector<QuadExt> shifts)
{
    const std::size_t m = starts.size();
    if (m == 0 || shifts.size() != m)
        throw PreconditionError("an IET needs one shift per interval and at least one interval");
    if (!starts.front().is_zero())
        throw PreconditionError("the first interval must start at 0");
    const QuadExt one(1);
    for (std::size_t j = 0; j < m; ++j) {
        const QuadExt& end = j + 1 < m ? starts[j + 1] : one;
        if (starts[j] >= end)
            throw PreconditionError("breakpoints must increase strictly inside [0, 1)");
    }

    // Bijectivity: the translated intervals, sorted by left end, must tile
    // [0, 1) exactly.
    std::vector<std::pair<QuadExt, QuadExt>> images;
    images.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        const QuadExt& end = j + 1 < m ? starts[j + 1] : one;
        images.emplace_back(starts[j] + shifts[j], end + shifts[j]);
    }
    std::sort(images.begin(), images.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    QuadExt cursor(0);
    for (const auto& [lo, hi] : images) {
        if (lo != cursor)
            throw PreconditionError("image intervals do not tile [0, 1): gap or overlap at " +
                                    to_string(cursor));
        cursor = hi;
    }
    if (cursor != one)
        throw PreconditionError("image intervals do not tile [0, 1)");

    std::vector<QuadExt> out_starts;
    std::vector<QuadExt> out_shifts;
    out_starts.reserve(m);
    out_shifts.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        if (!out_shifts.empty() && out_shifts.back() == shifts[j])
            continue;
        out_starts.push_back(std::move(starts[j]));
        out_shifts.push_back(std::move(shifts[j]));
    }
    return Iet(std::move(out_starts), std::move(out_shifts));
}

Iet Iet::from_perm_lambda(const PermLambdaSpec& spec)
{
    spec.validate();
    const std::size_t n = spec.lengths.size();
    std::vector<QuadExt> starts(n);
    std::vector<QuadExt> shifts(n);
    QuadExt before;
    for (std::size_t j = 0; j < n; ++j) {
        starts[j] = before;
        QuadExt placed_before;
        for (std::size_t i = 0; i < n; ++i)
            if (spec.permutation[i] < spec.permutation[j])
                placed_before += spec.lengths[i];
        shifts[j] = placed_before - before;
        before += spec.lengths[j];
    }
    return from_pieces(std::move(starts), std::move(shifts));
}

Iet Iet::rotation(const QuadExt& amount)
{
    if (amount.sign() < 0 || amount >= QuadExt(1))
        throw PreconditionError("rotation amount must lie in [0, 1)");
    if (amount.is_zero())
        return Iet();
    return from_pieces({QuadExt(0), QuadExt(1) - amount}, {amount, amount - QuadExt(1)});
}

QuadExt Iet::interval_end(std::size_t j) const
{
    return j + 1 < starts_.size() ? starts_[j + 1] : QuadExt(1);
}

std::size_t Iet::locate(const QuadExt& x) const
{
    const auto it = std::upper_bound(starts_.begin(), starts_.end(), x);
    return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

QuadExt Iet::operator()(const QuadExt& x) const
{
    if (x.sign() < 0 || x >= QuadExt(1))
        throw PreconditionError("point " + to_string(x) + " is outside [0, 1)");
    return x + shifts_[locate(x)];
}

bool Iet::is_identity() const noexcept
{
    return shifts_.size() == 1 && shifts_.front().is_zero();
}

std::vector<QuadExt> Iet::discontinuities() const
{
    return {starts_.begin() + 1, starts_.end()};
}

IntervalSet Iet::support() const
{
    std::vector<Interval> pieces;
    for (std::size_t j = 0; j < starts_.size(); ++j)
        if (!shifts_[j].is_zero())
            pieces.push_back(Interval{starts_[j], interval_end(j), true, false});
    return IntervalSet(std::move(pieces));
}

QuadExt Iet::l1_distance_to_identity() const
{
    QuadExt total;
    for (std::size_t j = 0; j < starts_.size(); ++j)
        total += abs(shifts_[j]) * (interval_end(j) - starts_[j]);
    return total;
}

Iet compose(const Iet& f, const Iet& g)
{
    std::vector<QuadExt> starts;
    std::vector<QuadExt> shifts;
    starts.reserve(f.interval_count() + g.interval_count());
    shifts.reserve(f.interval_count() + g.interval_count());
    for (std::size_t j = 0; j < g.interval_count(); ++j) {
        const QuadExt& w = g.shifts()[j];
        const QuadExt image_end = g.interval_end(j) + w;
        QuadExt cursor = g.starts()[j];
        std::size_t k = f.locate(cursor + w);
        for (;;) {
            starts.push_back(cursor);
            shifts.push_back(w + f.shifts()[k]);
            QuadExt f_end = f.interval_end(k);
            if (f_end >= image_end)
                break;
            cursor = f_end - w;
            ++k;
        }
    }
    return Iet::from_pieces(std::move(starts), std::move(shifts));
}

Iet inverse(const Iet& f)
{
    std::vector<std::pair<QuadExt, QuadExt>> pieces;
    pieces.reserve(f.interval_count());
    for (std::size_t j = 0; j < f.interval_count(); ++j)
        pieces.emplace_back(f.starts()[j] + f.shifts()[j], -f.shifts()[j]);
    std::sort(pieces.begin(), pieces.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<QuadExt> starts;
    std::vector<QuadExt> shifts;
    for (auto& [start, shift] : pieces) {
        starts.push_back(std::move(start));
        shifts.push_back(std::move(shift));
    }
    return Iet::from_pieces(std::move(starts), std::move(shifts));
}

Iet power(const Iet& f, std::int64_t m)
{
    Iet base = m < 0 ? inverse(f) : f;
    // Work with the magnitude as unsigned so INT64_MIN is handled.
    std::uint64_t e = m < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(m)
                            : static_cast<std::uint64_t>(m);
    Iet result;
    while (e != 0) {
        if (e & 1U)
            result = compose(result, base);
        e >>= 1U;
        if (e != 0)
            base = compose(base, base);
    }
    return result;
}

Iet conjugate(const Iet& f, const Iet& c)
{
    return compose(c, compose(f, inverse(c)));
}

std::vector<QuadExt> orbit(const Iet& f, const QuadExt& x, std::size_t m)
{
    std::vector<QuadExt> out;
    out.reserve(m);
    if (m == 0)
        return out;
    out.push_back(x);
    (void)f(x);  // domain check even for m == 1
    for (std::size_t i = 1; i < m; ++i)
        out.push_back(f(out.back()));
    return out;
}

std::ostream& operator<<(std::ostream& os, const Iet& f)
{
    for (std::size_t j = 0; j < f.interval_count(); ++j) {
        if (j != 0)
            os << "; ";
        os << '[' << f.starts()[j] << ", " << f.interval_end(j) << ") +" << f.shifts()[j];
    }
    return os;
}

} // namespace ietrel
