#include "ietrel/rotation.hpp"

#include <string>

#include "ietrel/error.hpp"

namespace ietrel {

namespace {

std::int64_t to_int64(const Integer& n, const char* what)
{
    if (!n.fits_slong_p())
        throw PreconditionError(std::string(what) + " does not fit in 64 bits");
    return n.get_si();
}

// Scan M = start, start + 1, ... for the first M whose rates are all within
// threshold of 0 on the circle.
std::int64_t scan_rates(const std::vector<QuadExt>& rates, const QuadExt& threshold,
                        std::int64_t start, std::int64_t cap)
{
    if (threshold.sign() <= 0)
        throw PreconditionError("threshold must be positive");
    const QuadExt one(1);
    const QuadExt upper = one - threshold;

    std::vector<QuadExt> steps;
    for (const auto& rate : rates) {
        QuadExt reduced = mod_one(rate);
        if (!reduced.is_zero())
            steps.push_back(std::move(reduced));
    }
    if (steps.empty())
        return start;

    std::vector<QuadExt> current;
    current.reserve(steps.size());
    for (const auto& step : steps)
        current.push_back(mod_one(step * QuadExt(static_cast<long>(start - 1))));

    for (std::int64_t m = start; m <= cap; ++m) {
        bool near = true;
        for (std::size_t j = 0; j < steps.size(); ++j) {
            current[j] += steps[j];
            if (current[j] >= one)
                current[j] -= one;
            if (near && !(current[j] < threshold || current[j] > upper))
                near = false;
        }
        if (near)
            return m;
    }
    throw SearchCapExceeded("no power M <= " + std::to_string(cap) +
                            " brings every block rate within " + to_string(threshold) +
                            " of 0; raise the cap");
}

} // namespace

std::vector<QuadExt> RotationSpec::block_boundaries() const
{
    std::vector<QuadExt> out;
    out.reserve(lengths.size() + 1);
    QuadExt cursor;
    out.push_back(cursor);
    for (const auto& len : lengths) {
        cursor += len;
        out.push_back(cursor);
    }
    return out;
}

void RotationSpec::validate() const
{
    if (lengths.empty())
        throw PreconditionError("a disjoint rotation needs at least one block");
    if (rates.size() != lengths.size())
        throw PreconditionError("lengths and rates differ in size");
    QuadExt total;
    for (const auto& len : lengths) {
        if (len.sign() <= 0)
            throw PreconditionError("block lengths must be positive");
        total += len;
    }
    if (total != QuadExt(1))
        throw PreconditionError("block lengths must sum to 1, got " + to_string(total));
    for (const auto& rate : rates)
        if (rate.sign() < 0 || rate >= QuadExt(1))
            throw PreconditionError("rotation rates must lie in [0, 1), got " + to_string(rate));
}

Iet to_iet(const RotationSpec& spec)
{
    spec.validate();
    std::vector<QuadExt> starts;
    std::vector<QuadExt> shifts;
    QuadExt block_start;
    for (std::size_t j = 0; j < spec.block_count(); ++j) {
        const QuadExt& len = spec.lengths[j];
        const QuadExt& rate = spec.rates[j];
        if (rate.is_zero()) {
            starts.push_back(block_start);
            shifts.push_back(QuadExt(0));
        } else {
            const QuadExt moved = len * rate;
            starts.push_back(block_start);
            shifts.push_back(moved);
            starts.push_back(block_start + len - moved);
            shifts.push_back(moved - len);
        }
        block_start += len;
    }
    return Iet::from_pieces(std::move(starts), std::move(shifts));
}

RotationClass classify(const RotationSpec& spec)
{
    spec.validate();
    Integer order = 1;
    bool any_rational = false;
    bool all_rational = true;
    for (const auto& rate : spec.rates) {
        if (rate.is_rational()) {
            any_rational = true;
            mpz_lcm(order.get_mpz_t(), order.get_mpz_t(),
                    rate.rational_part().get_den_mpz_t());
        } else {
            all_rational = false;
        }
    }
    if (all_rational)
        return {RotationKind::finite_order, to_int64(order, "order")};
    return {any_rational ? RotationKind::infinite_with_fixed : RotationKind::infinite_no_fixed,
            0};
}

std::int64_t fixing_power(const RotationSpec& spec)
{
    if (classify(spec).kind == RotationKind::finite_order)
        throw PreconditionError("fixing power is defined only for infinite-order rotations");
    Integer l = 1;
    for (const auto& rate : spec.rates)
        if (rate.is_rational())
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), rate.rational_part().get_den_mpz_t());
    return to_int64(l, "fixing power");
}

std::vector<QuadExt> block_rates(const RotationSpec& spec, std::int64_t power)
{
    std::vector<QuadExt> out;
    out.reserve(spec.rates.size());
    const QuadExt factor(static_cast<long>(power));
    for (const auto& rate : spec.rates)
        out.push_back(mod_one(rate * factor));
    return out;
}

RotationSpec power_spec(const RotationSpec& spec, std::int64_t m)
{
    return RotationSpec{spec.lengths, block_rates(spec, m)};
}

std::int64_t first_power_near_identity(const std::vector<QuadExt>& rates,
                                       const QuadExt& threshold, std::int64_t cap)
{
    return scan_rates(rates, threshold, 1, cap);
}

std::int64_t power_within_l1(const RotationSpec& spec, const QuadExt& bound, std::int64_t cap)
{
    const Iet r = to_iet(spec);
    const QuadExt threshold = bound / QuadExt(2);
    std::int64_t start = 1;
    while (start <= cap) {
        const std::int64_t m = scan_rates(spec.rates, threshold, start, cap);
        if (power(r, m).l1_distance_to_identity() < bound)
            return m;
        start = m + 1;
    }
    throw SearchCapExceeded("no power M <= " + std::to_string(cap) + " within L1 distance " +
                            to_string(bound) + " of the identity");
}

} // namespace ietrel
