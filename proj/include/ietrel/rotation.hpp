#pragma once

#include <cstdint>
#include <vector>

#include "ietrel/iet.hpp"
#include "ietrel/scalar.hpp"

namespace ietrel {

/// A disjoint rotation map: [0, 1) is cut into blocks of the given lengths,
/// and block j is rotated (as a circle of its own length) by the fraction
/// rates[j] of that length.
struct RotationSpec {
    std::vector<QuadExt> lengths;
    std::vector<QuadExt> rates;

    std::size_t block_count() const noexcept { return lengths.size(); }
    /// Block boundaries 0 = b_0 < b_1 < ... < b_n = 1.
    std::vector<QuadExt> block_boundaries() const;
    void validate() const;

    friend bool operator==(const RotationSpec&, const RotationSpec&) = default;
};

Iet to_iet(const RotationSpec& spec);

enum class RotationKind { finite_order, infinite_no_fixed, infinite_with_fixed };

struct RotationClass {
    RotationKind kind;
    /// Order of the map for finite_order, 0 otherwise.
    std::int64_t order = 0;
};

RotationClass classify(const RotationSpec& spec);

/// Smallest L >= 1 killing every rational rate, so that r^L fixes each
/// periodic block pointwise. Throws PreconditionError on finite-order specs.
std::int64_t fixing_power(const RotationSpec& spec);

/// Spec of r^m: same blocks, rates m * rate mod 1.
RotationSpec power_spec(const RotationSpec& spec, std::int64_t m);

/// Per-block rates of r^M, each reduced into [0, 1).
std::vector<QuadExt> block_rates(const RotationSpec& spec, std::int64_t power);

/// Smallest M in [1, cap] whose block rates M * rate mod 1 all lie within
/// `threshold` of 0 on the circle, i.e. in [0, threshold) u (1 - threshold, 1).
/// Exact incremental scan. Throws SearchCapExceeded if no M <= cap qualifies.
std::int64_t first_power_near_identity(const std::vector<QuadExt>& rates,
                                       const QuadExt& threshold, std::int64_t cap);

/// Some M <= cap with l1_distance_to_identity(r^M) < bound. Candidates come
/// from the block-rate scan at threshold bound / 2 and are confirmed on the
/// composed map.
std::int64_t power_within_l1(const RotationSpec& spec, const QuadExt& bound, std::int64_t cap);

} // namespace ietrel
