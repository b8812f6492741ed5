#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ietrel/iet.hpp"
#include "ietrel/interval_set.hpp"
#include "ietrel/rotation.hpp"
#include "ietrel/word.hpp"

namespace ietrel {

/// Which stage of the construction produced the relation.
enum class Branch { finite_order, h_trivial, t_trivial, t_sixth };

std::string_view branch_name(Branch b);
/// Inverse of branch_name; nullopt for unknown names.
std::optional<Branch> parse_branch(std::string_view name);

struct SynthesisOptions {
    /// Largest power M tried when shrinking the rotation rates.
    std::int64_t m_cap = 10'000'000;
    /// Largest number of radius halvings before giving up.
    int max_halvings = 256;
    /// Keep the radius strictly below a quarter of the shortest block.
    bool block_length_guard = true;
    /// Times the point set may be enlarged by the wrap points of s when the
    /// small-support check fails.
    int max_enlargements = 2;
};

/// A map together with the word in a (= r) and b (= g) that evaluates to it.
struct WordMap {
    Iet map;
    Word word;
};

/// Everything the construction chose and built, for inspection and tests.
struct SynthesisContext {
    std::int64_t fixing_power = 1;
    RotationSpec rotation;        ///< spec of r^L
    Iet r;                        ///< r^L as an IET
    Iet g;                        ///< g, in the normalized frame
    std::vector<QuadExt> points;  ///< P
    std::vector<QuadExt> moved_points;  ///< P' = P n supp(r)
    std::int64_t separation = 1;  ///< d
    QuadExt radius;               ///< epsilon
    std::int64_t rotation_power = 1;  ///< M
    Iet s;
    WordMap h;
    WordMap k;
    WordMap t;
    IntervalSet neighbourhood;        ///< X
    IntervalSet moved_neighbourhood;  ///< X'
    int enlargements = 0;
};

struct RelationCertificate {
    Word word;
    Branch branch = Branch::finite_order;
    /// Order q of r on the finite-order branch.
    std::optional<std::int64_t> order;
    std::optional<std::int64_t> fixing_power;
    std::optional<std::int64_t> separation;
    std::optional<QuadExt> radius;
    std::optional<std::int64_t> rotation_power;
    bool verified = false;
    std::vector<std::string> notes;

    friend bool operator==(const RelationCertificate&, const RelationCertificate&) = default;
};

struct SynthesisResult {
    RelationCertificate certificate;
    /// Present unless the finite-order branch short-circuited.
    std::optional<SynthesisContext> context;
};

/// Block starts b_0..b_(n-1) of r, their g-preimages, and the
/// discontinuities of g; sorted and deduplicated.
std::vector<QuadExt> compute_points(const RotationSpec& rotation, const Iet& g);

/// The points lying in supp(r).
std::vector<QuadExt> moved_points(const std::vector<QuadExt>& points, const Iet& r);

/// Smallest d >= 1 with r^d(P') disjoint from P'. Every point of P' must be
/// moved by r and have an infinite orbit; the search stops at |P'|^2 + 1.
std::int64_t find_separation(const Iet& r, const std::vector<QuadExt>& moved);

/// Union of the open circular balls of the given radius around the points.
IntervalSet neighbourhood(const std::vector<QuadExt>& points, const QuadExt& radius);

/// Largest radius of the form eps_0 / 2^t, with eps_0 half the smallest
/// circular gap between points, such that X' and r^d(X') are disjoint. When
/// `radius_bound` is set the radius is also kept strictly below it.
QuadExt find_radius(const Iet& r, const std::vector<QuadExt>& points, std::int64_t d,
                    const std::optional<QuadExt>& radius_bound = std::nullopt,
                    int max_halvings = 256);

/// Smallest M >= 1 with every block rate of r^M within radius / 10 of 0.
std::int64_t find_rotation_power(const RotationSpec& rotation, const QuadExt& radius,
                                 std::int64_t cap = 10'000'000);

/// h = [g^-1, s^-1] o [g^-1, s] with s = r^M. The word is expressed in the
/// original generator, so `a` carries the exponent scale L (r = a^L).
WordMap build_h(const Iet& r, const Iet& g, std::int64_t m, std::int64_t scale = 1);

/// support(h) is inside X.
bool check_small_support(const Iet& h, const IntervalSet& neighbourhood);

/// k = r^d h r^-d.
WordMap build_k(const Iet& r, const WordMap& h, std::int64_t d, std::int64_t scale = 1);

/// T = k h^-1 k^-1 h.
WordMap build_t(const WordMap& h, const WordMap& k);

/// Runs the whole construction for r = c r0 c^-1 (r0 given by `rotation`,
/// c the optional conjugator, identity when absent) and g. The emitted word
/// is verified to evaluate to the identity on (r, g) before returning.
SynthesisResult synthesize(const RotationSpec& rotation, const Iet& g,
                           const std::optional<Iet>& conjugator = std::nullopt,
                           const SynthesisOptions& options = {});

} // namespace ietrel
