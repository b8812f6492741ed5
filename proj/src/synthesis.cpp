#include "ietrel/synthesis.hpp"

#include <algorithm>
#include <array>

#include "ietrel/error.hpp"

namespace ietrel {

namespace {

constexpr std::array<std::pair<Branch, std::string_view>, 4> kBranchNames{{
    {Branch::finite_order, "finite_order"},
    {Branch::h_trivial, "h_trivial"},
    {Branch::t_trivial, "T_trivial"},
    {Branch::t_sixth, "T_sixth"},
}};

std::int64_t checked_product(std::int64_t x, std::int64_t y)
{
    std::int64_t out = 0;
    if (__builtin_mul_overflow(x, y, &out))
        throw PreconditionError("word exponent overflows 64 bits");
    return out;
}

void sort_unique(std::vector<QuadExt>& points)
{
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
}

bool contains_sorted(const std::vector<QuadExt>& sorted, const QuadExt& x)
{
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

QuadExt shortest_block(const RotationSpec& rotation)
{
    return *std::min_element(rotation.lengths.begin(), rotation.lengths.end());
}

} // namespace

std::string_view branch_name(Branch b)
{
    for (const auto& [branch, name] : kBranchNames)
        if (branch == b)
            return name;
    return "unknown";
}

std::optional<Branch> parse_branch(std::string_view name)
{
    for (const auto& [branch, text] : kBranchNames)
        if (text == name)
            return branch;
    return std::nullopt;
}

std::vector<QuadExt> compute_points(const RotationSpec& rotation, const Iet& g)
{
    const Iet g_inv = inverse(g);
    std::vector<QuadExt> points;
    const auto boundaries = rotation.block_boundaries();
    for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
        points.push_back(boundaries[i]);
        points.push_back(g_inv(boundaries[i]));
    }
    for (const auto& x : g.discontinuities())
        points.push_back(x);
    sort_unique(points);
    return points;
}

std::vector<QuadExt> moved_points(const std::vector<QuadExt>& points, const Iet& r)
{
    std::vector<QuadExt> out;
    for (const auto& p : points)
        if (r(p) != p)
            out.push_back(p);
    return out;
}

std::int64_t find_separation(const Iet& r, const std::vector<QuadExt>& moved)
{
    std::vector<QuadExt> sorted = moved;
    sort_unique(sorted);
    for (const auto& p : sorted)
        if (r(p) == p)
            throw PreconditionError("point " + to_string(p) + " is fixed by r");

    const auto n = static_cast<std::int64_t>(sorted.size());
    const std::int64_t limit = n * n + 1;
    std::vector<QuadExt> images = sorted;
    for (std::int64_t d = 1; d <= limit; ++d) {
        for (auto& x : images)
            x = r(x);
        const bool clear = std::none_of(images.begin(), images.end(), [&](const QuadExt& x) {
            return contains_sorted(sorted, x);
        });
        if (clear)
            return d;
    }
    throw PreconditionError("no separating power up to " + std::to_string(limit) +
                            "; some moved point has a finite orbit");
}

IntervalSet neighbourhood(const std::vector<QuadExt>& points, const QuadExt& radius)
{
    IntervalSet out;
    for (const auto& p : points)
        out = out.unite(IntervalSet::circular_ball(p, radius));
    return out;
}

QuadExt find_radius(const Iet& r, const std::vector<QuadExt>& points, std::int64_t d,
                    const std::optional<QuadExt>& radius_bound, int max_halvings)
{
    std::vector<QuadExt> sorted = points;
    sort_unique(sorted);

    // Half the smallest circular gap keeps the open balls pairwise disjoint.
    QuadExt gap(1);
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        gap = std::min(gap, sorted[i + 1] - sorted[i]);
    if (sorted.size() > 1)
        gap = std::min(gap, QuadExt(1) - sorted.back() + sorted.front());
    QuadExt radius = gap / QuadExt(2);

    const IntervalSet moved_region = r.support();
    const Iet r_d = power(r, d);
    const QuadExt half = QuadExt::fraction(1, 2);
    for (int t = 0; t <= max_halvings; ++t) {
        const bool bounded = !radius_bound || radius < *radius_bound;
        if (bounded) {
            const IntervalSet moved_x = neighbourhood(sorted, radius).intersect(moved_region);
            if (moved_x.is_disjoint(moved_x.image_under(r_d)))
                return radius;
        }
        radius *= half;
    }
    throw SearchCapExceeded("radius search did not separate X' from r^d(X') after " +
                            std::to_string(max_halvings) + " halvings");
}

std::int64_t find_rotation_power(const RotationSpec& rotation, const QuadExt& radius,
                                 std::int64_t cap)
{
    return first_power_near_identity(rotation.rates, radius / QuadExt(10), cap);
}

WordMap build_h(const Iet& r, const Iet& g, std::int64_t m, std::int64_t scale)
{
    const Iet s = power(r, m);
    const Iet s_inv = inverse(s);
    const Iet g_inv = inverse(g);
    // g^-1 s^-1 g s g^-1 s g s^-1, rightmost first.
    Iet h = s_inv;
    for (const Iet* f : {&g, &s, &g_inv, &s, &g, &s_inv, &g_inv})
        h = compose(*f, h);

    const std::int64_t e = checked_product(m, scale);
    using enum Generator;
    Word w({{b, -1}, {a, -e}, {b, 1}, {a, e}, {b, -1}, {a, e}, {b, 1}, {a, -e}});
    return {std::move(h), std::move(w)};
}

bool check_small_support(const Iet& h, const IntervalSet& neighbourhood)
{
    return neighbourhood.contains_set(h.support());
}

WordMap build_k(const Iet& r, const WordMap& h, std::int64_t d, std::int64_t scale)
{
    const std::int64_t e = checked_product(d, scale);
    const Word shift = Word::generator_power(Generator::a, e);
    return {conjugate(h.map, power(r, d)), shift * h.word * shift.inverse()};
}

WordMap build_t(const WordMap& h, const WordMap& k)
{
    const Iet h_inv = inverse(h.map);
    const Iet k_inv = inverse(k.map);
    Iet t = compose(k.map, compose(h_inv, compose(k_inv, h.map)));
    Word w = k.word * h.word.inverse() * k.word.inverse() * h.word;
    return {std::move(t), std::move(w)};
}

SynthesisResult synthesize(const RotationSpec& rotation, const Iet& g,
                           const std::optional<Iet>& conjugator, const SynthesisOptions& options)
{
    rotation.validate();
    const Iet r0 = to_iet(rotation);
    // The construction runs on (r0, g0) with g0 = c^-1 g c; relations transfer
    // unchanged to (c r0 c^-1, g).
    const Iet g0 = conjugator ? conjugate(g, inverse(*conjugator)) : g;
    const Iet r_actual = conjugator ? conjugate(r0, *conjugator) : r0;

    SynthesisResult result;
    RelationCertificate& cert = result.certificate;

    const RotationClass cls = classify(rotation);
    if (cls.kind == RotationKind::finite_order) {
        cert.branch = Branch::finite_order;
        cert.order = cls.order;
        cert.word = Word::generator_power(Generator::a, cls.order);
    } else {
        SynthesisContext ctx;
        ctx.fixing_power = fixing_power(rotation);
        ctx.rotation = power_spec(rotation, ctx.fixing_power);
        ctx.r = to_iet(ctx.rotation);
        ctx.g = g0;
        ctx.points = compute_points(ctx.rotation, g0);
        const IntervalSet moved_region = ctx.r.support();
        const std::optional<QuadExt> bound =
            options.block_length_guard
                ? std::optional<QuadExt>(shortest_block(ctx.rotation) / QuadExt(4))
                : std::nullopt;

        for (;;) {
            ctx.moved_points = moved_points(ctx.points, ctx.r);
            ctx.separation = find_separation(ctx.r, ctx.moved_points);
            ctx.radius =
                find_radius(ctx.r, ctx.points, ctx.separation, bound, options.max_halvings);
            ctx.rotation_power = find_rotation_power(ctx.rotation, ctx.radius, options.m_cap);
            ctx.s = power(ctx.r, ctx.rotation_power);
            ctx.h = build_h(ctx.r, g0, ctx.rotation_power, ctx.fixing_power);
            ctx.neighbourhood = neighbourhood(ctx.points, ctx.radius);
            ctx.moved_neighbourhood = ctx.neighbourhood.intersect(moved_region);
            if (check_small_support(ctx.h.map, ctx.neighbourhood))
                break;
            if (ctx.enlargements >= options.max_enlargements)
                throw InternalError("support of h escapes X even after enlarging P");
            ++ctx.enlargements;
            cert.notes.push_back("support of h not inside X; enlarged P with the wrap points of s");
            for (const auto& x : ctx.s.discontinuities())
                ctx.points.push_back(x);
            sort_unique(ctx.points);
        }

        cert.fixing_power = ctx.fixing_power;
        cert.separation = ctx.separation;
        cert.radius = ctx.radius;
        cert.rotation_power = ctx.rotation_power;

        if (ctx.h.map.is_identity()) {
            cert.branch = Branch::h_trivial;
            cert.word = ctx.h.word;
        } else {
            ctx.k = build_k(ctx.r, ctx.h, ctx.separation, ctx.fixing_power);
            ctx.t = build_t(ctx.h, ctx.k);
            if (ctx.t.map.is_identity()) {
                cert.branch = Branch::t_trivial;
                cert.word = ctx.t.word;
            } else {
                if (!power(ctx.t.map, 6).is_identity())
                    throw InternalError("T^6 is not the identity");
                cert.branch = Branch::t_sixth;
                cert.word = ctx.t.word.pow(6);
            }
        }
        result.context = std::move(ctx);
    }

    if (cert.word.empty())
        throw InternalError("relation word reduced to the empty word");
    if (!eval_word(cert.word, r_actual, g).is_identity())
        throw InternalError("relation word does not evaluate to the identity");
    cert.verified = true;
    return result;
}

} // namespace ietrel
