#include "ietrel/finite_model.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include "ietrel/error.hpp"

namespace ietrel::finite {

Bijection::Bijection(std::vector<std::size_t> image) : image_(std::move(image))
{
    std::vector<bool> seen(image_.size(), false);
    for (std::size_t x : image_) {
        if (x >= image_.size() || seen[x])
            throw PreconditionError("image is not a permutation");
        seen[x] = true;
    }
}

Bijection Bijection::identity(std::size_t m)
{
    std::vector<std::size_t> image(m);
    std::iota(image.begin(), image.end(), std::size_t{0});
    return Bijection(std::move(image));
}

bool Bijection::is_identity() const
{
    for (std::size_t i = 0; i < image_.size(); ++i)
        if (image_[i] != i)
            return false;
    return true;
}

namespace {

void require_same_size(const Bijection& f, const Bijection& g)
{
    if (f.size() != g.size())
        throw PreconditionError("bijections act on sets of different sizes");
}

} // namespace

Bijection compose(const Bijection& f, const Bijection& g)
{
    require_same_size(f, g);
    std::vector<std::size_t> image(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        image[i] = f(g(i));
    return Bijection(std::move(image));
}

Bijection inverse(const Bijection& f)
{
    std::vector<std::size_t> image(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        image[f(i)] = i;
    return Bijection(std::move(image));
}

Bijection power(const Bijection& f, unsigned n)
{
    Bijection out = Bijection::identity(f.size());
    for (unsigned i = 0; i < n; ++i)
        out = compose(f, out);
    return out;
}

std::vector<std::size_t> orbit_sizes(const Bijection& t)
{
    std::vector<bool> seen(t.size(), false);
    std::vector<std::size_t> sizes;
    for (std::size_t start = 0; start < t.size(); ++start) {
        if (seen[start])
            continue;
        std::size_t len = 0;
        for (std::size_t x = start; !seen[x]; x = t(x)) {
            seen[x] = true;
            ++len;
        }
        sizes.push_back(len);
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

Instance::Instance(Bijection h_, Bijection phi_) : h(std::move(h_)), phi(std::move(phi_))
{
    require_same_size(h, phi);
    const std::size_t m = h.size();
    in_a.assign(m, false);
    in_b.assign(m, false);
    in_c.assign(m, false);
    for (std::size_t p = 0; p < m; ++p) {
        if (h(p) == p)
            continue;
        if (phi(p) != p)
            in_a[p] = true;
        else
            in_b[p] = true;
    }
    for (std::size_t p = 0; p < m; ++p)
        if (in_a[p])
            in_c[phi(p)] = true;
}

Region Instance::region(std::size_t p) const
{
    // A and C can overlap only when the hypotheses fail; report A then.
    if (in_a[p])
        return Region::A;
    if (in_b[p])
        return Region::B;
    if (in_c[p])
        return Region::C;
    return Region::outside;
}

bool Instance::hypotheses_hold() const
{
    for (std::size_t p = 0; p < size(); ++p)
        if (in_a[p] && in_c[p])
            return false;
    return true;
}

bool check_hypotheses(const Bijection& h, const Bijection& phi)
{
    return Instance(h, phi).hypotheses_hold();
}

Bijection compute_k(const Bijection& h, const Bijection& phi)
{
    return compose(phi, compose(h, inverse(phi)));
}

Bijection compute_t(const Bijection& h, const Bijection& phi)
{
    const Bijection k = compute_k(h, phi);
    return compose(k, compose(inverse(h), compose(inverse(k), h)));
}

std::string_view situation_name(Situation s)
{
    switch (s) {
    case Situation::outside: return "outside";
    case Situation::I: return "I";
    case Situation::II: return "II";
    case Situation::III: return "III";
    case Situation::IVa: return "IVa";
    case Situation::IVb: return "IVb";
    case Situation::Va: return "Va";
    case Situation::Vb: return "Vb";
    case Situation::VI: return "VI";
    }
    return "?";
}

Prediction classify_point(std::size_t p, const Instance& in)
{
    const Bijection k = compute_k(in.h, in.phi);
    const Bijection h_inv = inverse(in.h);
    const Bijection k_inv = inverse(k);
    const auto fail = [&] {
        return InternalError("no situation of the case table applies to point " +
                             std::to_string(p));
    };

    switch (in.region(p)) {
    case Region::outside:
        return {Situation::outside, p};
    case Region::A:
        if (in.in_a[in.h(p)])
            return {Situation::I, p};
        if (in.in_b[in.h(p)])
            return {Situation::II, in.h(p)};
        throw fail();
    case Region::C: {
        const std::size_t q = k_inv(p);
        if (in.in_c[q])
            return {Situation::III, p};
        if (in.in_b[q]) {
            const std::size_t r = h_inv(q);
            if (in.in_a[r])
                return {Situation::IVa, r};
            if (in.in_b[r])
                return {Situation::IVb, q};
        }
        throw fail();
    }
    case Region::B:
        if (in.in_b[in.h(p)]) {
            const std::size_t q = h_inv(p);
            if (in.in_a[q])
                return {Situation::Va, q};
            if (in.in_b[q])
                return {Situation::Vb, p};
            throw fail();
        }
        if (in.in_a[in.h(p)])
            return {Situation::VI, k(p)};
        throw fail();
    }
    throw fail();
}

namespace {

// Portable bounded draw; distribution objects differ between standard
// libraries, this does not.
std::size_t draw(std::mt19937_64& rng, std::size_t bound)
{
    return bound == 0 ? 0 : static_cast<std::size_t>(rng() % bound);
}

void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng)
{
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[draw(rng, i)]);
}

// A uniformly random derangement of `elements`, as a map on {0..m-1} fixing
// everything else.
std::vector<std::size_t> derange(const std::vector<std::size_t>& elements, std::size_t m,
                                 std::mt19937_64& rng)
{
    std::vector<std::size_t> image(m);
    std::iota(image.begin(), image.end(), std::size_t{0});
    if (elements.empty())
        return image;
    constexpr int kCap = 100000;
    std::vector<std::size_t> targets = elements;
    for (int attempt = 0; attempt < kCap; ++attempt) {
        shuffle(targets, rng);
        bool ok = true;
        for (std::size_t i = 0; i < elements.size() && ok; ++i)
            ok = targets[i] != elements[i];
        if (ok) {
            for (std::size_t i = 0; i < elements.size(); ++i)
                image[elements[i]] = targets[i];
            return image;
        }
    }
    throw SearchCapExceeded("derangement sampling exceeded its rejection cap");
}

bool coin(std::mt19937_64& rng)
{
    return (rng() >> 63U) != 0;
}

} // namespace

Instance random_instance(std::size_t m, std::uint64_t seed)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                      static_cast<std::uint32_t>(m)};
    std::mt19937_64 rng(seq);

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle(order, rng);
    std::size_t fixed = draw(rng, m + 1);
    if (m - fixed == 1)
        ++fixed;
    const std::vector<std::size_t> moved_by_phi(order.begin() + static_cast<long>(fixed),
                                                order.end());
    const Bijection phi(derange(moved_by_phi, m, rng));

    std::vector<bool> in_a(m, false);
    std::vector<bool> in_phi_a(m, false);
    std::vector<std::size_t> support;
    std::vector<std::size_t> candidates = moved_by_phi;
    shuffle(candidates, rng);
    for (std::size_t p : candidates) {
        if (!coin(rng) || in_phi_a[p] || in_a[phi(p)])
            continue;
        in_a[p] = true;
        in_phi_a[phi(p)] = true;
        support.push_back(p);
    }
    for (std::size_t i = 0; i < fixed; ++i)
        if (coin(rng))
            support.push_back(order[i]);
    if (support.size() == 1)
        support.clear();
    std::sort(support.begin(), support.end());

    Instance out(Bijection(derange(support, m, rng)), phi);
    if (!out.hypotheses_hold())
        throw InternalError("random instance violates A n phi(A) = {}");
    return out;
}

void check_instance(const Instance& instance, CheckReport& report)
{
    ++report.instances;
    std::vector<std::string> problems;
    const Bijection t = compute_t(instance.h, instance.phi);
    if (!power(t, 6).is_identity())
        problems.emplace_back("T^6 is not the identity");
    for (std::size_t len : orbit_sizes(t))
        if (len > 3) {
            problems.emplace_back("T has a cycle of length " + std::to_string(len));
            break;
        }

    for (std::size_t p = 0; p < instance.size(); ++p) {
        Prediction pred{};
        try {
            pred = classify_point(p, instance);
        } catch (const InternalError& e) {
            problems.emplace_back(e.what());
            continue;
        }
        if (pred.image != t(p))
            problems.emplace_back("situation " + std::string(situation_name(pred.situation)) +
                                  " mispredicts T(" + std::to_string(p) + ")");
        const bool starred = pred.situation == Situation::outside ||
                             pred.situation == Situation::I || pred.situation == Situation::III ||
                             pred.situation == Situation::Vb;
        if (starred != (t(p) == p))
            problems.emplace_back("fixed point of T at " + std::to_string(p) +
                                  " disagrees with the starred situations");
        if (t(p) != p) {
            const Region from = instance.region(p);
            const Region to = instance.region(t(p));
            if (from == Region::A && to == Region::C)
                problems.emplace_back("T moves a point from A to C");
            ++report.moves[{from, to}][pred.situation];
        }
    }

    if (!problems.empty()) {
        ++report.failures;
        if (report.messages.size() < 10) {
            std::string msg = "h = [";
            for (std::size_t x : instance.h.image())
                msg += std::to_string(x) + " ";
            msg += "], phi = [";
            for (std::size_t x : instance.phi.image())
                msg += std::to_string(x) + " ";
            msg += "]: " + problems.front();
            report.messages.push_back(std::move(msg));
        }
    }
}

namespace {

void check_moves(CheckReport& report)
{
    for (const auto& [move, situations] : report.moves) {
        if (move.first == move.second)
            continue;
        if (situations.size() > 1) {
            ++report.failures;
            report.messages.emplace_back("a move between distinct regions is realized by " +
                                         std::to_string(situations.size()) + " situations");
        }
    }
}

} // namespace

CheckReport check_exhaustive(std::size_t m)
{
    CheckReport report;
    std::vector<std::size_t> perm_h(m);
    std::iota(perm_h.begin(), perm_h.end(), std::size_t{0});
    do {
        const Bijection h(perm_h);
        std::vector<std::size_t> perm_phi(m);
        std::iota(perm_phi.begin(), perm_phi.end(), std::size_t{0});
        do {
            Instance instance(h, Bijection(perm_phi));
            if (instance.hypotheses_hold())
                check_instance(instance, report);
        } while (std::next_permutation(perm_phi.begin(), perm_phi.end()));
    } while (std::next_permutation(perm_h.begin(), perm_h.end()));
    check_moves(report);
    return report;
}

CheckReport check_random(std::size_t max_size, std::size_t trials, std::uint64_t seed)
{
    if (max_size == 0)
        throw PreconditionError("instance size must be positive");
    CheckReport report;
    for (std::size_t i = 0; i < trials; ++i) {
        const std::size_t m = 1 + i % max_size;
        check_instance(random_instance(m, seed + i), report);
    }
    check_moves(report);
    return report;
}

} // namespace ietrel::finite
