#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ietrel::finite {

/// A permutation of {0, ..., m - 1}; image[i] is where i goes.
class Bijection {
public:
    Bijection() = default;
    /// Throws PreconditionError unless `image` is a permutation.
    explicit Bijection(std::vector<std::size_t> image);
    static Bijection identity(std::size_t m);

    std::size_t size() const noexcept { return image_.size(); }
    std::size_t operator()(std::size_t x) const { return image_.at(x); }
    const std::vector<std::size_t>& image() const noexcept { return image_; }
    bool is_identity() const;

    friend bool operator==(const Bijection&, const Bijection&) = default;

private:
    std::vector<std::size_t> image_;
};

/// (f o g)(x) = f(g(x)).
Bijection compose(const Bijection& f, const Bijection& g);
Bijection inverse(const Bijection& f);
Bijection power(const Bijection& f, unsigned n);

/// Cycle lengths, sorted ascending.
std::vector<std::size_t> orbit_sizes(const Bijection& t);

enum class Region { A, B, C, outside };

/// Supports split as in the finite-order commutator argument:
/// A = supp(h) n supp(phi), B = supp(h) n Fix(phi), C = phi(A).
struct Instance {
    Bijection h;
    Bijection phi;
    std::vector<bool> in_a;
    std::vector<bool> in_b;
    std::vector<bool> in_c;

    Instance(Bijection h, Bijection phi);
    std::size_t size() const noexcept { return h.size(); }
    Region region(std::size_t p) const;
    /// A n phi(A) is empty.
    bool hypotheses_hold() const;
};

bool check_hypotheses(const Bijection& h, const Bijection& phi);

/// k = phi h phi^-1 and T = k h^-1 k^-1 h by direct composition.
Bijection compute_k(const Bijection& h, const Bijection& phi);
Bijection compute_t(const Bijection& h, const Bijection& phi);

enum class Situation { outside, I, II, III, IVa, IVb, Va, Vb, VI };

std::string_view situation_name(Situation s);

struct Prediction {
    Situation situation;
    /// Where the case table says T sends p.
    std::size_t image;
};

/// Case-table prediction of T(p) from the regions of p and its images under
/// h^+-1 and k^+-1; never evaluates T. Throws InternalError if no case
/// applies, which cannot happen when the hypotheses hold.
Prediction classify_point(std::size_t p, const Instance& instance);

/// Deterministic in (m, seed). phi fixes a random subset and deranges the
/// rest; A is grown greedily inside supp(phi) subject to A n phi(A) = {};
/// B is a random subset of Fix(phi); h is a uniformly sampled derangement of
/// A u B (rejection sampling, capped). Throws SearchCapExceeded if the
/// derangement sampler hits its cap.
Instance random_instance(std::size_t m, std::uint64_t seed);

struct CheckReport {
    std::size_t instances = 0;
    std::size_t failures = 0;
    std::vector<std::string> messages;  ///< first few failures
    /// How often each (region of p, region of T(p)) move was realized by each
    /// situation, over moved points.
    std::map<std::pair<Region, Region>, std::map<Situation, std::size_t>> moves;

    bool passed() const noexcept { return failures == 0; }
};

/// T^6 = id, cycle lengths in {1, 2, 3}, the case table agrees with T at
/// every point, fixed points come exactly from the starred situations, and
/// every move between distinct regions comes from a single situation and is
/// never A -> C.
void check_instance(const Instance& instance, CheckReport& report);

/// Every pair (h, phi) of permutations of {0..m-1} that satisfies the
/// hypotheses.
CheckReport check_exhaustive(std::size_t m);

/// `trials` instances with sizes cycling through 1..max_size.
CheckReport check_random(std::size_t max_size, std::size_t trials, std::uint64_t seed);

} // namespace ietrel::finite
