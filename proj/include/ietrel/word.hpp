#pragma once

#include <cstdint>
#include <vector>

#include "ietrel/iet.hpp"

namespace ietrel {

/// Abstract generators: a stands for the rotation r, b for the map g.
enum class Generator : char { a = 'a', b = 'b' };

struct Syllable {
    Generator generator;
    std::int64_t exponent;

    friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// A freely reduced word in the free group on {a, b}, stored as syllables
/// (generator, nonzero exponent) with alternating generators. The empty word
/// is the group identity.
///
/// Products read like composition: the word x y evaluates to X o Y, so the
/// rightmost syllable acts first.
class Word {
public:
    Word() = default;
    /// Freely reduces the given syllables.
    explicit Word(const std::vector<Syllable>& syllables);

    static Word generator_power(Generator g, std::int64_t exponent);

    const std::vector<Syllable>& syllables() const noexcept { return syllables_; }
    bool empty() const noexcept { return syllables_.empty(); }
    std::size_t syllable_count() const noexcept { return syllables_.size(); }

    Word inverse() const;
    Word pow(std::int64_t n) const;

    friend Word operator*(const Word& lhs, const Word& rhs);
    friend Word free_reduce(const std::vector<Syllable>& syllables);
    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Syllable> syllables_;
};

/// Canonical freely reduced form of an arbitrary syllable sequence. Zero
/// exponents are dropped and adjacent syllables of one generator merge,
/// cascading as cancellations expose new neighbours.
Word free_reduce(const std::vector<Syllable>& syllables);

/// Evaluates w with a -> r, b -> g, using repeated squaring for powers.
Iet eval_word(const Word& w, const Iet& r, const Iet& g);

/// Independent evaluation for verification: every syllable x^k is built by
/// |k| successive single compositions (no squaring) and the syllables are
/// folded left to right.
Iet eval_word_naive(const Word& w, const Iet& r, const Iet& g);

} // namespace ietrel
