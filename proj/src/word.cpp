#include "ietrel/word.hpp"

#include <map>
#include <utility>

#include "ietrel/error.hpp"

namespace ietrel {

Word free_reduce(const std::vector<Syllable>& syllables)
{
    std::vector<Syllable> stack;
    stack.reserve(syllables.size());
    for (const auto& s : syllables) {
        if (s.exponent == 0)
            continue;
        if (!stack.empty() && stack.back().generator == s.generator) {
            stack.back().exponent += s.exponent;
            if (stack.back().exponent == 0)
                stack.pop_back();
        } else {
            stack.push_back(s);
        }
    }
    // The stack is reduced by construction; bypass a second pass.
    Word w;
    w.syllables_ = std::move(stack);
    return w;
}

Word::Word(const std::vector<Syllable>& syllables) : syllables_(free_reduce(syllables).syllables_)
{
}

Word Word::generator_power(Generator g, std::int64_t exponent)
{
    return Word({Syllable{g, exponent}});
}

Word Word::inverse() const
{
    Word out;
    out.syllables_.reserve(syllables_.size());
    for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
        out.syllables_.push_back(Syllable{it->generator, -it->exponent});
    return out;
}

Word Word::pow(std::int64_t n) const
{
    const Word base = n < 0 ? inverse() : *this;
    const std::int64_t count = n < 0 ? -n : n;
    std::vector<Syllable> all;
    all.reserve(base.syllables_.size() * static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i)
        all.insert(all.end(), base.syllables_.begin(), base.syllables_.end());
    return free_reduce(all);
}

Word operator*(const Word& lhs, const Word& rhs)
{
    std::vector<Syllable> all = lhs.syllables_;
    all.insert(all.end(), rhs.syllables_.begin(), rhs.syllables_.end());
    return free_reduce(all);
}

Iet eval_word(const Word& w, const Iet& r, const Iet& g)
{
    Iet result;
    for (const auto& s : w.syllables())
        result = compose(result, power(s.generator == Generator::a ? r : g, s.exponent));
    return result;
}

Iet eval_word_naive(const Word& w, const Iet& r, const Iet& g)
{
    std::map<std::pair<Generator, std::int64_t>, Iet> cache;
    Iet result;
    for (const auto& s : w.syllables()) {
        const auto key = std::make_pair(s.generator, s.exponent);
        auto it = cache.find(key);
        if (it == cache.end()) {
            const Iet& base = s.generator == Generator::a ? r : g;
            const Iet step = s.exponent < 0 ? inverse(base) : base;
            const std::int64_t count = s.exponent < 0 ? -s.exponent : s.exponent;
            Iet acc;
            for (std::int64_t i = 0; i < count; ++i)
                acc = compose(acc, step);
            it = cache.emplace(key, std::move(acc)).first;
        }
        result = compose(result, it->second);
    }
    return result;
}

} // namespace ietrel
