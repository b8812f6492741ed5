#include "doctest.h"
#include "ietrel/error.hpp"
#include "ietrel/rotation.hpp"
#include "support/generators.hpp"

using namespace ietrel;

namespace {

QuadExt q(long n, long d = 1)
{
    return QuadExt::fraction(n, d);
}

const QuadExt kAlpha = QuadExt::sqrt_of(2) - q(1);

} // namespace

TEST_CASE("to_iet examples")
{
    CHECK(to_iet({{q(1)}, {kAlpha}}) == Iet::rotation(kAlpha));
    const Iet r = to_iet({{q(1, 2), q(1, 2)}, {q(1, 2), q(0)}});
    CHECK(r(q(0)) == q(1, 4));
    CHECK(r(q(3, 8)) == q(1, 8));
    CHECK(r(q(3, 4)) == q(3, 4));
    CHECK(to_iet({{q(1, 3), q(2, 3)}, {q(0), q(0)}}).is_identity());
}

TEST_CASE("spec validation")
{
    CHECK_THROWS_AS(to_iet({{q(1, 2), q(1, 3)}, {q(0), q(0)}}), PreconditionError);
    CHECK_THROWS_AS(to_iet({{q(1)}, {q(1)}}), PreconditionError);
    CHECK_THROWS_AS(to_iet({{q(1)}, {q(0), q(0)}}), PreconditionError);
    CHECK_THROWS_AS(to_iet({{q(3, 2), q(-1, 2)}, {q(0), q(0)}}), PreconditionError);
}

TEST_CASE("classify examples")
{
    const RotationClass finite = classify({{q(1, 2), q(1, 2)}, {q(1, 2), q(1, 3)}});
    CHECK(finite.kind == RotationKind::finite_order);
    CHECK(finite.order == 6);
    CHECK(classify({{q(1)}, {kAlpha}}).kind == RotationKind::infinite_no_fixed);
    CHECK(classify({{q(1, 2), q(1, 2)}, {kAlpha, q(0)}}).kind == RotationKind::infinite_with_fixed);
    CHECK(classify({{q(1, 2), q(1, 2)}, {kAlpha, q(1, 3)}}).kind ==
          RotationKind::infinite_with_fixed);
    CHECK(classify({{q(1)}, {q(0)}}).order == 1);
}

TEST_CASE("fixing_power examples")
{
    CHECK(fixing_power({{q(1, 2), q(1, 2)}, {kAlpha, q(1, 3)}}) == 3);
    CHECK(fixing_power({{q(1)}, {kAlpha}}) == 1);
    CHECK(fixing_power({{q(1, 2), q(1, 2)}, {kAlpha, q(0)}}) == 1);
    CHECK_THROWS_AS(fixing_power({{q(1)}, {q(1, 2)}}), PreconditionError);
}

TEST_CASE("power_spec and block_rates examples")
{
    CHECK(power_spec({{q(1)}, {q(1, 2)}}, 2) == RotationSpec{{q(1)}, {q(0)}});
    CHECK(power_spec({{q(1)}, {kAlpha}}, 2) == RotationSpec{{q(1)}, {kAlpha + kAlpha}});
    CHECK(power_spec({{q(1, 2), q(1, 2)}, {kAlpha, q(1, 3)}}, 0).rates ==
          std::vector<QuadExt>{q(0), q(0)});
    CHECK(block_rates({{q(1)}, {q(1, 3)}}, 3) == std::vector<QuadExt>{q(0)});
    CHECK(block_rates({{q(1)}, {kAlpha}}, 70) ==
          std::vector<QuadExt>{QuadExt(Rational(-98), Rational(70), 2)});
}

TEST_CASE("first power near the identity")
{
    CHECK(first_power_near_identity({kAlpha}, q(1, 100), 1000) == 70);
    CHECK(first_power_near_identity({kAlpha}, q(1, 2), 1000) == 1);
    CHECK(first_power_near_identity({kAlpha, q(0)}, q(1, 100), 1000) == 70);
    CHECK_THROWS_AS(first_power_near_identity({kAlpha}, q(1, 100), 69), SearchCapExceeded);
    // Brute force over the same exact predicate.
    for (std::int64_t m = 1; m < 70; ++m) {
        const QuadExt rate = block_rates({{q(1)}, {kAlpha}}, m).front();
        CHECK_FALSE((rate < q(1, 100) || rate > q(99, 100)));
    }
}

TEST_CASE("power_within_l1 confirms on the composed map")
{
    const RotationSpec spec{{q(1, 3), q(2, 3)}, {kAlpha, q(0)}};
    const std::int64_t m = power_within_l1(spec, q(1, 1000), 1'000'000);
    CHECK(power(to_iet(spec), m).l1_distance_to_identity() < q(1, 1000));
}

TEST_CASE("rotation properties on random specs")
{
    testing::Gen gen(41);
    for (int i = 0; i < 40; ++i) {
        const std::int64_t d = i % 3 == 0 ? 2 : (i % 3 == 1 ? 3 : 5);
        const RotationSpec spec = gen.rotation(d);
        const Iet r = to_iet(spec);

        for (std::int64_t m = -20; m <= 20; ++m) {
            const Iet rm = power(r, m);
            CHECK(to_iet(power_spec(spec, m)) == rm);
            CHECK(rm.discontinuities().size() <= 2 * spec.block_count());
        }

        IntervalSet moving;
        const auto bounds = spec.block_boundaries();
        for (std::size_t j = 0; j < spec.block_count(); ++j)
            if (!spec.rates[j].is_zero())
                moving = moving.unite(IntervalSet::half_open(bounds[j], bounds[j + 1]));
        CHECK(r.support() == moving);

        const RotationClass cls = classify(spec);
        if (cls.kind == RotationKind::finite_order) {
            CHECK(power(r, cls.order).is_identity());
            for (std::int64_t m = 1; m < cls.order; ++m)
                CHECK_FALSE(power(r, m).is_identity());
        } else {
            const std::int64_t l = fixing_power(spec);
            for (const auto& rate : block_rates(spec, l))
                CHECK((rate.is_zero() || !rate.is_rational()));
        }
    }
}
