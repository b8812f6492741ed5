#include <algorithm>

#include "doctest.h"
#include "ietrel/error.hpp"
#include "ietrel/finite_model.hpp"

using namespace ietrel::finite;

namespace {

// Omega = {a0, b0, c0} as {0, 1, 2}.
const Bijection kH({1, 0, 2});
const Bijection kPhi({2, 1, 0});

} // namespace

TEST_CASE("bijections")
{
    CHECK_THROWS_AS(Bijection({0, 0}), ietrel::PreconditionError);
    CHECK(compose(kH, inverse(kH)).is_identity());
    CHECK(power(kPhi, 2).is_identity());
    CHECK(orbit_sizes(Bijection::identity(5)) == std::vector<std::size_t>(5, 1));
    CHECK(orbit_sizes(Bijection({1, 2, 0, 4, 3})) == std::vector<std::size_t>{2, 3});
}

TEST_CASE("three-point example")
{
    CHECK(check_hypotheses(kH, kPhi));
    CHECK(compute_k(kH, kPhi) == Bijection({0, 2, 1}));
    const Bijection t = compute_t(kH, kPhi);
    CHECK(t == Bijection({1, 2, 0}));
    CHECK(orbit_sizes(t) == std::vector<std::size_t>{3});

    const Instance instance(kH, kPhi);
    CHECK(instance.region(0) == Region::A);
    CHECK(instance.region(1) == Region::B);
    CHECK(instance.region(2) == Region::C);
    const Prediction b0 = classify_point(1, instance);
    CHECK(b0.situation == Situation::VI);
    CHECK(b0.image == 2);
    for (std::size_t p = 0; p < 3; ++p)
        CHECK(classify_point(p, instance).image == t(p));
}

TEST_CASE("hypothesis examples")
{
    CHECK(check_hypotheses(Bijection::identity(4), Bijection({1, 0, 3, 2})));
    CHECK(check_hypotheses(Bijection({1, 0, 3, 2}), Bijection::identity(4)));
    // A = {0, 1} meets phi(A) = {1, 2}.
    CHECK_FALSE(check_hypotheses(Bijection({1, 0, 2}), Bijection({1, 2, 0})));
    CHECK_THROWS_AS(check_hypotheses(Bijection::identity(2), Bijection::identity(3)),
                    ietrel::PreconditionError);
}

TEST_CASE("trivial commutators")
{
    CHECK(compute_t(Bijection::identity(4), Bijection({1, 0, 3, 2})).is_identity());
    // B empty: h lives on supp(phi), so h and k have disjoint supports.
    const Bijection h({1, 0, 2, 3, 4, 5});
    const Bijection phi({2, 3, 0, 1, 4, 5});
    REQUIRE(check_hypotheses(h, phi));
    CHECK(compute_t(h, phi).is_identity());
    const Instance instance(h, phi);
    for (std::size_t p = 4; p < 6; ++p)
        CHECK(classify_point(p, instance).situation == Situation::outside);
}

TEST_CASE("every point of a case I instance is fixed")
{
    // h swaps two points of A, both in supp(phi), phi(A) disjoint from A.
    const Bijection h({1, 0, 2, 3});
    const Bijection phi({2, 3, 0, 1});
    const Instance instance(h, phi);
    CHECK(classify_point(0, instance).situation == Situation::I);
    CHECK(classify_point(0, instance).image == 0);
}

TEST_CASE("random instances are deterministic and valid")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Instance first = random_instance(12, seed);
        const Instance second = random_instance(12, seed);
        CHECK(first.h == second.h);
        CHECK(first.phi == second.phi);
        CHECK(check_hypotheses(first.h, first.phi));
    }
}

TEST_CASE("valid three-point instances include conjugates of the worked example")
{
    std::vector<std::size_t> p{0, 1, 2};
    std::size_t matches = 0;
    do {
        const Bijection c(p);
        const Bijection h = compose(compose(c, kH), inverse(c));
        const Bijection phi = compose(compose(c, kPhi), inverse(c));
        CHECK(check_hypotheses(h, phi));
        CHECK(compute_t(h, phi) == compose(compose(c, compute_t(kH, kPhi)), inverse(c)));
        ++matches;
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(matches == 6);
    const CheckReport report = check_exhaustive(3);
    CHECK(report.passed());
    CHECK(report.instances > 6);
}

TEST_CASE("exhaustive checks for small sets")
{
    // Valid (h, phi) pairs per size, counted by an independent enumeration.
    const std::size_t expected[] = {1, 3, 17, 149, 1689};
    for (std::size_t m = 1; m <= 5; ++m) {
        const CheckReport report = check_exhaustive(m);
        CHECK_MESSAGE(report.passed(), "m = ", m);
        CHECK(report.instances == expected[m - 1]);
    }
}

TEST_CASE("random checks record moves between regions")
{
    const CheckReport report = check_random(20, 200, 7);
    CHECK(report.passed());
    CHECK(report.instances == 200);
    CHECK(report.moves.count({Region::A, Region::C}) == 0);
    CHECK(report.moves.count({Region::B, Region::C}) == 1);
    for (const auto& [move, situations] : report.moves)
        if (move.first != move.second)
            CHECK(situations.size() == 1);
}
