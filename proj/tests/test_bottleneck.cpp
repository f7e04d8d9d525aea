#include <gtest/gtest.h>

#include "support.hpp"

using namespace matchdist;

TEST(Bottleneck, HandComputedExample)
{
    // Optimal: (0,1)-(0.125,1.125) costs 0.125, (2,2.25) goes to the diagonal at 0.125,
    // (3,5)-(3,4.875) costs 0.125.
    Diagram a{0, {{0, 1}, {2, 2.25}, {3, 5}}, {}};
    Diagram b{0, {{0.125, 1.125}, {3, 4.875}}, {}};
    EXPECT_EQ(bottleneck_distance(a, b), 0.125);
    EXPECT_EQ(mdtest::brute_bottleneck(a, b), 0.125);
}

TEST(Bottleneck, EmptyAndIdenticalDiagrams)
{
    Diagram e{};
    EXPECT_EQ(bottleneck_distance(e, e), 0.0);
    Diagram a{0, {{1, 3}}, {0.5}};
    EXPECT_EQ(bottleneck_distance(a, a), 0.0);
    EXPECT_EQ(bottleneck_distance(a, Diagram{0, {}, {0.5}}), 1.0);
}

TEST(Bottleneck, EssentialPointsMatchOnlyEachOther)
{
    Diagram a{0, {}, {0.0, 4.0}};
    Diagram b{0, {}, {1.0, 4.5}};
    EXPECT_EQ(bottleneck_distance(a, b), 1.0);
    EXPECT_TRUE(std::isinf(bottleneck_distance(a, Diagram{0, {{0, 100}}, {0.0}})));
}

TEST(Bottleneck, EssentialCostIsAFloor)
{
    Diagram a{0, {{0, 0.5}}, {0.0}};
    Diagram b{0, {}, {2.0}};
    EXPECT_EQ(bottleneck_distance(a, b), 2.0);
}

TEST(Bottleneck, DimensionMismatch)
{
    try {
        bottleneck_distance(Diagram{0, {}, {}}, Diagram{1, {}, {}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(Bottleneck, AgreesWithExhaustiveMatching)
{
    mdtest::Rng rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const Diagram a = mdtest::random_diagram(rng, 4);
        const Diagram b = mdtest::random_diagram(rng, 4);
        EXPECT_EQ(bottleneck_distance(a, b), mdtest::brute_bottleneck(a, b)) << "trial " << trial;
    }
}

TEST(Bottleneck, LargerRandomDiagramsAgreeWithExhaustiveMatching)
{
    mdtest::Rng rng(32);
    for (int trial = 0; trial < 40; ++trial) {
        Diagram a = mdtest::random_diagram(rng, 7);
        Diagram b = mdtest::random_diagram(rng, 7);
        a.essential.clear();
        b.essential.clear();
        EXPECT_EQ(bottleneck_distance(a, b), mdtest::brute_bottleneck(a, b)) << "trial " << trial;
    }
}

TEST(Bottleneck, MetricProperties)
{
    mdtest::Rng rng(33);
    for (int trial = 0; trial < 200; ++trial) {
        Diagram a = mdtest::random_diagram(rng, 5), b = mdtest::random_diagram(rng, 5),
                c = mdtest::random_diagram(rng, 5);
        // Equal essential counts keep every distance finite.
        b.essential = a.essential;
        c.essential = a.essential;
        const double ab = bottleneck_distance(a, b), ba = bottleneck_distance(b, a);
        EXPECT_EQ(ab, ba);
        EXPECT_EQ(bottleneck_distance(a, a), 0.0);
        EXPECT_LE(bottleneck_distance(a, c), ab + bottleneck_distance(b, c) + 1e-12);
    }
}

TEST(Bottleneck, ShiftInvarianceAndHomogeneity)
{
    mdtest::Rng rng(34);
    for (int trial = 0; trial < 200; ++trial) {
        const Diagram a = mdtest::random_diagram(rng, 5), b = mdtest::random_diagram(rng, 5);
        const double d = bottleneck_distance(a, b);
        if (std::isinf(d)) continue;
        const double shift = mdtest::uniform(rng, -10, 10);
        const double scale = mdtest::uniform(rng, 0.1, 10);
        EXPECT_NEAR(bottleneck_distance(mdtest::transformed(a, 1, shift), mdtest::transformed(b, 1, shift)), d,
                    1e-9);
        EXPECT_NEAR(bottleneck_distance(mdtest::transformed(a, scale, 0), mdtest::transformed(b, scale, 0)),
                    scale * d, 1e-9 * scale);
    }
}
