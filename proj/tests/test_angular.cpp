#include <gtest/gtest.h>

#include <cmath>

#include "ionstore/angular.hpp"
#include "oracles/cgc_ladder.hpp"

using namespace ionstore;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

}  // namespace

TEST(HalfInt, ParsesFractionsAndIntegers) {
    EXPECT_EQ(HalfInt::parse("3/2").twice(), 3);
    EXPECT_EQ(HalfInt::parse("-5/2").twice(), -5);
    EXPECT_EQ(HalfInt::parse("+1/2").twice(), 1);
    EXPECT_EQ(HalfInt::parse("2").twice(), 4);
    EXPECT_THROW(HalfInt::parse("3/4"), DomainError);
    EXPECT_THROW(HalfInt::parse("x"), DomainError);
    EXPECT_EQ(h(-3).str(), "-3/2");
    EXPECT_EQ(h(4).str(), "2");
}

TEST(HalfInt, ArithmeticAndOrdering) {
    EXPECT_EQ(h(3) + h(-1), h(2));
    EXPECT_EQ(h(3) - h(5), h(-2));
    EXPECT_LT(h(-1), h(1));
    EXPECT_TRUE(h(4).is_integer());
    EXPECT_FALSE(h(3).is_integer());
    EXPECT_DOUBLE_EQ(h(-5).value(), -2.5);
}

TEST(Cgc, KnownValues) {
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(cgc(h(1), h(1), h(1), h(-1), h(2), h(0)), r, 1e-15);
    EXPECT_NEAR(cgc(h(1), h(-1), h(1), h(1), h(0), h(0)), -r, 1e-15);
    EXPECT_NEAR(cgc(h(2), h(0), h(2), h(0), h(0), h(0)), -1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(cgc(h(2), h(0), h(2), h(0), h(2), h(0)), 0.0, 1e-15);
    // Stretched absorption channel D5/2 -> P3/2 carries weight 2/3.
    EXPECT_NEAR(std::pow(cgc(h(5), h(-5), h(2), h(2), h(3), h(-3)), 2), 2.0 / 3.0, 1e-14);
}

TEST(Cgc, SelectionRulesGiveZero) {
    EXPECT_EQ(cgc(h(1), h(1), h(1), h(1), h(2), h(0)), 0.0);
    EXPECT_EQ(cgc(h(1), h(1), h(1), h(1), h(6), h(2)), 0.0);
}

TEST(Cgc, InvalidPairThrows) {
    EXPECT_THROW(cgc(h(1), h(3), h(1), h(1), h(2), h(4)), DomainError);
    EXPECT_THROW(cgc(h(2), h(1), h(1), h(1), h(3), h(2)), DomainError);
}

TEST(Cgc, MatchesLadderOracleUpToJ4) {
    double worst = 0.0;
    for (int tj1 = 0; tj1 <= 8; ++tj1)
        for (int tj2 = 0; tj2 <= 8; ++tj2)
            for (int tJ = std::abs(tj1 - tj2); tJ <= std::min(8, tj1 + tj2); tJ += 2)
                for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
                    for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
                        if (std::abs(tm1 + tm2) > tJ) continue;
                        const double a = cgc(h(tj1), h(tm1), h(tj2), h(tm2), h(tJ), h(tm1 + tm2));
                        const double b = oracle::cgc(tj1, tm1, tj2, tm2, tJ, tm1 + tm2);
                        worst = std::max(worst, std::abs(a - b));
                    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Cgc, OrthogonalityBothWays) {
    for (int tj1 = 0; tj1 <= 6; ++tj1)
        for (int tj2 = 0; tj2 <= 6; ++tj2)
            for (int tM = -(tj1 + tj2); tM <= tj1 + tj2; tM += 2) {
                // sum over m1 of C(J M) C(J' M) = delta(J, J')
                for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
                    for (int tK = std::abs(tj1 - tj2); tK <= tj1 + tj2; tK += 2) {
                        if (std::abs(tM) > std::min(tJ, tK)) continue;
                        double s = 0.0;
                        for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                            const int tm2 = tM - tm1;
                            if (std::abs(tm2) > tj2) continue;
                            s += cgc(h(tj1), h(tm1), h(tj2), h(tm2), h(tJ), h(tM)) *
                                 cgc(h(tj1), h(tm1), h(tj2), h(tm2), h(tK), h(tM));
                        }
                        EXPECT_NEAR(s, tJ == tK ? 1.0 : 0.0, 1e-12);
                    }
                // sum over J of C(m1 m2) C(m1' m2') = delta(m1, m1')
                for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
                    for (int tn1 = -tj1; tn1 <= tj1; tn1 += 2) {
                        const int tm2 = tM - tm1, tn2 = tM - tn1;
                        if (std::abs(tm2) > tj2 || std::abs(tn2) > tj2) continue;
                        double s = 0.0;
                        for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
                            if (std::abs(tM) > tJ) continue;
                            s += cgc(h(tj1), h(tm1), h(tj2), h(tm2), h(tJ), h(tM)) *
                                 cgc(h(tj1), h(tn1), h(tj2), h(tn2), h(tJ), h(tM));
                        }
                        EXPECT_NEAR(s, tm1 == tn1 ? 1.0 : 0.0, 1e-12);
                    }
            }
}

TEST(Lande, FineStructureLevels) {
    EXPECT_NEAR(manifolds::S1_2().g_lande, 2.0, 1e-15);
    EXPECT_NEAR(manifolds::P3_2().g_lande, 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(manifolds::D5_2().g_lande, 6.0 / 5.0, 1e-15);
    EXPECT_NEAR(manifolds::D3_2().g_lande, 4.0 / 5.0, 1e-15);
    EXPECT_EQ(lande_g(h(0), h(0), h(0)), 0.0);
    EXPECT_THROW(lande_g(h(2), h(1), h(7)), DomainError);
}

TEST(Manifold, SublevelIndexing) {
    const Manifold& d = manifolds::D5_2();
    EXPECT_EQ(d.sublevel_count(), 6);
    EXPECT_EQ(d.index_of(h(-5)), 0);
    EXPECT_EQ(d.index_of(h(5)), 5);
    EXPECT_EQ(d.sublevel_at(2), h(-1));
    EXPECT_TRUE(d.contains(h(3)));
    EXPECT_FALSE(d.contains(h(7)));
    EXPECT_FALSE(d.contains(h(2)));
    EXPECT_THROW(d.index_of(h(7)), DomainError);
    EXPECT_EQ(manifolds::by_label("P3/2"), manifolds::P3_2());
    EXPECT_THROW(manifolds::by_label("F7/2"), DomainError);
}

TEST(Dipole, SelectionAndAmplitudes) {
    const Manifold& d = manifolds::D5_2();
    const Manifold& p = manifolds::P3_2();
    const Manifold& s = manifolds::S1_2();
    EXPECT_TRUE(dipole_coupled(d, p));
    EXPECT_TRUE(dipole_coupled(s, p));
    EXPECT_FALSE(dipole_coupled(s, d));
    EXPECT_EQ(dipole_amplitude(d, h(-5), p, h(1)), 0.0);  // |q| > 1
    EXPECT_EQ(dipole_amplitude(s, h(-1), p, h(-3)), cgc(h(1), h(-1), h(2), h(-2), h(3), h(-3)));
    EXPECT_NEAR(dipole_amplitude(s, h(-1), p, h(-3)), 1.0, 1e-15);
    EXPECT_THROW(dipole_amplitude(s, h(1), d, h(1)), DomainError);
}

TEST(Branching, P32Metadata) {
    const auto& b = p32_branching();
    ASSERT_EQ(b.size(), 3u);
    EXPECT_EQ(b[0].lower, "S1/2");
    EXPECT_DOUBLE_EQ(b[0].fraction, 0.94);
    EXPECT_DOUBLE_EQ(b[1].fraction, 0.06);
    EXPECT_FALSE(b[1].upper_bound);
    EXPECT_TRUE(b[2].upper_bound);
}
