#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ionstore/search.hpp"

using namespace ionstore;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

SearchSpace scheme_d_space() {
    SearchSpace s;
    s.psi_d_family = PsiFamily::fixed_state(AtomicState::basis(manifolds::D5_2(), h(-3)));
    s.lock_alpha_equal = true;
    return s;
}

Interval box(double centre, double half, double lo, double hi) {
    return {std::max(lo, centre - half), std::min(hi, centre + half)};
}

double angle_gap_deg(double a, double b) { return std::abs(rad_to_deg(a - b)); }

}  // namespace

TEST(PsiFamily, Members) {
    EXPECT_EQ(PsiFamily::single_sublevel().members().size(), 6u);
    const auto pairs = PsiFamily::balanced_pair().members();
    ASSERT_EQ(pairs.size(), 3u);
    for (const AtomicState& p : pairs) EXPECT_NEAR(p.norm_sq(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(pairs[2].amp(h(-5)) - pairs[2].amp(h(5))), 0.0, 1e-15);
}

TEST(Optimize, RediscoversSchemeD) {
    const SearchResult r = optimize(scheme_d_space(), 1e-9, 7);
    ASSERT_TRUE(r.feasible);
    EXPECT_NEAR(rad_to_deg(r.best.geometry.alpha), 47.06, 0.05);
    EXPECT_DOUBLE_EQ(r.best.geometry.alpha, r.best.geometry.alpha_prime);
    EXPECT_NEAR(rad_to_deg(r.best.detection.theta_prime), -55.74, 0.05);
    EXPECT_NEAR(rad_to_deg(r.best.detection.phi_prime), 90.0, 0.05);
    EXPECT_NEAR(r.objective, 0.1072, 1e-4);
    EXPECT_LE(r.constraint_residual, 1e-9);
}

TEST(Optimize, BalancedPairAtZeroAngles) {
    SearchSpace s;
    s.psi_d_family = PsiFamily::fixed_state(
        AtomicState::superposition(manifolds::D5_2(), {{h(-5), 1.0}, {h(5), 1.0}}));
    s.alpha_range = Interval::point(0.0);
    s.alpha_prime_range = Interval::point(0.0);
    const SearchResult r = optimize(s, 1e-9, 1);
    EXPECT_TRUE(r.feasible);
    EXPECT_NEAR(r.objective, 0.5, 1e-9);
    EXPECT_LE(r.constraint_residual, 1e-9);
}

TEST(Optimize, UnboundedToleranceFindsInvalidPolarizer) {
    SearchSpace s;
    s.psi_d_family = PsiFamily::fixed_state(AtomicState::basis(manifolds::D5_2(), h(-5)));
    s.alpha_range = Interval::point(0.0);
    const SearchResult r = optimize(s, kUnboundedTol, 1);
    EXPECT_GT(r.objective, 0.0);
    EXPECT_GT(r.constraint_residual, 1e-3);
}

TEST(Optimize, ReportsLeastInfeasiblePoint) {
    SearchSpace s;
    s.psi_d_family = PsiFamily::fixed_state(AtomicState::basis(manifolds::D5_2(), h(-5)));
    s.alpha_range = Interval::point(0.0);
    s.alpha_prime_range = Interval::point(0.0);
    const SearchResult r = optimize(s, 1e-9, 1);
    EXPECT_FALSE(r.feasible);
    EXPECT_GT(r.constraint_residual, 1e-9);
    EXPECT_GT(r.objective, 0.0);
}

TEST(Optimize, DeterministicAndThreadIndependent) {
    SearchOptions one;
    SearchOptions four;
    four.threads = 4;
    const SearchResult a = optimize(scheme_d_space(), 1e-9, 42, one);
    const SearchResult b = optimize(scheme_d_space(), 1e-9, 42, one);
    const SearchResult c = optimize(scheme_d_space(), 1e-9, 42, four);
    EXPECT_EQ(a.best.geometry.alpha, b.best.geometry.alpha);
    EXPECT_EQ(a.best.detection.theta_prime, b.best.detection.theta_prime);
    EXPECT_EQ(a.objective, b.objective);
    EXPECT_EQ(a.trace.size(), b.trace.size());
    EXPECT_EQ(a.best.geometry.alpha, c.best.geometry.alpha);
    EXPECT_EQ(a.best.detection.phi_prime, c.best.detection.phi_prime);
    EXPECT_EQ(a.objective, c.objective);
}

TEST(Optimize, TraceIsMonotone) {
    const SearchResult r = optimize(scheme_d_space(), 1e-9, 3);
    ASSERT_FALSE(r.trace.empty());
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
        EXPECT_GE(r.trace[i].merit, r.trace[i - 1].merit);
        EXPECT_GE(r.trace[i].iteration, r.trace[i - 1].iteration);
    }
}

TEST(Optimize, ReturnsCatalogPointsFromTheirNeighbourhoods) {
    for (const Scheme& nominal : catalog()) {
        SearchSpace s;
        s.psi_d_family = PsiFamily::fixed_state(nominal.psi_d);
        // Schemes designed with alpha = alpha' are searched under that constraint.
        s.lock_alpha_equal = nominal.geometry.alpha == nominal.geometry.alpha_prime;
        const double w = deg_to_rad(5.0);
        s.alpha_range = box(nominal.geometry.alpha, w, 0.0, kPi);
        s.alpha_prime_range = box(nominal.geometry.alpha_prime, w, 0.0, kPi);
        s.theta_prime_range = box(nominal.detection.theta_prime, w, -kPi, kPi);
        s.phi_prime_range = box(nominal.detection.phi_prime, w, -kPi, 2.0 * kPi);
        SearchOptions o;
        o.alpha_step_deg = 1.0;
        o.detection_step_deg = 1.0;
        const SearchResult r = optimize(s, 1e-9, 1, o);
        const double eff = scheme_efficiency(scheme_transfer_matrices(nominal));
        ASSERT_TRUE(r.feasible) << nominal.name;
        EXPECT_NEAR(r.objective, eff, 1e-4) << nominal.name;
        EXPECT_EQ(r.best.heralds, nominal.heralds) << nominal.name;
        EXPECT_LE(angle_gap_deg(r.best.geometry.alpha, nominal.geometry.alpha), 0.05) << nominal.name;
        EXPECT_LE(angle_gap_deg(r.best.geometry.alpha_prime, nominal.geometry.alpha_prime), 0.05)
            << nominal.name;
        EXPECT_LE(angle_gap_deg(r.best.detection.theta_prime, nominal.detection.theta_prime), 0.05)
            << nominal.name;
        EXPECT_LE(angle_gap_deg(r.best.detection.phi_prime, nominal.detection.phi_prime), 0.05)
            << nominal.name;
    }
}

TEST(Optimize, UnlockedSchemeDNeighbourhoodHasBetterValidPoints) {
    const Scheme& d = catalog_scheme("d");
    SearchSpace s;
    s.psi_d_family = PsiFamily::fixed_state(d.psi_d);
    const double w = deg_to_rad(5.0);
    s.alpha_range = box(d.geometry.alpha, w, 0.0, kPi);
    s.alpha_prime_range = box(d.geometry.alpha_prime, w, 0.0, kPi);
    s.theta_prime_range = box(d.detection.theta_prime, w, -kPi, kPi);
    s.phi_prime_range = box(d.detection.phi_prime, w, -kPi, 2.0 * kPi);
    const SearchResult r = optimize(s, 1e-9, 1);
    ASSERT_TRUE(r.feasible);
    EXPECT_GT(r.objective, 0.1072 + 1e-3);
    EXPECT_LE(r.constraint_residual, 1e-9);
}

TEST(Optimize, PrefersEqualAnglesOnFlatDirections) {
    const Scheme& e = catalog_scheme("e");
    SearchSpace s;
    s.psi_d_family = PsiFamily::fixed_state(e.psi_d);
    s.alpha_range = Interval::point(e.geometry.alpha);
    s.alpha_prime_range = {e.geometry.alpha_prime - deg_to_rad(5.0), e.geometry.alpha_prime + deg_to_rad(5.0)};
    const SearchResult r = optimize(s, 1e-9, 1);
    EXPECT_EQ(r.best.geometry.alpha_prime, r.best.geometry.alpha);
}

TEST(Optimize, RejectsBadInput) {
    SearchSpace s = scheme_d_space();
    s.alpha_range = {1.0, 0.5};
    EXPECT_THROW(optimize(s, 1e-9, 0), DomainError);
    s = scheme_d_space();
    s.alpha_range = {0.0, 4.0};
    EXPECT_THROW(optimize(s, 1e-9, 0), DomainError);
    EXPECT_THROW(optimize(scheme_d_space(), 0.0, 0), DomainError);
    s = scheme_d_space();
    s.alpha_range = {0.0, 0.2};
    s.alpha_prime_range = {0.5, 0.7};
    EXPECT_THROW(optimize(s, 1e-9, 0), DomainError);
    s = scheme_d_space();
    s.psi_d_family = PsiFamily::fixed_state(AtomicState(manifolds::D5_2()));
    EXPECT_THROW(optimize(s, 1e-9, 0), DomainError);
}

TEST(Sweep, ParameterNames) {
    for (const char* n : {"alpha", "alpha_prime", "theta_prime", "phi_prime", "input_impurity",
                          "psi_d_impurity"})
        EXPECT_EQ(to_string(parse_sweep_parameter(n)), n);
    EXPECT_THROW(parse_sweep_parameter("beta"), DomainError);
    EXPECT_TRUE(is_angle(SweepParameter::PhiPrime));
    EXPECT_FALSE(is_angle(SweepParameter::InputImpurity));
}

TEST(Sweep, ThetaPrimePeaksAtNominal) {
    const Scheme& d = catalog_scheme("d");
    const double c = d.detection.theta_prime;
    const SweepResult r =
        sweep(d, SweepParameter::ThetaPrime, {c - deg_to_rad(10.0), c + deg_to_rad(10.0)}, 21);
    ASSERT_EQ(r.samples.size(), 21u);
    EXPECT_NEAR(r.samples[10].worst_fidelity, 1.0, 1e-12);
    EXPECT_LE(r.samples[10].gram_deviation, 1e-9);
    for (int i = 0; i < 10; ++i) EXPECT_LT(r.samples[i].worst_fidelity, r.samples[i + 1].worst_fidelity);
    for (int i = 10; i < 20; ++i) EXPECT_GT(r.samples[i].worst_fidelity, r.samples[i + 1].worst_fidelity);
}

TEST(Sweep, ZeroWidthRangeGivesIdenticalSamples) {
    for (const Scheme& s : catalog()) {
        const SweepResult r = sweep(s, SweepParameter::Alpha, Interval::point(0.3), 2);
        ASSERT_EQ(r.samples.size(), 2u);
        EXPECT_EQ(r.samples[0].efficiency_min, r.samples[1].efficiency_min);
        EXPECT_EQ(r.samples[0].worst_fidelity, r.samples[1].worst_fidelity);
    }
}

TEST(Sweep, ImpurityModels) {
    const Scheme& e = catalog_scheme("e");
    const SweepResult in = sweep(e, SweepParameter::InputImpurity, {0.0, 0.3}, 4);
    EXPECT_NEAR(in.samples[0].worst_fidelity, 1.0, 1e-12);
    EXPECT_NEAR(in.samples[3].worst_fidelity, 1.0 - 0.09, 1e-12);  // valid map: overlap 1 - eta^2

    const SweepResult psi = sweep(e, SweepParameter::PsiDImpurity, {0.0, 0.3}, 4);
    EXPECT_NEAR(psi.samples[0].gram_deviation, 0.0, 1e-12);
    EXPECT_LT(psi.samples[3].worst_fidelity, 1.0);
    EXPECT_THROW(sweep(e, SweepParameter::PsiDImpurity, {0.0, 1.5}, 3), DomainError);
    EXPECT_THROW(sweep(e, SweepParameter::Alpha, {0.0, 0.1}, 0), DomainError);
}

TEST(Sweep, ImpurityDirectionIsOrthogonal) {
    for (const Scheme& s : catalog()) {
        const AtomicState d = impurity_direction(s.psi_d);
        EXPECT_NEAR(d.norm_sq(), 1.0, 1e-14);
        EXPECT_NEAR(std::abs(inner(d, s.psi_d)), 0.0, 1e-14);
    }
    EXPECT_THROW(impurity_direction(AtomicState(manifolds::D5_2())), DomainError);
}

TEST(Sweep, SchemeAMoreRobustToAlphaThanD) {
    const Scheme& a = catalog_scheme("a");
    const Scheme& d = catalog_scheme("d");
    const double ten = deg_to_rad(10.0);
    const SweepResult ra = sweep(a, SweepParameter::Alpha, {a.geometry.alpha, a.geometry.alpha + ten}, 11);
    const SweepResult rd = sweep(d, SweepParameter::Alpha, {d.geometry.alpha, d.geometry.alpha + ten}, 11);
    for (int i = 1; i < 11; ++i) {
        EXPECT_LT(ra.samples[i].gram_deviation, rd.samples[i].gram_deviation);
        EXPECT_LT(1.0 - ra.samples[i].worst_fidelity, 1.0 - rd.samples[i].worst_fidelity);
    }
}
