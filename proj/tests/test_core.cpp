#include <gtest/gtest.h>

#include <cmath>

#include "ionstore/core.hpp"

using namespace ionstore;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

}  // namespace

TEST(Polarization, NamedStatesAndAngles) {
    EXPECT_NEAR(std::abs(inner(PolarizationState::H(), PolarizationState::V())), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(inner(PolarizationState::R(), PolarizationState::L())), 0.0, 1e-15);
    EXPECT_NEAR(PolarizationState::R().norm_sq(), 1.0, 1e-15);
    const PolarizationState p = PolarizationState::from_angles(deg_to_rad(45.0), deg_to_rad(90.0));
    EXPECT_NEAR(std::abs(inner(p, PolarizationState::R())), 1.0, 1e-15);
    const PolarizationState d = PolarizationState::from_angles(0.3, 1.1);
    EXPECT_NEAR(std::abs(inner(d, d.orthogonal())), 0.0, 1e-15);
    EXPECT_NEAR(d.orthogonal().norm_sq(), 1.0, 1e-15);
}

TEST(Photon, SphericalRoundTrip) {
    const PhotonVector v{cplx(0.2, -0.1), cplx(0.5, 0.3), cplx(-0.4, 0.7)};
    const PhotonVector w = PhotonVector::from_spherical(v.to_spherical());
    EXPECT_NEAR(std::abs(w.zero - v.zero), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(w.x - v.x), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(w.y - v.y), 0.0, 1e-15);
    const SphericalComponents s = v.to_spherical();
    EXPECT_NEAR(std::norm(s.pi) + std::norm(s.sigma_plus) + std::norm(s.sigma_minus), v.norm_sq(),
                1e-15);
}

TEST(Photon, CircularComponents) {
    // |x> + i|y> is pure sigma+.
    const double r = 1.0 / std::sqrt(2.0);
    const SphericalComponents s = PhotonVector{0.0, r, cplx(0.0, r)}.to_spherical();
    EXPECT_NEAR(std::abs(s.sigma_plus), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(s.sigma_minus), 0.0, 1e-15);
    EXPECT_EQ(s[1], s.sigma_plus);
    EXPECT_EQ(s[-1], s.sigma_minus);
}

TEST(Projection, BeamDirection) {
    const PhotonVector along = project_polarization(PolarizationState::H(), 0.0);
    EXPECT_NEAR(std::abs(along.x), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(along.zero), 0.0, 1e-15);
    const PhotonVector perp = project_polarization(PolarizationState::H(), kPi / 2.0);
    EXPECT_NEAR(std::abs(perp.zero), 1.0, 1e-15);
    const PhotonVector v = project_polarization(PolarizationState::V(), 0.7);
    EXPECT_NEAR(std::abs(v.y), 1.0, 1e-15);
    const PolarizationState d = PolarizationState::from_angles(0.4, 0.9);
    EXPECT_NEAR(project_polarization(d, 1.3).norm_sq(), 1.0, 1e-15);
    const cplx c = detect_project(project_polarization(d, 1.3), d, 1.3);
    EXPECT_NEAR(std::abs(c), 1.0, 1e-15);
}

TEST(AtomicState, ConstructionAndAccess) {
    const Manifold& d = manifolds::D5_2();
    AtomicState s = AtomicState::superposition(d, {{h(-5), 1.0}, {h(5), cplx(0.0, 1.0)}});
    EXPECT_NEAR(s.norm_sq(), 2.0, 1e-15);
    EXPECT_EQ(s.amp(h(5)), cplx(0.0, 1.0));
    EXPECT_NEAR(s.normalized().norm_sq(), 1.0, 1e-15);
    EXPECT_THROW(AtomicState(d).normalized(), DomainError);
    EXPECT_TRUE(AtomicState(d).is_zero());
    EXPECT_THROW(AtomicState(d, Eigen::VectorXcd::Zero(4)), DomainError);
    EXPECT_THROW(inner(AtomicState(d), AtomicState(manifolds::S1_2())), DomainError);
    const AtomicState b = AtomicState::basis(d, h(-3));
    EXPECT_EQ(b.amps()[1], cplx(1.0));
}

TEST(Geometry, Validation) {
    EXPECT_NO_THROW((Geometry{0.0, kPi}.validate()));
    EXPECT_THROW((Geometry{-0.1, 0.0}.validate()), DomainError);
    EXPECT_THROW((Geometry{0.0, 3.2}.validate()), DomainError);
}

TEST(JointState, ReducedStates) {
    Eigen::MatrixX3cd amps = Eigen::MatrixX3cd::Zero(2, 3);
    amps(0, 1) = 0.6;
    amps(1, 2) = 0.8;
    const JointState j(manifolds::S1_2(), amps);
    EXPECT_NEAR(j.norm_sq(), 1.0, 1e-15);
    EXPECT_NEAR(j.atom_reduced().trace().real(), 1.0, 1e-15);
    EXPECT_NEAR(j.photon_reduced().trace().real(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(j.photon_part(h(1)).y - 0.8), 0.0, 1e-15);
    EXPECT_THROW(JointState(manifolds::D5_2(), amps), DomainError);
}
