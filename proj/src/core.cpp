#include "ionstore/core.hpp"

#include <cmath>

namespace ionstore {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
constexpr cplx kI{0.0, 1.0};
}  // namespace

PolarizationState PolarizationState::from_angles(double theta, double phi) {
    return {std::cos(theta), std::polar(1.0, phi) * std::sin(theta)};
}

PolarizationState PolarizationState::R() { return {kInvSqrt2, kI * kInvSqrt2}; }
PolarizationState PolarizationState::L() { return {kInvSqrt2, -kI * kInvSqrt2}; }

PhotonVector PhotonVector::from_spherical(const SphericalComponents& s) {
    return {s.pi, (s.sigma_plus + s.sigma_minus) * kInvSqrt2,
            kI * (s.sigma_plus - s.sigma_minus) * kInvSqrt2};
}

SphericalComponents PhotonVector::to_spherical() const {
    return {zero, (x - kI * y) * kInvSqrt2, (x + kI * y) * kInvSqrt2};
}

AtomicState::AtomicState(const Manifold& manifold)
    : manifold_(manifold), amps_(Eigen::VectorXcd::Zero(manifold.sublevel_count())) {}

AtomicState::AtomicState(const Manifold& manifold, Eigen::VectorXcd amps)
    : manifold_(manifold), amps_(std::move(amps)) {
    if (amps_.size() != manifold.sublevel_count())
        throw DomainError("amplitude vector of length " + std::to_string(amps_.size()) +
                          " does not match manifold " + manifold.label);
}

AtomicState AtomicState::basis(const Manifold& manifold, HalfInt m) {
    AtomicState s(manifold);
    s.amp(m) = 1.0;
    return s;
}

AtomicState AtomicState::superposition(const Manifold& manifold,
                                       std::initializer_list<std::pair<HalfInt, cplx>> terms) {
    AtomicState s(manifold);
    for (const auto& [m, c] : terms) s.amp(m) += c;
    return s;
}

AtomicState AtomicState::normalized() const {
    const double n = std::sqrt(norm_sq());
    if (n == 0.0) throw DomainError("cannot normalize the zero state");
    return AtomicState(manifold_, amps_ / n);
}

cplx inner(const AtomicState& a, const AtomicState& b) {
    if (!(a.manifold() == b.manifold()))
        throw DomainError("inner product between states of " + a.manifold().label + " and " +
                          b.manifold().label);
    return a.amps().dot(b.amps());
}

JointState::JointState(const Manifold& atom_manifold, Eigen::MatrixX3cd amps)
    : manifold_(atom_manifold), amps_(std::move(amps)) {
    if (amps_.rows() != atom_manifold.sublevel_count())
        throw DomainError("joint amplitude rows do not match manifold " + atom_manifold.label);
}

PhotonVector JointState::photon_part(HalfInt m) const {
    const int i = manifold_.index_of(m);
    return {amps_(i, 0), amps_(i, 1), amps_(i, 2)};
}

void Geometry::validate() const {
    const auto ok = [](double a) { return a >= 0.0 && a <= kPi + 1e-12; };
    if (!ok(alpha)) throw DomainError("alpha outside [0, 180] degrees");
    if (!ok(alpha_prime)) throw DomainError("alpha_prime outside [0, 180] degrees");
}

PhotonVector project_polarization(const PolarizationState& pol, double alpha) {
    return {pol.h * std::sin(alpha), pol.h * std::cos(alpha), pol.v};
}

cplx detect_project(const PhotonVector& photon, const PolarizationState& det,
                    double alpha_prime) {
    const PhotonVector analyzer = project_polarization(det, alpha_prime);
    return std::conj(analyzer.zero) * photon.zero + std::conj(analyzer.x) * photon.x +
           std::conj(analyzer.y) * photon.y;
}

}  // namespace ionstore
