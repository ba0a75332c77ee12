#pragma once

// Photon polarization qubits, natural-polarization 3-vectors, atomic
// amplitude vectors and beam geometry.

#include <array>
#include <complex>
#include <initializer_list>
#include <utility>

#include <Eigen/Dense>

#include "ionstore/angular.hpp"

namespace ionstore {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Polarization qubit in the (H, V) frame of a beam; H lies in the plane of k and B.
struct PolarizationState {
    cplx h{1.0, 0.0};
    cplx v{0.0, 0.0};

    /// cos(theta) |H> + e^{i phi} sin(theta) |V>.
    static PolarizationState from_angles(double theta, double phi);
    static PolarizationState H() { return {1.0, 0.0}; }
    static PolarizationState V() { return {0.0, 1.0}; }
    static PolarizationState R();
    static PolarizationState L();

    double norm_sq() const { return std::norm(h) + std::norm(v); }
    /// The other output port of a two-way analyzer set to this state.
    PolarizationState orthogonal() const { return {-std::conj(v), std::conj(h)}; }
    PolarizationState scaled(cplx c) const { return {c * h, c * v}; }
};

/// <a|b>.
inline cplx inner(const PolarizationState& a, const PolarizationState& b) {
    return std::conj(a.h) * b.h + std::conj(a.v) * b.v;
}

/// Spherical components in the order (q = 0, q = +1, q = -1).
struct SphericalComponents {
    cplx pi{};
    cplx sigma_plus{};
    cplx sigma_minus{};

    cplx operator[](int q) const { return q == 0 ? pi : (q > 0 ? sigma_plus : sigma_minus); }
    cplx& operator[](int q) { return q == 0 ? pi : (q > 0 ? sigma_plus : sigma_minus); }
};

/// Photon polarization vector in the basis {|0>, |x>, |y>} of the atomic frame.
/// |+-1> = (|x> +- i|y>)/sqrt(2).
struct PhotonVector {
    cplx zero{};
    cplx x{};
    cplx y{};

    static PhotonVector from_spherical(const SphericalComponents& s);
    SphericalComponents to_spherical() const;
    double norm_sq() const { return std::norm(zero) + std::norm(x) + std::norm(y); }
    Eigen::Vector3cd as_vector() const { return {zero, x, y}; }
};

/// Amplitudes over the sublevels of one manifold, indexed m = -j..+j. May be unnormalized.
class AtomicState {
public:
    explicit AtomicState(const Manifold& manifold);
    AtomicState(const Manifold& manifold, Eigen::VectorXcd amps);

    static AtomicState basis(const Manifold& manifold, HalfInt m);
    /// Sum of c |m>, not renormalized.
    static AtomicState superposition(const Manifold& manifold,
                                     std::initializer_list<std::pair<HalfInt, cplx>> terms);

    const Manifold& manifold() const { return manifold_; }
    const Eigen::VectorXcd& amps() const { return amps_; }
    Eigen::VectorXcd& amps() { return amps_; }

    cplx amp(HalfInt m) const { return amps_[manifold_.index_of(m)]; }
    cplx& amp(HalfInt m) { return amps_[manifold_.index_of(m)]; }

    double norm_sq() const { return amps_.squaredNorm(); }
    bool is_zero(double tol = 1e-14) const { return norm_sq() <= tol * tol; }
    /// Throws DomainError for a zero state.
    AtomicState normalized() const;

private:
    Manifold manifold_;
    Eigen::VectorXcd amps_;
};

/// <a|b>; throws DomainError if the manifolds differ.
cplx inner(const AtomicState& a, const AtomicState& b);

/// Atom (rows: sublevels) x photon (columns: |0>, |x>, |y>) amplitudes.
class JointState {
public:
    JointState(const Manifold& atom_manifold, Eigen::MatrixX3cd amps);

    const Manifold& atom_manifold() const { return manifold_; }
    const Eigen::MatrixX3cd& amps() const { return amps_; }

    double norm_sq() const { return amps_.squaredNorm(); }
    Eigen::MatrixXcd atom_reduced() const { return amps_ * amps_.adjoint(); }
    Eigen::Matrix3cd photon_reduced() const { return amps_.transpose() * amps_.conjugate(); }
    PhotonVector photon_part(HalfInt m) const;

private:
    Manifold manifold_;
    Eigen::MatrixX3cd amps_;
};

/// Beam and detection directions relative to the quantization axis (radians).
struct Geometry {
    double alpha = 0.0;        // 854 nm absorption beam
    double alpha_prime = 0.0;  // 393 nm herald detection

    /// Throws DomainError unless both angles lie in [0, pi].
    void validate() const;
};

/// P_alpha: H -> sin(a)|0> + cos(a)|x>, V -> |y>.
PhotonVector project_polarization(const PolarizationState& pol, double alpha);

/// <P_alpha' det | photon>.
cplx detect_project(const PhotonVector& photon, const PolarizationState& det, double alpha_prime);

}  // namespace ionstore
