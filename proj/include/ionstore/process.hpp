#pragma once

// Absorption, emission and herald detection, condensed into the 2x2
// herald-conditioned transfer matrix with efficiency and validity analysis.

#include <array>
#include <string>

#include "ionstore/core.hpp"

namespace ionstore {

/// Largest possible squared norm of the stored S1/2 state; efficiencies are relative to it.
inline constexpr double kMaxSuccessProbability = 2.0 / 3.0;

inline constexpr double kDefaultValidityTol = 1e-9;

namespace constants {
inline constexpr double kBohrMagneton = 9.2740100783e-24;  // J/T
inline constexpr double kPlanck = 6.62607015e-34;          // J s
inline constexpr double kHbar = kPlanck / (2.0 * kPi);
}  // namespace constants

/// Unnormalized upper-manifold state after absorbing `photon`.
AtomicState absorb(const AtomicState& psi_d, const PhotonVector& photon,
                   const Manifold& upper = manifolds::P3_2());

/// Joint atom-photon state after spontaneous decay into `lower`.
JointState emit(const AtomicState& psi_p, const Manifold& lower = manifolds::S1_2());

/// <phi_det| P_alpha'^dagger E A (psi_d (x) P_alpha |input>), unnormalized.
AtomicState final_state(const AtomicState& psi_d, const PolarizationState& input,
                        const Geometry& geom, const PolarizationState& det);

/// Maps input (H, V) amplitudes to S1/2 amplitudes for one herald outcome.
/// Row 0 is m = +1/2, row 1 is m = -1/2.
struct TransferMatrix {
    Eigen::Matrix2cd entries = Eigen::Matrix2cd::Zero();
    PolarizationState herald;
    Geometry geometry;

    /// Unnormalized S1/2 state for the given input polarization.
    AtomicState apply(const PolarizationState& input) const;
    Eigen::Matrix2cd gram() const { return entries.adjoint() * entries; }
};

/// Precomputed absorption/emission maps for one initial state. Evaluating a
/// transfer matrix is a handful of small matrix products, so search loops reuse this.
class StoragePipeline {
public:
    explicit StoragePipeline(const AtomicState& psi_d, const Manifold& upper = manifolds::P3_2(),
                             const Manifold& lower = manifolds::S1_2());

    TransferMatrix transfer(const Geometry& geom, const PolarizationState& det) const;

    static constexpr int kMaxUpperSublevels = 8;

private:
    using Absorption = Eigen::Matrix<cplx, Eigen::Dynamic, 3, Eigen::ColMajor, kMaxUpperSublevels, 3>;
    using Emission = Eigen::Matrix<cplx, 2, Eigen::Dynamic, Eigen::ColMajor, 2, kMaxUpperSublevels>;

    // upper sublevel amplitude per photon component (|0>, |x>, |y>)
    Absorption absorption_;
    // emission_[c](m_S, m_P): amplitude of photon component c
    std::array<Emission, 3> emission_;
};

TransferMatrix transfer_matrix(const AtomicState& psi_d, const Geometry& geom,
                               const PolarizationState& det);

/// Eigenvalues (ascending) of the Hermitian 2x2 matrix M^dagger M.
std::array<double, 2> gram_eigenvalues(const Eigen::Matrix2cd& m);

struct EfficiencyBand {
    double min = 0.0;
    double max = 0.0;
    double mean() const { return 0.5 * (min + max); }
};

/// Squared singular values of M over 2/3.
EfficiencyBand efficiency(const TransferMatrix& m);

/// ||M^dagger M - (tr/2) I||_F.
double gram_deviation(const Eigen::Matrix2cd& m);

struct MappedState {
    std::string input_label;
    PolarizationState input;
    AtomicState state;           // normalized, or zero when probability vanishes
    double probability = 0.0;    // ||psi_S||^2
    bool is_zero = false;
};

struct MappingReport {
    double efficiency_min = 0.0;
    double efficiency_max = 0.0;
    bool is_valid = false;
    double gram_deviation = 0.0;
    MappedState mapped_h;
    MappedState mapped_v;
    MappedState mapped_r;
    MappedState mapped_l;

    std::array<const MappedState*, 4> mapped() const {
        return {&mapped_h, &mapped_v, &mapped_r, &mapped_l};
    }
};

MappingReport validity(const TransferMatrix& m, double tol = kDefaultValidityTol);

/// |<a|b>|^2 / (|a|^2 |b|^2). Throws DomainError for a zero input.
double fidelity(const AtomicState& a, const AtomicState& b);

/// Larmor phases: amplitude at m picks up exp(-i m g mu_B B t / hbar).
AtomicState zeeman_evolve(const AtomicState& state, double b_field_tesla, double time_s);

/// Period of the relative phase between sublevels differing by dm = 1.
double larmor_period(const Manifold& manifold, double b_field_tesla);

}  // namespace ionstore
