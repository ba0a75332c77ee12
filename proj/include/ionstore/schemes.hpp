#pragma once

// Storage scheme descriptions, the built-in scheme catalog, verification
// against declared mappings/efficiencies and preparation-pulse accounting.

#include <optional>
#include <string>
#include <vector>

#include "ionstore/process.hpp"

namespace ionstore {

enum class HeraldMode { One, Both };

/// Analyzer setting for the 393 nm herald, cos(t')|H> + e^{i p'} sin(t')|V> (radians).
struct DetectionBasis {
    double theta_prime = 0.0;
    double phi_prime = 0.0;

    PolarizationState primary() const {
        return PolarizationState::from_angles(theta_prime, phi_prime);
    }
    PolarizationState secondary() const { return primary().orthogonal(); }
};

/// A declared input -> output assignment for one herald outcome (0 primary, 1 orthogonal).
struct DeclaredMapping {
    std::string input_label;
    PolarizationState input;
    int herald = 0;
    AtomicState expected;
    /// Expected amplitudes are rounded to this many decimals; 0 means exact.
    int decimals = 0;
};

struct Scheme {
    std::string name;
    AtomicState psi_d{manifolds::D5_2()};
    Geometry geometry;
    DetectionBasis detection;
    HeraldMode heralds = HeraldMode::One;
    std::optional<double> declared_efficiency;
    std::optional<std::vector<DeclaredMapping>> declared_mappings;

    /// Accepted detection outcomes, primary first.
    std::vector<PolarizationState> herald_outcomes() const;
    int prep_pulses() const;
};

/// One transfer matrix per accepted herald outcome.
std::vector<TransferMatrix> scheme_transfer_matrices(const Scheme& scheme);

/// Sum over accepted heralds of the input-averaged relative efficiency.
double scheme_efficiency(const std::vector<TransferMatrix>& heralds);

struct MappingCheck {
    std::string input_label;
    int herald = 0;
    double fidelity = 0.0;
    double amplitude_error = 0.0;  // rounded declarations only
    bool pass = false;
};

struct VerificationReport {
    std::string name;
    double computed_efficiency = 0.0;
    std::optional<double> declared_efficiency;
    bool efficiency_match = true;
    std::vector<MappingReport> heralds;
    std::vector<MappingCheck> mapping_fidelities;
    bool all_pass = false;
};

VerificationReport verify(const Scheme& scheme, double tol_eff, double tol_fid,
                          double validity_tol = kDefaultValidityTol);

struct PreparationCost {
    int pulses = 0;
    /// Set when the state has more than two populated sublevels.
    bool approximate = false;
};

/// Pulses needed starting from S1/2, m = -1/2 after optical pumping: one quadrupole
/// pulse (|dm| <= 2) per populated sublevel plus one RF spin flip if any sublevel is only
/// reachable from m = +1/2.
PreparationCost preparation_cost(const AtomicState& psi_d, double support_tol = 1e-12);

/// The five reference schemes (a)-(e), in order.
const std::vector<Scheme>& catalog();
/// Throws DomainError for an unknown name.
const Scheme& catalog_scheme(std::string_view name);

inline constexpr const char* kCatalogVersion = "ca40-854-393/1";

}  // namespace ionstore
