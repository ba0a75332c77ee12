#pragma once

// Search for valid storage schemes (grid + Nelder-Mead refinement under a
// validity constraint) and one-parameter sensitivity sweeps.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ionstore/schemes.hpp"

namespace ionstore {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    static Interval point(double x) { return {x, x}; }
    bool degenerate() const { return hi == lo; }
    double width() const { return hi - lo; }
};

/// Candidate initial D5/2 states.
struct PsiFamily {
    enum class Kind { Fixed, SingleSublevel, BalancedPair };

    Kind kind = Kind::SingleSublevel;
    AtomicState fixed{manifolds::D5_2()};

    static PsiFamily fixed_state(AtomicState s) { return {Kind::Fixed, std::move(s)}; }
    static PsiFamily single_sublevel() { return {Kind::SingleSublevel, AtomicState(manifolds::D5_2())}; }
    /// (|-m> + |+m>)/sqrt(2) for every m > 0.
    static PsiFamily balanced_pair() { return {Kind::BalancedPair, AtomicState(manifolds::D5_2())}; }

    std::vector<AtomicState> members() const;
};

struct SearchSpace {
    PsiFamily psi_d_family;
    Interval alpha_range{0.0, kPi};
    Interval alpha_prime_range{0.0, kPi};
    bool lock_alpha_equal = false;
    bool detection_free = true;
    /// Searched detection box when detection_free is set.
    Interval theta_prime_range{-kPi / 2.0, kPi / 2.0};
    Interval phi_prime_range{0.0, kPi};
    /// Used when detection_free is false.
    DetectionBasis fixed_detection;

    /// Throws DomainError for empty or out-of-range intervals.
    void validate() const;
};

struct SearchOptions {
    double alpha_step_deg = 2.0;      // grid step for alpha and alpha'
    double detection_step_deg = 5.0;  // grid step for theta' and phi'
    int refine_starts = 5;            // K best grid points refined by Nelder-Mead
    double penalty_weight = 1e3;      // merit = efficiency - w * residual
    double grid_relative_tol = 0.1;   // grid filter on residual / tr(M^dagger M)
    double min_efficiency = 1e-6;     // zero maps are not memories
    int max_iterations = 4000;        // per Nelder-Mead run
    int threads = 1;
};

struct TraceEntry {
    int iteration = 0;
    double merit = 0.0;       // best-so-far penalized objective
    double efficiency = 0.0;  // of that incumbent
    double residual = 0.0;
};

struct SearchResult {
    Scheme best;
    double objective = 0.0;            // summed-herald efficiency
    double constraint_residual = 0.0;  // max gram deviation over accepted heralds
    bool feasible = false;
    std::vector<TraceEntry> trace;
    long evaluations = 0;
    int iterations = 0;
};

SearchResult optimize(const SearchSpace& space, double feasibility_tol, std::uint64_t seed,
                      const SearchOptions& options = {});

inline constexpr double kUnboundedTol = std::numeric_limits<double>::infinity();

enum class SweepParameter { Alpha, AlphaPrime, ThetaPrime, PhiPrime, InputImpurity, PsiDImpurity };

/// Throws DomainError for an unknown name.
SweepParameter parse_sweep_parameter(std::string_view name);
std::string to_string(SweepParameter p);
/// Angles are swept in radians; impurities are amplitudes in [-1, 1].
bool is_angle(SweepParameter p);

struct SweepSample {
    double value = 0.0;
    double efficiency_min = 0.0;
    double efficiency_max = 0.0;
    double gram_deviation = 0.0;
    double worst_fidelity = 0.0;
};

struct SweepResult {
    SweepParameter parameter;
    std::vector<SweepSample> samples;
};

SweepResult sweep(const Scheme& scheme, SweepParameter parameter, Interval range, int steps);

/// Fixed state orthogonal to psi used by the psi_d impurity model.
AtomicState impurity_direction(const AtomicState& psi);

}  // namespace ionstore
