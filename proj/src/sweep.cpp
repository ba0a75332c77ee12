#include "ionstore/search.hpp"

#include <algorithm>
#include <cmath>

namespace ionstore {

namespace {

struct Named {
    SweepParameter p;
    const char* name;
};

constexpr Named kNames[] = {
    {SweepParameter::Alpha, "alpha"},
    {SweepParameter::AlphaPrime, "alpha_prime"},
    {SweepParameter::ThetaPrime, "theta_prime"},
    {SweepParameter::PhiPrime, "phi_prime"},
    {SweepParameter::InputImpurity, "input_impurity"},
    {SweepParameter::PsiDImpurity, "psi_d_impurity"},
};

const std::array<PolarizationState, 4>& probe_inputs() {
    static const std::array<PolarizationState, 4> in = {
        PolarizationState::H(), PolarizationState::V(), PolarizationState::R(),
        PolarizationState::L()};
    return in;
}

PolarizationState impure(const PolarizationState& u, double eta) {
    const double keep = std::sqrt(std::max(0.0, 1.0 - eta * eta));
    const PolarizationState perp = u.orthogonal();
    return {keep * u.h + eta * perp.h, keep * u.v + eta * perp.v};
}

}  // namespace

SweepParameter parse_sweep_parameter(std::string_view name) {
    for (const Named& n : kNames)
        if (name == n.name) return n.p;
    std::string known;
    for (const Named& n : kNames) known += std::string(known.empty() ? "" : ", ") + n.name;
    throw DomainError("unknown sweep parameter '" + std::string(name) + "' (expected one of " +
                      known + ")");
}

std::string to_string(SweepParameter p) {
    for (const Named& n : kNames)
        if (n.p == p) return n.name;
    return "unknown";
}

bool is_angle(SweepParameter p) {
    return p != SweepParameter::InputImpurity && p != SweepParameter::PsiDImpurity;
}

AtomicState impurity_direction(const AtomicState& psi) {
    if (psi.is_zero()) throw DomainError("impurity direction of a zero state");
    const AtomicState u = psi.normalized();
    const Manifold& mf = u.manifold();
    const int n = mf.sublevel_count();
    int populated = 0, top = -1;
    for (int i = 0; i < n; ++i)
        if (std::abs(u.amps()[i]) > 1e-12) {
            ++populated;
            top = i;
        }

    AtomicState d = u;
    if (populated == 1) {
        d = AtomicState(mf);
        d.amps()[top + 1 < n ? top + 1 : top - 1] = 1.0;
        return d;
    }
    d.amps()[top] = -d.amps()[top];
    d.amps() -= inner(u, d) * u.amps();
    return d.normalized();
}

SweepResult sweep(const Scheme& scheme, SweepParameter parameter, Interval range, int steps) {
    if (steps < 1) throw DomainError("sweep needs at least one step");
    if (!(range.lo <= range.hi)) throw DomainError("sweep range is empty");
    if (steps == 1 && !range.degenerate())
        throw DomainError("a single-step sweep needs a degenerate range");
    if (!is_angle(parameter) && (std::abs(range.lo) > 1.0 || std::abs(range.hi) > 1.0))
        throw DomainError("impurity amplitudes must lie in [-1, 1]");

    // Nominal outputs per herald and probe input.
    const std::vector<TransferMatrix> nominal = scheme_transfer_matrices(scheme);
    std::vector<std::array<AtomicState, 4>> reference;
    for (const TransferMatrix& m : nominal) {
        std::array<AtomicState, 4> row{AtomicState(manifolds::S1_2()), AtomicState(manifolds::S1_2()),
                                       AtomicState(manifolds::S1_2()), AtomicState(manifolds::S1_2())};
        for (int k = 0; k < 4; ++k) row[k] = m.apply(probe_inputs()[k]);
        reference.push_back(std::move(row));
    }
    const AtomicState psi0 = scheme.psi_d.normalized();
    const AtomicState d_dir = impurity_direction(psi0);

    SweepResult out{parameter, {}};
    for (int i = 0; i < steps; ++i) {
        const double x = steps == 1 ? range.lo : range.lo + i * (range.hi - range.lo) / (steps - 1);
        Scheme s = scheme;
        double input_eta = 0.0;
        switch (parameter) {
            case SweepParameter::Alpha: s.geometry.alpha = x; break;
            case SweepParameter::AlphaPrime: s.geometry.alpha_prime = x; break;
            case SweepParameter::ThetaPrime: s.detection.theta_prime = x; break;
            case SweepParameter::PhiPrime: s.detection.phi_prime = x; break;
            case SweepParameter::InputImpurity: input_eta = x; break;
            case SweepParameter::PsiDImpurity: {
                const double keep = std::sqrt(std::max(0.0, 1.0 - x * x));
                s.psi_d = AtomicState(psi0.manifold(), keep * psi0.amps() + x * d_dir.amps());
                break;
            }
        }
        const std::vector<TransferMatrix> mats = scheme_transfer_matrices(s);
        Eigen::Matrix2cd gram_sum = Eigen::Matrix2cd::Zero();
        SweepSample sample;
        sample.value = x;
        sample.worst_fidelity = 1.0;
        for (std::size_t h = 0; h < mats.size(); ++h) {
            gram_sum += mats[h].gram();
            sample.gram_deviation = std::max(sample.gram_deviation, gram_deviation(mats[h].entries));
            for (int k = 0; k < 4; ++k) {
                const AtomicState& ref = reference[h][k];
                if (ref.is_zero()) continue;
                const AtomicState got = mats[h].apply(impure(probe_inputs()[k], input_eta));
                sample.worst_fidelity =
                    std::min(sample.worst_fidelity, got.is_zero() ? 0.0 : fidelity(ref, got));
            }
        }
        const double centre = 0.5 * (gram_sum(0, 0).real() + gram_sum(1, 1).real());
        const double half_gap =
            std::hypot(0.5 * (gram_sum(0, 0).real() - gram_sum(1, 1).real()), std::abs(gram_sum(0, 1)));
        sample.efficiency_min = std::max(0.0, centre - half_gap) / kMaxSuccessProbability;
        sample.efficiency_max = (centre + half_gap) / kMaxSuccessProbability;
        out.samples.push_back(sample);
    }
    return out;
}

}  // namespace ionstore
