#include "ionstore/schemes.hpp"

#include <cmath>

namespace ionstore {

namespace {

const HalfInt kPlusHalf = HalfInt::from_twice(1);

AtomicState s_state(cplx up, cplx down) {
    return AtomicState::superposition(manifolds::S1_2(), {{kPlusHalf, up}, {-kPlusHalf, down}});
}

DeclaredMapping declare(const char* label, int herald, AtomicState expected, int decimals = 0) {
    const std::string l(label);
    PolarizationState in = l == "H"   ? PolarizationState::H()
                           : l == "V" ? PolarizationState::V()
                           : l == "R" ? PolarizationState::R()
                                      : PolarizationState::L();
    return DeclaredMapping{l, in, herald, std::move(expected), decimals};
}

double rounding_tolerance(int decimals) { return 0.5 * std::pow(10.0, -decimals); }

MappingCheck check_mapping(const DeclaredMapping& d, const std::vector<TransferMatrix>& heralds,
                           double tol_fid) {
    MappingCheck c{d.input_label, d.herald};
    if (d.herald < 0 || d.herald >= static_cast<int>(heralds.size())) return c;
    const AtomicState got = heralds[d.herald].apply(d.input);
    if (got.is_zero() || d.expected.is_zero()) return c;
    c.fidelity = fidelity(got, d.expected);
    double floor = tol_fid;
    if (d.decimals > 0) {
        const double tol = rounding_tolerance(d.decimals);
        const Eigen::VectorXcd a = got.normalized().amps();
        const Eigen::VectorXcd b = d.expected.normalized().amps();
        for (int i = 0; i < a.size(); ++i)
            c.amplitude_error = std::max(c.amplitude_error, std::abs(std::abs(a[i]) - std::abs(b[i])));
        floor = std::max(tol_fid, tol);
        c.pass = c.amplitude_error <= tol;
    } else {
        c.pass = true;
    }
    c.pass = c.pass && c.fidelity >= 1.0 - floor;
    return c;
}

Scheme make_catalog_scheme(std::string name, AtomicState psi_d, double alpha, double alpha_prime,
                           double theta_prime, double phi_prime, HeraldMode heralds,
                           double declared_eff, std::vector<DeclaredMapping> mappings) {
    Scheme s;
    s.name = std::move(name);
    s.psi_d = std::move(psi_d);
    s.geometry = {alpha, alpha_prime};
    s.detection = {theta_prime, phi_prime};
    s.heralds = heralds;
    s.declared_efficiency = declared_eff;
    s.declared_mappings = std::move(mappings);
    return s;
}

std::vector<Scheme> build_catalog() {
    const double r = 1.0 / std::sqrt(2.0);
    const Manifold& d52 = manifolds::D5_2();
    const auto pair = [&](int twice_m) {
        return AtomicState::superposition(
            d52, {{HalfInt::from_twice(-twice_m), r}, {HalfInt::from_twice(twice_m), r}});
    };
    const AtomicState plus = s_state(r, r);
    const AtomicState minus = s_state(r, -r);
    const AtomicState up = s_state(1.0, 0.0);
    const AtomicState down = s_state(0.0, 1.0);

    std::vector<Scheme> out;

    out.push_back(make_catalog_scheme(
        "a", pair(5), 0.0, 0.0, 0.0, 0.0, HeraldMode::Both, 0.50,
        {declare("H", 0, plus), declare("V", 0, minus), declare("R", 0, down),
         declare("L", 0, up), declare("H", 1, minus), declare("V", 1, plus),
         declare("R", 1, down), declare("L", 1, up)}));

    out.push_back(make_catalog_scheme(
        "b", pair(3), 0.0, deg_to_rad(90.0), 0.0, 0.0, HeraldMode::Both, 0.25,
        {declare("H", 0, plus), declare("V", 0, minus), declare("R", 0, down),
         declare("L", 0, up), declare("H", 1, minus), declare("V", 1, plus),
         declare("R", 1, up), declare("L", 1, down)}));

    out.push_back(make_catalog_scheme(
        "c", pair(3), 0.0, 0.0, 0.0, 0.0, HeraldMode::Both, 0.10,
        {declare("H", 0, plus), declare("V", 0, minus), declare("R", 0, up),
         declare("L", 0, down), declare("H", 1, minus), declare("V", 1, plus),
         declare("R", 1, up), declare("L", 1, down)}));

    // Exact interference point; rounds to alpha = 47.06 deg, theta' = -55.74 deg.
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    const double alpha_d = std::atan(std::sqrt(2.0 * inv_sqrt3));
    const double theta_d = -std::atan(std::sqrt(1.0 + 2.0 * inv_sqrt3));
    out.push_back(make_catalog_scheme(
        "d", AtomicState::basis(d52, HalfInt::from_twice(-3)), alpha_d, alpha_d, theta_d,
        kPi / 2.0, HeraldMode::One, 0.1072,
        {declare("H", 0, s_state(0.56, -0.83), 2), declare("V", 0, s_state(0.83, 0.56), 2),
         declare("R", 0, s_state(0.98, -0.19), 2), declare("L", 0, s_state(0.19, 0.98), 2)}));

    out.push_back(make_catalog_scheme(
        "e", AtomicState::basis(d52, HalfInt::from_twice(-1)), deg_to_rad(90.0), deg_to_rad(90.0),
        deg_to_rad(90.0), 0.0, HeraldMode::One, 0.10,
        {declare("H", 0, up), declare("V", 0, down), declare("R", 0, plus),
         declare("L", 0, minus)}));

    return out;
}

}  // namespace

std::vector<PolarizationState> Scheme::herald_outcomes() const {
    std::vector<PolarizationState> out{detection.primary()};
    if (heralds == HeraldMode::Both) out.push_back(detection.secondary());
    return out;
}

int Scheme::prep_pulses() const { return preparation_cost(psi_d).pulses; }

std::vector<TransferMatrix> scheme_transfer_matrices(const Scheme& scheme) {
    const StoragePipeline pipeline(scheme.psi_d);
    std::vector<TransferMatrix> out;
    for (const PolarizationState& det : scheme.herald_outcomes())
        out.push_back(pipeline.transfer(scheme.geometry, det));
    return out;
}

double scheme_efficiency(const std::vector<TransferMatrix>& heralds) {
    double sum = 0.0;
    for (const TransferMatrix& m : heralds) sum += efficiency(m).mean();
    return sum;
}

VerificationReport verify(const Scheme& scheme, double tol_eff, double tol_fid,
                          double validity_tol) {
    if (!(tol_eff > 0.0) || !(tol_fid > 0.0))
        throw DomainError("verification tolerances must be positive");
    const std::vector<TransferMatrix> heralds = scheme_transfer_matrices(scheme);

    VerificationReport r;
    r.name = scheme.name;
    r.computed_efficiency = scheme_efficiency(heralds);
    r.declared_efficiency = scheme.declared_efficiency;
    if (scheme.declared_efficiency)
        r.efficiency_match = std::abs(r.computed_efficiency - *scheme.declared_efficiency) <= tol_eff;

    bool all_valid = true;
    for (const TransferMatrix& m : heralds) {
        r.heralds.push_back(validity(m, validity_tol));
        all_valid = all_valid && r.heralds.back().is_valid;
    }

    bool mappings_ok = true;
    if (scheme.declared_mappings) {
        for (const DeclaredMapping& d : *scheme.declared_mappings) {
            r.mapping_fidelities.push_back(check_mapping(d, heralds, tol_fid));
            mappings_ok = mappings_ok && r.mapping_fidelities.back().pass;
        }
    }
    r.all_pass = r.efficiency_match && all_valid && mappings_ok;
    return r;
}

PreparationCost preparation_cost(const AtomicState& psi_d, double support_tol) {
    const Manifold& mf = psi_d.manifold();
    const double norm = psi_d.norm_sq();
    if (norm == 0.0) throw DomainError("cannot prepare the zero state");

    // Quadrupole branches S1/2 m_s -> m with |m - m_s| <= 2.
    const auto reachable_from = [](HalfInt m, int twice_ms) {
        return std::abs(m.twice() - twice_ms) <= 4;
    };

    PreparationCost cost;
    bool needs_flip = false;
    int support = 0;
    for (int i = 0; i < mf.sublevel_count(); ++i) {
        if (std::norm(psi_d.amps()[i]) <= support_tol * norm) continue;
        const HalfInt m = mf.sublevel_at(i);
        ++support;
        if (reachable_from(m, -1)) continue;
        if (!reachable_from(m, +1))
            throw DomainError("sublevel m=" + m.str() + " of " + mf.label +
                              " is not reachable by a quadrupole pulse from S1/2");
        needs_flip = true;
    }
    cost.pulses = support + (needs_flip ? 1 : 0);
    cost.approximate = support > 2;
    return cost;
}

const std::vector<Scheme>& catalog() {
    static const std::vector<Scheme> schemes = build_catalog();
    return schemes;
}

const Scheme& catalog_scheme(std::string_view name) {
    for (const Scheme& s : catalog())
        if (s.name == name) return s;
    throw DomainError("unknown scheme '" + std::string(name) + "'");
}

}  // namespace ionstore
