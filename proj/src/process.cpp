#include "ionstore/process.hpp"

#include <cmath>

namespace ionstore {

namespace {

void require_coupled(const Manifold& a, const Manifold& b) {
    if (!dipole_coupled(a, b))
        throw DomainError(a.label + " and " + b.label + " are not dipole-coupled");
}

const std::array<PhotonVector, 3>& photon_basis() {
    static const std::array<PhotonVector, 3> basis = {
        PhotonVector{1.0, 0.0, 0.0}, PhotonVector{0.0, 1.0, 0.0}, PhotonVector{0.0, 0.0, 1.0}};
    return basis;
}

MappedState map_input(const TransferMatrix& m, std::string label,
                      const PolarizationState& input) {
    AtomicState out = m.apply(input);
    const double p = out.norm_sq();
    const bool zero = p <= 1e-28;
    if (!zero) out = out.normalized();
    return MappedState{std::move(label), input, std::move(out), p, zero};
}

}  // namespace

AtomicState absorb(const AtomicState& psi_d, const PhotonVector& photon, const Manifold& upper) {
    const Manifold& lower = psi_d.manifold();
    require_coupled(lower, upper);
    const SphericalComponents pol = photon.to_spherical();
    AtomicState out(upper);
    for (const HalfInt m_p : upper.sublevels()) {
        cplx sum = 0.0;
        for (const HalfInt m_d : lower.sublevels()) {
            const int twice_q = (m_p - m_d).twice();
            if (std::abs(twice_q) > 2) continue;
            sum += dipole_amplitude(lower, m_d, upper, m_p) * psi_d.amp(m_d) * pol[twice_q / 2];
        }
        out.amp(m_p) = sum;
    }
    return out;
}

JointState emit(const AtomicState& psi_p, const Manifold& lower) {
    const Manifold& upper = psi_p.manifold();
    require_coupled(lower, upper);
    Eigen::MatrixX3cd amps = Eigen::MatrixX3cd::Zero(lower.sublevel_count(), 3);
    for (const HalfInt m_s : lower.sublevels()) {
        SphericalComponents out;
        for (const HalfInt m_p : upper.sublevels()) {
            const int twice_q = (m_p - m_s).twice();
            if (std::abs(twice_q) > 2) continue;
            out[twice_q / 2] += dipole_amplitude(lower, m_s, upper, m_p) * psi_p.amp(m_p);
        }
        const PhotonVector v = PhotonVector::from_spherical(out);
        amps.row(lower.index_of(m_s)) << v.zero, v.x, v.y;
    }
    return JointState(lower, std::move(amps));
}

AtomicState final_state(const AtomicState& psi_d, const PolarizationState& input,
                        const Geometry& geom, const PolarizationState& det) {
    const JointState joint = emit(absorb(psi_d, project_polarization(input, geom.alpha)));
    const Manifold& s = joint.atom_manifold();
    AtomicState out(s);
    for (const HalfInt m : s.sublevels())
        out.amp(m) = detect_project(joint.photon_part(m), det, geom.alpha_prime);
    return out;
}

AtomicState TransferMatrix::apply(const PolarizationState& input) const {
    const Eigen::Vector2cd v = entries * Eigen::Vector2cd(input.h, input.v);
    const HalfInt up = HalfInt::from_twice(1);
    AtomicState out(manifolds::S1_2());
    out.amp(up) = v[0];
    out.amp(-up) = v[1];
    return out;
}

StoragePipeline::StoragePipeline(const AtomicState& psi_d, const Manifold& upper,
                                 const Manifold& lower) {
    require_coupled(psi_d.manifold(), upper);
    require_coupled(lower, upper);
    if (lower.sublevel_count() != 2)
        throw DomainError("transfer matrices need a two-level final manifold, got " + lower.label);
    if (upper.sublevel_count() > kMaxUpperSublevels)
        throw DomainError("upper manifold " + upper.label + " has too many sublevels");

    absorption_.resize(upper.sublevel_count(), 3);
    for (int c = 0; c < 3; ++c) absorption_.col(c) = absorb(psi_d, photon_basis()[c], upper).amps();

    for (auto& e : emission_) e = Emission::Zero(2, upper.sublevel_count());
    for (int p = 0; p < upper.sublevel_count(); ++p) {
        const JointState joint = emit(AtomicState::basis(upper, upper.sublevel_at(p)), lower);
        for (int c = 0; c < 3; ++c) emission_[c].col(p) = joint.amps().col(c);
    }
}

TransferMatrix StoragePipeline::transfer(const Geometry& geom,
                                         const PolarizationState& det) const {
    Eigen::Matrix<cplx, 3, 2> input_map;
    input_map << std::sin(geom.alpha), 0.0, std::cos(geom.alpha), 0.0, 0.0, 1.0;

    const PhotonVector analyzer = project_polarization(det, geom.alpha_prime);
    const Emission detect = std::conj(analyzer.zero) * emission_[0] +
                                    std::conj(analyzer.x) * emission_[1] +
                                    std::conj(analyzer.y) * emission_[2];
    const Eigen::Matrix2cd ascending = detect * absorption_ * input_map;

    TransferMatrix m;
    m.entries.row(0) = ascending.row(1);
    m.entries.row(1) = ascending.row(0);
    m.herald = det;
    m.geometry = geom;
    return m;
}

TransferMatrix transfer_matrix(const AtomicState& psi_d, const Geometry& geom,
                               const PolarizationState& det) {
    return StoragePipeline(psi_d).transfer(geom, det);
}

std::array<double, 2> gram_eigenvalues(const Eigen::Matrix2cd& m) {
    const Eigen::Matrix2cd g = m.adjoint() * m;
    const double a = g(0, 0).real();
    const double d = g(1, 1).real();
    const double half_gap = std::hypot(0.5 * (a - d), std::abs(g(0, 1)));
    const double centre = 0.5 * (a + d);
    return {std::max(0.0, centre - half_gap), centre + half_gap};
}

EfficiencyBand efficiency(const TransferMatrix& m) {
    const auto [lo, hi] = gram_eigenvalues(m.entries);
    return {lo / kMaxSuccessProbability, hi / kMaxSuccessProbability};
}

double gram_deviation(const Eigen::Matrix2cd& m) {
    const Eigen::Matrix2cd g = m.adjoint() * m;
    return std::sqrt(2.0) * std::hypot(0.5 * (g(0, 0).real() - g(1, 1).real()), std::abs(g(0, 1)));
}

MappingReport validity(const TransferMatrix& m, double tol) {
    if (!(tol > 0.0)) throw DomainError("validity tolerance must be positive");
    MappingReport r{
        .mapped_h = map_input(m, "H", PolarizationState::H()),
        .mapped_v = map_input(m, "V", PolarizationState::V()),
        .mapped_r = map_input(m, "R", PolarizationState::R()),
        .mapped_l = map_input(m, "L", PolarizationState::L()),
    };
    const EfficiencyBand band = efficiency(m);
    r.efficiency_min = band.min;
    r.efficiency_max = band.max;
    r.gram_deviation = gram_deviation(m.entries);
    r.is_valid = r.gram_deviation <= tol;
    return r;
}

double fidelity(const AtomicState& a, const AtomicState& b) {
    const double na = a.norm_sq();
    const double nb = b.norm_sq();
    if (na == 0.0 || nb == 0.0) throw DomainError("fidelity with a zero-norm state");
    return std::min(1.0, std::norm(inner(a, b)) / (na * nb));
}

AtomicState zeeman_evolve(const AtomicState& state, double b_field_tesla, double time_s) {
    const Manifold& mf = state.manifold();
    const double rate = mf.g_lande * constants::kBohrMagneton * b_field_tesla / constants::kHbar;
    AtomicState out = state;
    for (int i = 0; i < mf.sublevel_count(); ++i)
        out.amps()[i] *= std::polar(1.0, -mf.sublevel_at(i).value() * rate * time_s);
    return out;
}

double larmor_period(const Manifold& manifold, double b_field_tesla) {
    const double freq = std::abs(manifold.g_lande * constants::kBohrMagneton * b_field_tesla) /
                        constants::kPlanck;
    if (freq == 0.0) throw DomainError("no Larmor precession without Zeeman splitting");
    return 1.0 / freq;
}

}  // namespace ionstore
