#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

#include "cli.hpp"
#include "ionstore/scheme_io.hpp"
#include "ionstore/search.hpp"
#include "ionstore/version.hpp"

namespace py = pybind11;
using namespace ionstore;

namespace {

HalfInt half(double x) {
    const double twice = 2.0 * x;
    const double r = std::round(twice);
    if (std::abs(twice - r) > 1e-9) throw DomainError("not a half-integer: " + std::to_string(x));
    return HalfInt::from_twice(static_cast<int>(r));
}

// A catalog name, a JSON record, or a path to a scheme file.
Scheme scheme_arg(const std::string& s) {
    for (const Scheme& c : catalog())
        if (c.name == s) return c;
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && s[first] == '{') return scheme_from_string(s);
    return load_scheme_file(s);
}

py::object state_or_none(const MappedState& m) {
    if (m.is_zero) return py::none();
    return py::cast(Eigen::VectorXcd(m.state.amps()));
}

py::dict report_dict(const MappingReport& r) {
    py::dict d;
    d["efficiency_min"] = r.efficiency_min;
    d["efficiency_max"] = r.efficiency_max;
    d["gram_deviation"] = r.gram_deviation;
    d["is_valid"] = r.is_valid;
    py::dict mapped;
    for (const MappedState* m : r.mapped()) {
        py::dict e;
        e["probability"] = m->probability;
        e["state"] = state_or_none(*m);
        mapped[py::str(m->input_label)] = e;
    }
    d["mapped"] = mapped;
    return d;
}

py::dict verify_dict(const std::string& scheme, double tol_eff, double tol_fid, double validity_tol) {
    const VerificationReport r = verify(scheme_arg(scheme), tol_eff, tol_fid, validity_tol);
    py::dict d;
    d["name"] = r.name;
    d["computed_efficiency"] = r.computed_efficiency;
    d["declared_efficiency"] = r.declared_efficiency ? py::cast(*r.declared_efficiency) : py::none();
    d["efficiency_match"] = r.efficiency_match;
    py::list heralds;
    for (const MappingReport& m : r.heralds) heralds.append(report_dict(m));
    d["heralds"] = heralds;
    py::list checks;
    for (const MappingCheck& c : r.mapping_fidelities) {
        py::dict e;
        e["input"] = c.input_label;
        e["herald"] = c.herald;
        e["fidelity"] = c.fidelity;
        e["amplitude_error"] = c.amplitude_error;
        e["pass"] = c.pass;
        checks.append(e);
    }
    d["mapping_fidelities"] = checks;
    d["all_pass"] = r.all_pass;
    return d;
}

std::vector<Eigen::Matrix2cd> matrices(const std::string& scheme) {
    std::vector<Eigen::Matrix2cd> out;
    for (const TransferMatrix& m : scheme_transfer_matrices(scheme_arg(scheme))) out.push_back(m.entries);
    return out;
}

py::list map_input(const std::string& scheme, const std::string& input) {
    const PolarizationState in = parse_polarization(input);
    py::list out;
    for (const TransferMatrix& m : scheme_transfer_matrices(scheme_arg(scheme))) {
        const AtomicState s = m.apply(in);
        const double p = s.norm_sq();
        py::dict e;
        e["probability"] = p;
        e["relative_efficiency"] = p / (2.0 / 3.0);
        e["state"] = p > 1e-24 ? py::cast(Eigen::VectorXcd(s.normalized().amps())) : py::none();
        out.append(e);
    }
    return out;
}

Interval interval_deg(std::pair<double, double> r) { return {deg_to_rad(r.first), deg_to_rad(r.second)}; }

py::dict optimize_dict(const std::string& family, const std::string& fixed_record,
                       std::pair<double, double> alpha, std::pair<double, double> alpha_prime,
                       bool lock_alpha, double tol, std::uint64_t seed, int threads) {
    SearchSpace space;
    if (family == "single") {
        space.psi_d_family = PsiFamily::single_sublevel();
    } else if (family == "pair") {
        space.psi_d_family = PsiFamily::balanced_pair();
    } else if (family == "fixed") {
        // Reuse the scheme reader for the state so the JSON layout is shared.
        nlohmann::json rec = scheme_to_json(catalog_scheme("e"));
        rec.erase("declared_mappings");
        rec["psi_d"] = nlohmann::json::parse(fixed_record);
        space.psi_d_family = PsiFamily::fixed_state(scheme_from_json(rec).psi_d);
    } else {
        throw DomainError("unknown psi_d family '" + family + "'");
    }
    space.alpha_range = interval_deg(alpha);
    space.alpha_prime_range = interval_deg(alpha_prime);
    space.lock_alpha_equal = lock_alpha;
    SearchOptions options;
    options.threads = threads;

    SearchResult r;
    {
        py::gil_scoped_release release;
        r = optimize(space, tol, seed, options);
    }
    auto rec = scheme_to_json(r.best);
    py::dict d;
    d["scheme"] = py::module_::import("json").attr("loads")(rec.dump());
    d["objective"] = r.objective;
    d["constraint_residual"] = r.constraint_residual;
    d["feasible"] = r.feasible;
    d["iterations"] = r.iterations;
    d["evaluations"] = r.evaluations;
    py::list trace;
    for (const TraceEntry& t : r.trace) trace.append(py::make_tuple(t.iteration, t.merit, t.efficiency, t.residual));
    d["trace"] = trace;
    return d;
}

py::list sweep_list(const std::string& scheme, const std::string& param, double lo, double hi, int steps) {
    const SweepParameter p = parse_sweep_parameter(param);
    const double k = is_angle(p) ? deg_to_rad(1.0) : 1.0;
    const SweepResult r = sweep(scheme_arg(scheme), p, {lo * k, hi * k}, steps);
    py::list out;
    for (const SweepSample& s : r.samples) {
        py::dict e;
        e["param_value"] = s.value / k;
        e["eff_min"] = s.efficiency_min;
        e["eff_max"] = s.efficiency_max;
        e["gram_deviation"] = s.gram_deviation;
        e["worst_fidelity"] = s.worst_fidelity;
        out.append(e);
    }
    return out;
}

py::tuple run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    m.attr("__version__") = kToolVersion;
    m.attr("catalog_version") = kCatalogVersion;

    m.def("cgc", [](double j1, double m1, double j2, double m2, double J, double M) {
        return cgc(half(j1), half(m1), half(j2), half(m2), half(J), half(M));
    });
    m.def("catalog_json", [] {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const Scheme& s : catalog()) a.push_back(scheme_to_json(s));
        return a.dump();
    });
    m.def("transfer_matrices", &matrices, py::arg("scheme"));
    m.def("efficiency", [](const std::string& s) { return scheme_efficiency(scheme_transfer_matrices(scheme_arg(s))); },
          py::arg("scheme"));
    m.def("verify", &verify_dict, py::arg("scheme"), py::arg("tol_eff"), py::arg("tol_fid"),
          py::arg("validity_tol"));
    m.def("map_input", &map_input, py::arg("scheme"), py::arg("input"));
    m.def("optimize", &optimize_dict, py::arg("family"), py::arg("fixed_record"), py::arg("alpha"),
          py::arg("alpha_prime"), py::arg("lock_alpha"), py::arg("tol"), py::arg("seed"), py::arg("threads"));
    m.def("sweep", &sweep_list, py::arg("scheme"), py::arg("param"), py::arg("lo"), py::arg("hi"),
          py::arg("steps"));
    m.def("run_cli", &run_cli, py::arg("args"));
    m.def("larmor_period", [](double b) { return larmor_period(manifolds::S1_2(), b); }, py::arg("b_field_tesla"));
}
