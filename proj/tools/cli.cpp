#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "ionstore/scheme_io.hpp"
#include "ionstore/search.hpp"
#include "ionstore/version.hpp"

namespace ionstore::cli {

namespace {

using ordered = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixed(double x, int prec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, x == 0.0 ? 0.0 : x);
    return buf;
}

ordered envelope(const std::string& command, ordered inputs, ordered results) {
    ordered j;
    j["command"] = command;
    j["inputs"] = std::move(inputs);
    j["results"] = std::move(results);
    j["versions"] = {{"tool", kToolVersion}, {"catalog", kCatalogVersion}};
    return j;
}

void emit_json(std::ostream& out, const ordered& j) { out << j.dump(2) << "\n"; }

struct Selected {
    Scheme scheme;
    std::string source;  // "catalog" or the file path
};

Selected resolve(const std::string& selector) {
    for (const Scheme& s : catalog())
        if (s.name == selector) return {s, "catalog"};
    if (std::filesystem::exists(selector)) return {load_scheme_file(selector), selector};
    std::string names;
    for (const Scheme& s : catalog()) names += (names.empty() ? "" : ", ") + s.name;
    throw UsageError("unknown scheme '" + selector + "' (catalog: " + names +
                     "; or a path to a scheme file)");
}

// Fraction of P3/2 decays that produce the 393 nm herald; reported, not folded into efficiencies.
double herald_branching() {
    for (const BranchingRatio& b : p32_branching())
        if (b.lower == "S1/2") return b.fraction;
    return 0.0;
}

std::string herald_label(HeraldMode m) { return m == HeraldMode::Both ? "both" : "one"; }

Interval parse_range_deg(const std::string& text, bool degrees) {
    const auto sep = text.find(':');
    if (sep == std::string::npos) throw UsageError("range '" + text + "' must be lo:hi");
    try {
        std::size_t a = 0, b = 0;
        const std::string ls = text.substr(0, sep), hs = text.substr(sep + 1);
        double lo = std::stod(ls, &a), hi = std::stod(hs, &b);
        if (a != ls.size() || b != hs.size()) throw std::invalid_argument("trailing");
        if (degrees) {
            lo = deg_to_rad(lo);
            hi = deg_to_rad(hi);
        }
        if (lo > hi) throw UsageError("range '" + text + "' has lo > hi");
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw UsageError("range '" + text + "' must be lo:hi with numeric bounds");
    }
}

ordered polarization_json(const PolarizationState& p) {
    return {{"h", {p.h.real(), p.h.imag()}}, {"v", {p.v.real(), p.v.imag()}}};
}

// Fixes the global phase so the +1/2 amplitude (or -1/2 if that vanishes) is real positive.
AtomicState phase_fixed(const AtomicState& s) {
    const auto& a = s.amps();
    int ref = std::abs(a[1]) > 1e-9 ? 1 : 0;
    if (std::abs(a[ref]) == 0.0) return s;
    const cplx phase = std::conj(a[ref]) / std::abs(a[ref]);
    AtomicState out = s;
    out.amps() *= phase;
    for (auto& c : out.amps()) {
        if (std::abs(c.real()) < 1e-15) c.real(0.0);
        if (std::abs(c.imag()) < 1e-15) c.imag(0.0);
    }
    return out;
}

std::string ket_string(const AtomicState& s) {
    std::string text;
    const Manifold& mf = s.manifold();
    for (int i = mf.sublevel_count() - 1; i >= 0; --i) {
        const cplx c = s.amps()[i];
        if (std::abs(c) < 5e-5) continue;
        std::string coeff;
        if (std::abs(c.imag()) < 5e-5) {
            coeff = fixed(c.real(), 4);
        } else {
            coeff = "(" + fixed(c.real(), 4) + (c.imag() < 0 ? "-" : "+") + fixed(std::abs(c.imag()), 4) + "i)";
        }
        if (!text.empty() && coeff[0] != '-') text += " + ";
        else if (!text.empty()) { text += " - "; coeff.erase(0, 1); }
        const HalfInt m = mf.sublevel_at(i);
        text += coeff + "|" + (m.twice() > 0 ? "+" : "") + m.str() + ">";
    }
    return text.empty() ? "0" : text;
}

ordered scheme_summary(const Scheme& s) {
    ordered j;
    j["name"] = s.name;
    j["psi_d"] = atomic_state_to_json(s.psi_d);
    j["alpha_deg"] = rad_to_deg(s.geometry.alpha);
    j["alpha_prime_deg"] = rad_to_deg(s.geometry.alpha_prime);
    j["theta_prime_deg"] = rad_to_deg(s.detection.theta_prime);
    j["phi_prime_deg"] = rad_to_deg(s.detection.phi_prime);
    j["heralds"] = herald_label(s.heralds);
    if (s.declared_efficiency)
        j["declared_efficiency"] = *s.declared_efficiency;
    else
        j["declared_efficiency"] = nullptr;
    j["computed_efficiency"] = scheme_efficiency(scheme_transfer_matrices(s));
    j["herald_branching"] = herald_branching();
    const PreparationCost cost = preparation_cost(s.psi_d);
    j["prep_pulses"] = cost.pulses;
    j["prep_approximate"] = cost.approximate;
    return j;
}

void add_format(CLI::App* cmd, std::string& format, const std::string& def) {
    format = def;
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
}

// ---- catalog ----

int cmd_catalog(const std::string& format, std::ostream& out) {
    if (format == "json") {
        ordered list = ordered::array();
        for (const Scheme& s : catalog()) list.push_back(scheme_summary(s));
        emit_json(out, envelope("catalog", {{"format", format}}, {{"schemes", list}}));
        return kOk;
    }
    char line[256];
    std::snprintf(line, sizeof line, "%-6s %-32s %10s %10s %10s %10s %-7s %9s %9s %5s\n", "name",
                  "psi_d", "alpha_deg", "alpha'_deg", "theta'_deg", "phi'_deg", "heralds",
                  "declared", "computed", "prep");
    out << line;
    for (const Scheme& s : catalog()) {
        const ordered j = scheme_summary(s);
        std::snprintf(line, sizeof line, "%-6s %-32s %10.2f %10.2f %10.2f %10.2f %-7s %9s %9.4f %5d\n",
                      s.name.c_str(), ket_string(s.psi_d).c_str(), rad_to_deg(s.geometry.alpha),
                      rad_to_deg(s.geometry.alpha_prime), rad_to_deg(s.detection.theta_prime),
                      rad_to_deg(s.detection.phi_prime), herald_label(s.heralds).c_str(),
                      s.declared_efficiency ? fixed(*s.declared_efficiency, 4).c_str() : "-",
                      j["computed_efficiency"].get<double>(), j["prep_pulses"].get<int>());
        out << line;
    }
    return kOk;
}

// ---- verify ----

struct VerifyArgs {
    std::string selector;
    double tol_eff = 1e-4;
    double tol_fid = 1e-4;
    double validity_tol = kDefaultValidityTol;
    std::string format;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const Selected sel = resolve(a.selector);
    const VerificationReport r = verify(sel.scheme, a.tol_eff, a.tol_fid, a.validity_tol);
    if (a.format == "json") {
        ordered heralds = ordered::array();
        for (std::size_t h = 0; h < r.heralds.size(); ++h) {
            const MappingReport& m = r.heralds[h];
            heralds.push_back({{"herald", h},
                               {"efficiency_min", m.efficiency_min},
                               {"efficiency_max", m.efficiency_max},
                               {"gram_deviation", m.gram_deviation},
                               {"is_valid", m.is_valid}});
        }
        ordered maps = ordered::array();
        for (const MappingCheck& c : r.mapping_fidelities)
            maps.push_back({{"input", c.input_label},
                            {"herald", c.herald},
                            {"fidelity", c.fidelity},
                            {"amplitude_error", c.amplitude_error},
                            {"pass", c.pass}});
        ordered res;
        res["name"] = r.name;
        res["computed_efficiency"] = r.computed_efficiency;
        if (r.declared_efficiency)
            res["declared_efficiency"] = *r.declared_efficiency;
        else
            res["declared_efficiency"] = nullptr;
        res["efficiency_match"] = r.efficiency_match;
        res["herald_branching"] = herald_branching();
        res["heralds"] = heralds;
        res["mappings"] = maps;
        res["all_pass"] = r.all_pass;
        emit_json(out, envelope("verify",
                                {{"scheme", a.selector},
                                 {"source", sel.source},
                                 {"tol_eff", a.tol_eff},
                                 {"tol_fid", a.tol_fid},
                                 {"validity_tol", a.validity_tol}},
                                res));
    } else {
        out << "scheme " << r.name << ": " << (r.all_pass ? "PASS" : "FAIL") << "\n";
        out << "  efficiency computed " << fixed(r.computed_efficiency, 4) << " declared "
            << (r.declared_efficiency ? fixed(*r.declared_efficiency, 4) : std::string("-"))
            << (r.efficiency_match ? "" : "  MISMATCH") << "\n";
        for (std::size_t h = 0; h < r.heralds.size(); ++h) {
            const MappingReport& m = r.heralds[h];
            char line[160];
            std::snprintf(line, sizeof line,
                          "  herald %zu: efficiency %.4f..%.4f  gram_deviation %.3e  %s\n", h,
                          m.efficiency_min, m.efficiency_max, m.gram_deviation,
                          m.is_valid ? "valid" : "INVALID");
            out << line;
        }
        for (const MappingCheck& c : r.mapping_fidelities)
            out << "  " << c.input_label << " (herald " << c.herald << "): fidelity "
                << fixed(c.fidelity, 6) << (c.pass ? "" : "  FAIL") << "\n";
    }
    return r.all_pass ? kOk : kVerifyFailed;
}

// ---- map ----

struct MapArgs {
    std::string selector;
    std::string input = "H";
    std::optional<double> b_field;
    std::optional<double> time;
    std::string format;
};

int cmd_map(const MapArgs& a, std::ostream& out) {
    if (a.b_field.has_value() != a.time.has_value())
        throw UsageError("--b-field and --time must be given together");
    const Selected sel = resolve(a.selector);
    PolarizationState input;
    try {
        input = parse_polarization(a.input);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const double n = std::sqrt(input.norm_sq());
    input = input.scaled(1.0 / n);

    const std::vector<TransferMatrix> mats = scheme_transfer_matrices(sel.scheme);
    ordered heralds = ordered::array();
    std::ostringstream table;
    table << "scheme " << sel.scheme.name << ", input " << a.input << "\n";
    for (std::size_t h = 0; h < mats.size(); ++h) {
        const AtomicState raw = mats[h].apply(input);
        const double p = raw.norm_sq();
        const bool zero = p <= 1e-28;
        ordered j;
        j["herald"] = h;
        j["herald_polarization"] = polarization_json(mats[h].herald);
        j["probability"] = p;
        j["relative_efficiency"] = p / kMaxSuccessProbability;
        j["zero_probability"] = zero;
        table << "  herald " << h << ": ";
        if (zero) {
            j["state"] = nullptr;
            table << "zero-probability channel\n";
        } else {
            const AtomicState s = phase_fixed(raw.normalized());
            j["state"] = atomic_state_to_json(s);
            table << ket_string(s) << "  (probability " << fixed(p, 6) << ")\n";
            if (a.b_field) {
                const AtomicState evolved = phase_fixed(zeeman_evolve(s, *a.b_field, *a.time));
                j["larmor_state"] = atomic_state_to_json(evolved);
                table << "    after Larmor precession: " << ket_string(evolved) << "\n";
            }
        }
        heralds.push_back(std::move(j));
    }
    if (a.format == "json") {
        ordered in{{"scheme", a.selector}, {"source", sel.source}, {"input", a.input},
                   {"input_polarization", polarization_json(input)}};
        if (a.b_field) {
            in["b_field_tesla"] = *a.b_field;
            in["time_s"] = *a.time;
        }
        emit_json(out, envelope("map", in, {{"name", sel.scheme.name}, {"heralds", heralds}}));
    } else {
        out << table.str();
    }
    return kOk;
}

// ---- optimize ----

struct OptimizeArgs {
    std::string psi_d = "single";
    std::optional<double> alpha, alpha_prime, theta_prime, phi_prime;
    std::string alpha_range, alpha_prime_range, theta_prime_range, phi_prime_range;
    bool lock_alpha = false;
    double feasibility_tol = kDefaultValidityTol;
    std::uint64_t seed = 0;
    std::string output;
    std::string format;
    SearchOptions options;
};

PsiFamily parse_family(const std::string& text) {
    if (text == "single") return PsiFamily::single_sublevel();
    if (text == "pair") return PsiFamily::balanced_pair();
    const auto eq = text.find('=');
    if (eq != std::string::npos) {
        const std::string key = text.substr(0, eq);
        HalfInt m;
        try {
            m = HalfInt::parse(text.substr(eq + 1));
        } catch (const std::exception& e) {
            throw UsageError("--psi-d: " + std::string(e.what()));
        }
        const Manifold& d = manifolds::D5_2();
        if (!d.contains(m)) throw UsageError("--psi-d: m=" + m.str() + " is not a D5/2 sublevel");
        if (key == "m") return PsiFamily::fixed_state(AtomicState::basis(d, m));
        if (key == "pair") {
            if (m.twice() <= 0) throw UsageError("--psi-d pair=<m> needs m > 0");
            const double r = 1.0 / std::sqrt(2.0);
            return PsiFamily::fixed_state(AtomicState::superposition(d, {{-m, r}, {m, r}}));
        }
    }
    throw UsageError("--psi-d must be single, pair, m=<m> or pair=<m>, got '" + text + "'");
}

Interval pick_range(const std::optional<double>& fixed_deg, const std::string& range,
                    Interval def, const char* name) {
    if (fixed_deg && !range.empty())
        throw UsageError(std::string("--") + name + " and --" + name + "-range are exclusive");
    if (fixed_deg) return Interval::point(deg_to_rad(*fixed_deg));
    if (!range.empty()) return parse_range_deg(range, true);
    return def;
}

ordered interval_json(Interval r) { return {rad_to_deg(r.lo), rad_to_deg(r.hi)}; }

int cmd_optimize(const OptimizeArgs& a, std::ostream& out, std::ostream& err) {
    SearchSpace space;
    space.psi_d_family = parse_family(a.psi_d);
    space.alpha_range = pick_range(a.alpha, a.alpha_range, space.alpha_range, "alpha");
    space.alpha_prime_range =
        pick_range(a.alpha_prime, a.alpha_prime_range, space.alpha_prime_range, "alpha-prime");
    space.lock_alpha_equal = a.lock_alpha;
    space.theta_prime_range =
        pick_range(a.theta_prime, a.theta_prime_range, space.theta_prime_range, "theta-prime");
    space.phi_prime_range =
        pick_range(a.phi_prime, a.phi_prime_range, space.phi_prime_range, "phi-prime");
    if (space.theta_prime_range.degenerate() && space.phi_prime_range.degenerate()) {
        space.detection_free = false;
        space.fixed_detection = {space.theta_prime_range.lo, space.phi_prime_range.lo};
    }
    if (!(a.feasibility_tol > 0.0)) throw UsageError("--feasibility-tol must be positive");
    try {
        space.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }

    const SearchResult r = optimize(space, a.feasibility_tol, a.seed, a.options);

    ordered record = scheme_to_json(r.best);
    record["infeasible"] = !r.feasible;
    record["objective"] = r.objective;
    record["constraint_residual"] = r.constraint_residual;
    if (!a.output.empty()) {
        std::ofstream f(a.output);
        if (!f) throw UsageError("cannot write " + a.output);
        f << record.dump(2) << "\n";
    }

    const double tol = a.feasibility_tol;
    ordered inputs{{"psi_d", a.psi_d},
                   {"alpha_range_deg", interval_json(space.alpha_range)},
                   {"alpha_prime_range_deg", interval_json(space.alpha_prime_range)},
                   {"lock_alpha", a.lock_alpha},
                   {"theta_prime_range_deg", interval_json(space.theta_prime_range)},
                   {"phi_prime_range_deg", interval_json(space.phi_prime_range)},
                   {"feasibility_tol", std::isinf(tol) ? ordered("inf") : ordered(tol)},
                   {"seed", a.seed},
                   {"alpha_step_deg", a.options.alpha_step_deg},
                   {"detection_step_deg", a.options.detection_step_deg},
                   {"threads", a.options.threads}};
    if (!a.output.empty()) inputs["output"] = a.output;

    if (a.format == "json") {
        ordered trace = ordered::array();
        for (const TraceEntry& t : r.trace)
            trace.push_back({{"iteration", t.iteration},
                             {"merit", t.merit},
                             {"efficiency", t.efficiency},
                             {"residual", t.residual}});
        emit_json(out, envelope("optimize", inputs,
                                {{"scheme", record},
                                 {"feasible", r.feasible},
                                 {"iterations", r.iterations},
                                 {"evaluations", r.evaluations},
                                 {"trace", trace}}));
    } else {
        char line[256];
        std::snprintf(line, sizeof line,
                      "%s: efficiency %.6f  residual %.3e  iterations %d  alpha %.4f deg  "
                      "alpha' %.4f deg  theta' %.4f deg  phi' %.4f deg  heralds %s\n",
                      r.feasible ? "feasible" : "infeasible", r.objective, r.constraint_residual,
                      r.iterations, rad_to_deg(r.best.geometry.alpha),
                      rad_to_deg(r.best.geometry.alpha_prime),
                      rad_to_deg(r.best.detection.theta_prime),
                      rad_to_deg(r.best.detection.phi_prime), herald_label(r.best.heralds).c_str());
        out << line;
    }
    if (!r.feasible) {
        err << "no point satisfies the feasibility tolerance; reporting the least infeasible one\n";
        return kInfeasible;
    }
    return kOk;
}

// ---- sweep ----

struct SweepArgs {
    std::string selector;
    std::string param;
    std::string range;
    int steps = 11;
    std::string output;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
    const Selected sel = resolve(a.selector);
    SweepParameter p;
    try {
        p = parse_sweep_parameter(a.param);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    if (a.steps < 2) throw UsageError("--steps must be at least 2");
    const Interval range = parse_range_deg(a.range, is_angle(p));
    const SweepResult r = sweep(sel.scheme, p, range, a.steps);

    std::ostringstream csv;
    csv << "param_value,eff_min,eff_max,gram_deviation,worst_fidelity\n";
    for (const SweepSample& s : r.samples) {
        char line[200];
        std::snprintf(line, sizeof line, "%.10g,%.10f,%.10f,%.6e,%.10f\n",
                      is_angle(p) ? rad_to_deg(s.value) : s.value, s.efficiency_min,
                      s.efficiency_max, s.gram_deviation, s.worst_fidelity);
        csv << line;
    }
    if (a.output.empty()) {
        out << csv.str();
    } else {
        std::ofstream f(a.output);
        if (!f) throw UsageError("cannot write " + a.output);
        f << csv.str();
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Heralded photon-to-ion polarization storage schemes"};
    app.name("ionstore");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    std::string catalog_format;
    CLI::App* catalog_cmd = app.add_subcommand("catalog", "List the built-in schemes");
    add_format(catalog_cmd, catalog_format, "table");

    VerifyArgs va;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Check a scheme against its declarations");
    verify_cmd->add_option("scheme", va.selector, "Catalog name or scheme file")->required();
    verify_cmd->add_option("--tol-eff", va.tol_eff, "Efficiency tolerance")->capture_default_str();
    verify_cmd->add_option("--tol-fid", va.tol_fid, "Fidelity tolerance")->capture_default_str();
    verify_cmd->add_option("--validity-tol", va.validity_tol, "Gram deviation tolerance")
        ->capture_default_str();
    add_format(verify_cmd, va.format, "table");

    MapArgs ma;
    CLI::App* map_cmd = app.add_subcommand("map", "Final S1/2 state for one input polarization");
    map_cmd->add_option("scheme", ma.selector, "Catalog name or scheme file")->required();
    map_cmd->add_option("--input", ma.input, "H, V, R, L or theta,phi in degrees")
        ->capture_default_str();
    map_cmd->add_option("--b-field", ma.b_field, "Magnetic field in tesla");
    map_cmd->add_option("--time", ma.time, "Herald detection time in seconds");
    add_format(map_cmd, ma.format, "table");

    OptimizeArgs oa;
    CLI::App* opt_cmd = app.add_subcommand("optimize", "Search for a valid scheme");
    opt_cmd->add_option("--psi-d", oa.psi_d, "single | pair | m=<m> | pair=<m>")
        ->capture_default_str();
    opt_cmd->add_option("--alpha", oa.alpha, "Fixed alpha in degrees");
    opt_cmd->add_option("--alpha-range", oa.alpha_range, "alpha range lo:hi in degrees");
    opt_cmd->add_option("--alpha-prime", oa.alpha_prime, "Fixed alpha' in degrees");
    opt_cmd->add_option("--alpha-prime-range", oa.alpha_prime_range, "alpha' range lo:hi in degrees");
    opt_cmd->add_flag("--lock-alpha", oa.lock_alpha, "Enforce alpha = alpha'");
    opt_cmd->add_option("--theta-prime", oa.theta_prime, "Fixed theta' in degrees");
    opt_cmd->add_option("--theta-prime-range", oa.theta_prime_range, "theta' range lo:hi in degrees");
    opt_cmd->add_option("--phi-prime", oa.phi_prime, "Fixed phi' in degrees");
    opt_cmd->add_option("--phi-prime-range", oa.phi_prime_range, "phi' range lo:hi in degrees");
    opt_cmd->add_option("--feasibility-tol", oa.feasibility_tol, "Gram deviation tolerance (inf allowed)")
        ->capture_default_str();
    opt_cmd->add_option("--seed", oa.seed, "Random seed")->capture_default_str();
    opt_cmd->add_option("--output", oa.output, "Write the best scheme record here");
    opt_cmd->add_option("--threads", oa.options.threads, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    opt_cmd->add_option("--alpha-step", oa.options.alpha_step_deg, "Grid step for alpha, degrees")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    opt_cmd->add_option("--detection-step", oa.options.detection_step_deg,
                        "Grid step for theta' and phi', degrees")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_format(opt_cmd, oa.format, "table");

    SweepArgs sa;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "One-parameter sensitivity sweep as CSV");
    sweep_cmd->add_option("scheme", sa.selector, "Catalog name or scheme file")->required();
    sweep_cmd->add_option("--param", sa.param,
                          "alpha, alpha_prime, theta_prime, phi_prime, input_impurity, psi_d_impurity")
        ->required();
    sweep_cmd->add_option("--range", sa.range, "lo:hi (degrees for angles)")->required();
    sweep_cmd->add_option("--steps", sa.steps, "Number of samples")->capture_default_str();
    sweep_cmd->add_option("--output", sa.output, "CSV file (default: standard output)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*catalog_cmd) return cmd_catalog(catalog_format, out);
        if (*verify_cmd) return cmd_verify(va, out);
        if (*map_cmd) return cmd_map(ma, out);
        if (*opt_cmd) return cmd_optimize(oa, out, err);
        if (*sweep_cmd) return cmd_sweep(sa, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace ionstore::cli
