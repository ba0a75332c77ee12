#include "ionstore/scheme_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

namespace ionstore {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

constexpr std::array<const char*, 7> kRequired = {
    "name", "psi_d", "alpha_deg", "alpha_prime_deg", "theta_prime_deg", "phi_prime_deg",
    "heralds"};
constexpr std::array<const char*, 6> kOptional = {
    "manifold", "declared_efficiency", "declared_mappings", "infeasible", "objective",
    "constraint_residual"};

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ParseError("field '" + field + "': " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(path + key, "missing");
    return *it;
}

double number(const json& v, const std::string& field) {
    if (!v.is_number()) fail(field, "expected a number, got " + std::string(v.type_name()));
    return v.get<double>();
}

AtomicState parse_state(const json& v, const Manifold& mf, const std::string& field) {
    if (!v.is_array() || v.empty()) fail(field, "expected a non-empty array of [twice_m, re, im]");
    AtomicState s(mf);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string f = field + "[" + std::to_string(i) + "]";
        const json& t = v[i];
        if (!t.is_array() || t.size() != 3) fail(f, "expected [twice_m, re, im]");
        if (!t[0].is_number_integer()) fail(f + "[0]", "twice_m must be an integer");
        const HalfInt m = HalfInt::from_twice(t[0].get<int>());
        if (!mf.contains(m)) fail(f + "[0]", "m=" + m.str() + " is not a sublevel of " + mf.label);
        s.amp(m) += cplx(number(t[1], f + "[1]"), number(t[2], f + "[2]"));
    }
    return s;
}

DeclaredMapping parse_mapping(const json& v, const std::string& field) {
    if (!v.is_object()) fail(field, "expected an object");
    const json& in = require(v, "input", field + ".");
    DeclaredMapping d{"", {}, 0, AtomicState(manifolds::S1_2()), 0};
    if (in.is_string()) {
        d.input_label = in.get<std::string>();
        try {
            d.input = parse_polarization(d.input_label);
        } catch (const DomainError& e) {
            fail(field + ".input", e.what());
        }
    } else if (in.is_array() && in.size() == 2) {
        const double t = number(in[0], field + ".input[0]");
        const double p = number(in[1], field + ".input[1]");
        d.input = PolarizationState::from_angles(deg_to_rad(t), deg_to_rad(p));
        std::ostringstream label;
        label << t << "," << p;
        d.input_label = label.str();
    } else {
        fail(field + ".input", "expected H|V|R|L or [theta_deg, phi_deg]");
    }
    if (const auto it = v.find("herald"); it != v.end()) {
        if (!it->is_number_integer() || it->get<int>() < 0 || it->get<int>() > 1)
            fail(field + ".herald", "expected 0 or 1");
        d.herald = it->get<int>();
    }
    if (const auto it = v.find("decimals"); it != v.end()) {
        if (!it->is_number_integer() || it->get<int>() < 0)
            fail(field + ".decimals", "expected a non-negative integer");
        d.decimals = it->get<int>();
    }
    d.expected = parse_state(require(v, "expected", field + "."), manifolds::S1_2(),
                             field + ".expected");
    return d;
}

}  // namespace

ordered atomic_state_to_json(const AtomicState& state) {
    ordered arr = ordered::array();
    const Manifold& mf = state.manifold();
    for (int i = 0; i < mf.sublevel_count(); ++i) {
        const cplx c = state.amps()[i];
        if (c == cplx(0.0)) continue;
        arr.push_back(ordered::array({mf.sublevel_at(i).twice(), c.real(), c.imag()}));
    }
    return arr;
}

ordered scheme_to_json(const Scheme& scheme) {
    ordered j;
    j["name"] = scheme.name;
    if (scheme.psi_d.manifold().label != manifolds::D5_2().label)
        j["manifold"] = scheme.psi_d.manifold().label;
    j["psi_d"] = atomic_state_to_json(scheme.psi_d);
    j["alpha_deg"] = rad_to_deg(scheme.geometry.alpha);
    j["alpha_prime_deg"] = rad_to_deg(scheme.geometry.alpha_prime);
    j["theta_prime_deg"] = rad_to_deg(scheme.detection.theta_prime);
    j["phi_prime_deg"] = rad_to_deg(scheme.detection.phi_prime);
    j["heralds"] = scheme.heralds == HeraldMode::Both ? "both" : "one";
    if (scheme.declared_efficiency) j["declared_efficiency"] = *scheme.declared_efficiency;
    if (scheme.declared_mappings) {
        ordered maps = ordered::array();
        for (const DeclaredMapping& d : *scheme.declared_mappings) {
            ordered m;
            m["input"] = d.input_label;
            m["herald"] = d.herald;
            m["expected"] = atomic_state_to_json(d.expected);
            if (d.decimals > 0) m["decimals"] = d.decimals;
            maps.push_back(std::move(m));
        }
        j["declared_mappings"] = std::move(maps);
    }
    return j;
}

Scheme scheme_from_json(const json& record) {
    if (!record.is_object()) throw ParseError("scheme record must be a JSON object");
    for (const auto& [key, value] : record.items()) {
        const auto known = [&](const auto& list) {
            return std::any_of(list.begin(), list.end(),
                               [&](const char* k) { return key == k; });
        };
        if (!known(kRequired) && !known(kOptional)) fail(key, "unknown field");
    }

    Scheme s;
    const json& name = require(record, "name", "");
    if (!name.is_string()) fail("name", "expected a string");
    s.name = name.get<std::string>();

    const Manifold* mf = &manifolds::D5_2();
    if (const auto it = record.find("manifold"); it != record.end()) {
        if (!it->is_string()) fail("manifold", "expected a string");
        mf = &manifolds::by_label(it->get<std::string>());
    }
    s.psi_d = parse_state(require(record, "psi_d", ""), *mf, "psi_d");
    if (s.psi_d.is_zero()) fail("psi_d", "state has zero norm");
    const double norm = s.psi_d.norm_sq();
    if (std::abs(norm - 1.0) > 1e-9) s.psi_d = s.psi_d.normalized();

    s.geometry.alpha = deg_to_rad(number(require(record, "alpha_deg", ""), "alpha_deg"));
    s.geometry.alpha_prime =
        deg_to_rad(number(require(record, "alpha_prime_deg", ""), "alpha_prime_deg"));
    try {
        s.geometry.validate();
    } catch (const DomainError& e) {
        fail("alpha_deg/alpha_prime_deg", e.what());
    }
    s.detection.theta_prime =
        deg_to_rad(number(require(record, "theta_prime_deg", ""), "theta_prime_deg"));
    s.detection.phi_prime =
        deg_to_rad(number(require(record, "phi_prime_deg", ""), "phi_prime_deg"));

    const json& heralds = require(record, "heralds", "");
    if (heralds == "one")
        s.heralds = HeraldMode::One;
    else if (heralds == "both")
        s.heralds = HeraldMode::Both;
    else
        fail("heralds", "expected \"one\" or \"both\"");

    if (const auto it = record.find("declared_efficiency"); it != record.end() && !it->is_null())
        s.declared_efficiency = number(*it, "declared_efficiency");
    if (const auto it = record.find("declared_mappings"); it != record.end() && !it->is_null()) {
        if (!it->is_array()) fail("declared_mappings", "expected an array");
        std::vector<DeclaredMapping> maps;
        for (std::size_t i = 0; i < it->size(); ++i)
            maps.push_back(parse_mapping((*it)[i], "declared_mappings[" + std::to_string(i) + "]"));
        s.declared_mappings = std::move(maps);
    }
    return s;
}

Scheme scheme_from_string(const std::string& text, const std::string& source) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(source + ": " + e.what());
    }
    try {
        return scheme_from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(source + ": " + e.what());
    }
}

Scheme load_scheme_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return scheme_from_string(buf.str(), path.string());
}

PolarizationState parse_polarization(const std::string& text) {
    if (text == "H" || text == "h") return PolarizationState::H();
    if (text == "V" || text == "v") return PolarizationState::V();
    if (text == "R" || text == "r") return PolarizationState::R();
    if (text == "L" || text == "l") return PolarizationState::L();
    const auto sep = text.find_first_of(",:");
    if (sep != std::string::npos) {
        try {
            std::size_t used_t = 0, used_p = 0;
            const std::string ts = text.substr(0, sep), ps = text.substr(sep + 1);
            const double t = std::stod(ts, &used_t);
            const double p = std::stod(ps, &used_p);
            if (used_t == ts.size() && used_p == ps.size())
                return PolarizationState::from_angles(deg_to_rad(t), deg_to_rad(p));
        } catch (const std::logic_error&) {
        }
    }
    throw DomainError("invalid polarization '" + text + "' (expected H, V, R, L or theta,phi)");
}

}  // namespace ionstore
