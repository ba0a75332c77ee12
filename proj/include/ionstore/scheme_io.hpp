#pragma once

// Scheme records as JSON. Angles are stored in degrees, amplitudes as
// [twice_m, re, im] triples:
//
//   {"name": "d", "psi_d": [[-3, 1.0, 0.0]], "alpha_deg": 47.06, "alpha_prime_deg": 47.06,
//    "theta_prime_deg": -55.74, "phi_prime_deg": 90.0, "heralds": "one",
//    "declared_efficiency": 0.1072,
//    "declared_mappings": [{"input": "H", "herald": 0, "expected": [[1, 0.56, 0], ...],
//                           "decimals": 2}]}

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ionstore/schemes.hpp"

namespace ionstore {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::ordered_json scheme_to_json(const Scheme& scheme);
nlohmann::ordered_json atomic_state_to_json(const AtomicState& state);

/// Throws ParseError naming the offending field.
Scheme scheme_from_json(const nlohmann::json& record);
/// Parses text; JSON syntax errors report line and column.
Scheme scheme_from_string(const std::string& text, const std::string& source = "<string>");
Scheme load_scheme_file(const std::filesystem::path& path);

/// H, V, R, L or "theta,phi" in degrees.
PolarizationState parse_polarization(const std::string& text);

}  // namespace ionstore
