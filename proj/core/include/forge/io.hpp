#pragma once

#include <string>

#include "forge/hopf.hpp"
#include "forge/moduli.hpp"
#include "json.hpp"

namespace forge {

// "hopf-v1": {dim, basis_labels, mult, comult, counit, antipode,
// optional {R, v, lambda}}; scalars as exact strings, bit-exact round-trip.
nlohmann::ordered_json hopf_to_json(const HopfAlgebra& H);
HopfAlgebra hopf_from_json(const nlohmann::ordered_json& j);

void save_hopf(const HopfAlgebra& H, const std::string& path);
HopfAlgebra load_hopf(const std::string& path);

// {g, n, terms: [[indices...], scalar]}; scalars as exact strings
nlohmann::ordered_json lgn_to_json(const LgnElement& x);
LgnElement lgn_from_json(const nlohmann::ordered_json& j);

}  // namespace forge
