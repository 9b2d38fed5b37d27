#pragma once

#include <optional>

#include "json.hpp"
#include "lsm/parikh.hpp"
#include "lsm/parikh_vector.hpp"
#include "lsm/witnesses.hpp"

namespace lsm {

using json = nlohmann::ordered_json;

json to_json(const ParikhVector& v);

// {"p", "n", "stabilized", "prefix_len", "vectors"}; vectors sorted
// lexicographically.
json to_json(const WindowSpectrum& spec);
WindowSpectrum spectrum_from_json(const json& doc);

// {"p", "letter", "length", "difference", "v_offset", "w_offset",
//  "status", "v", "w"}
json witness_report(int p, const WitnessPair& pair, WitnessStatus status);

// {"p", "N", "length", "vectors", "offsets", "status", "words"}
json witness_report(const AC7Family& family, WitnessStatus status);

}  // namespace lsm
