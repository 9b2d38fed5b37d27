#include "lsm/json_io.hpp"

#include <algorithm>

#include "lsm/errors.hpp"

namespace lsm {

namespace {

json offset_or_null(const std::optional<std::size_t>& offset) {
  return offset ? json(*offset) : json(nullptr);
}

}  // namespace

json to_json(const ParikhVector& v) { return json::array({v.l, v.s, v.m}); }

json to_json(const WindowSpectrum& spec) {
  json vectors = json::array();
  std::vector<ParikhVector> sorted = spec.vectors;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& v : sorted) {
    vectors.push_back(to_json(v));
  }
  return json{{"p", spec.p},
              {"n", spec.n},
              {"stabilized", spec.stabilized},
              {"prefix_len", spec.scanned_prefix_len},
              {"vectors", std::move(vectors)}};
}

WindowSpectrum spectrum_from_json(const json& doc) {
  try {
    WindowSpectrum spec;
    spec.p = doc.at("p").get<int>();
    spec.n = doc.at("n").get<std::size_t>();
    spec.stabilized = doc.at("stabilized").get<bool>();
    spec.scanned_prefix_len = doc.at("prefix_len").get<std::size_t>();
    for (const auto& v : doc.at("vectors")) {
      if (v.size() != 3) {
        throw ParseError("a Parikh vector has three components");
      }
      spec.vectors.push_back({v[0].get<std::int64_t>(),
                              v[1].get<std::int64_t>(),
                              v[2].get<std::int64_t>()});
    }
    std::sort(spec.vectors.begin(), spec.vectors.end());
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed spectrum document: ") + e.what());
  }
}

json witness_report(int p, const WitnessPair& pair, WitnessStatus status) {
  return json{{"p", p},
              {"letter", std::string(1, to_char(pair.letter))},
              {"length", pair.length},
              {"difference", pair.count_difference},
              {"v_offset", offset_or_null(pair.v_offset)},
              {"w_offset", offset_or_null(pair.w_offset)},
              {"status", to_string(status)},
              {"v", pair.v.to_string()},
              {"w", pair.w.to_string()}};
}

json witness_report(const AC7Family& family, WitnessStatus status) {
  json vectors = json::array();
  json offsets = json::array();
  json words = json::array();
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    vectors.push_back(to_json(family.parikh_vectors[i]));
    offsets.push_back(offset_or_null(family.offsets[i]));
    words.push_back(family.members[i].to_string());
  }
  return json{{"p", family.p},
              {"N", family.N},
              {"length", family.length},
              {"vectors", std::move(vectors)},
              {"offsets", std::move(offsets)},
              {"status", to_string(status)},
              {"words", std::move(words)}};
}

}  // namespace lsm
