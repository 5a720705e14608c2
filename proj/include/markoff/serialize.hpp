#pragma once

#include <string>

#include "json.hpp"

#include "markoff/cycles.hpp"
#include "markoff/experiments.hpp"
#include "markoff/groupid.hpp"
#include "markoff/words.hpp"

namespace markoff {

using Json = nlohmann::ordered_json;

inline Json to_json(const CycleSummary& cs, std::uint64_t p, i64 kappa, const std::string& word) {
  Json hist = Json::array();
  for (const auto& [len, count] : cs.histogram) hist.push_back({len, count});
  return Json{{"p", p},         {"kappa", kappa},          {"word", word},
              {"n", cs.n},      {"longest", cs.longest},   {"fixed", cs.fixed_count},
              {"sign", cs.sign}, {"cycle_histogram", hist}};
}

inline Json to_json(const SweepRecord& r) {
  return Json{{"word", r.word},         {"p", r.p},
              {"n", r.n},               {"longest", r.longest},
              {"ratio_p", r.ratio_p},   {"ratio_p2", r.ratio_p2},
              {"ambiguous", r.ambiguous}, {"elapsed_ms", r.elapsed_ms}};
}

inline Json to_json(const GroupReport& r) {
  return Json{{"p", r.p},
              {"n", r.n},
              {"transitive", r.transitive},
              {"primitive", r.primitive},
              {"all_generators_even", r.all_generators_even},
              {"certified", std::string(certification_name(r.certified))},
              {"classification", std::string(group_class_name(r.classification))},
              {"jordan_word", r.jordan_word},
              {"jordan_prime", r.jordan_prime},
              {"words_examined", r.words_examined}};
}

inline std::string big_to_string(const BigInt& v) { return v.str(); }

inline Json to_json(const MatrixClass& mc) {
  const Mat2Z& m = mc.matrix;
  Json rows = Json::array({Json::array({big_to_string(m.a), big_to_string(m.b)}),
                           Json::array({big_to_string(m.c), big_to_string(m.d)})});
  Json out{{"matrix", rows},
           {"trace", big_to_string(mc.trace)},
           {"det", big_to_string(mc.det)},
           {"hyperbolic", mc.hyperbolic}};
  if (mc.squared) out["squared"] = true;
  out["sr"] = mc.sr ? Json(mc.sr->to_string()) : Json(nullptr);
  out["uv_word"] = mc.uv ? Json(mc.uv->to_string()) : Json(nullptr);
  out["ambiguous"] = mc.ambiguous ? Json(*mc.ambiguous) : Json(nullptr);
  return out;
}

inline Json to_json(const Table1Result& r) {
  return Json{{"label", r.row.label},     {"longest", r.longest},    {"expected", r.row.expected},
              {"ambiguous", r.ambiguous}, {"expected_ambiguous", r.row.ambiguous}, {"match", r.matches()}};
}

inline Json to_json(const VerifyCheck& c) {
  return Json{{"check", c.name}, {"primes_tested", c.primes_tested}, {"passed", c.passed()}, {"failures", c.failures}};
}

}  // namespace markoff
