#include "recurshift/serialize.hpp"

namespace recurshift {

namespace {

Json optional_index(const std::optional<Index>& v) { return v ? index_json(*v) : Json(nullptr); }

Json index_list(const std::vector<Index>& values) {
  Json out = Json::array();
  for (Index v : values) out.push_back(index_json(v));
  return out;
}

}  // namespace

Json to_json(const FactorSet& set) {
  Json j = Json::object();
  j["length"] = set.length;
  j["horizon_n"] = set.horizon_n;
  j["stabilized"] = set.stabilized;
  j["count"] = set.size();
  Json words = Json::array();
  for (const auto& w : set.words) words.push_back(w.to_string());
  j["words"] = std::move(words);
  return j;
}

Json to_json(const OccurrenceReport& report) {
  Json j = Json::object();
  j["word"] = report.word.to_string();
  j["range"] = Json::array({index_json(report.range.first), index_json(report.range.last)});
  j["positions"] = index_list(report.positions);
  j["max_gap"] = report.max_gap ? index_json(*report.max_gap) : Json("unbounded-within-range");
  j["leading_gap"] = optional_index(report.leading_gap);
  j["trailing_gap"] = optional_index(report.trailing_gap);
  return j;
}

Json to_json(const RecurrenceReport& report) {
  Json j = Json::object();
  j["point"] = report.point.to_string();
  j["window_radius"] = report.window_radius;
  j["positive_returns"] = index_list(report.positive_returns);
  j["negative_returns"] = index_list(report.negative_returns);
  j["horizon"] = index_json(report.horizon);
  j["verdict"] = to_string(report.verdict);
  j["structural_note"] = report.structural_note ? Json(*report.structural_note) : Json(nullptr);
  Json radii = Json::array();
  for (const auto& e : report.radii) {
    Json r = Json::object();
    r["N"] = e.radius;
    r["first_positive"] = optional_index(e.first_positive);
    r["first_negative"] = optional_index(e.first_negative);
    r["positive_excluded"] = e.positive_excluded;
    r["negative_excluded"] = e.negative_excluded;
    radii.push_back(std::move(r));
  }
  j["radii"] = std::move(radii);
  return j;
}

Json to_json(const MetricValue& value) {
  Json j = Json::object();
  j["value"] = value.value.to_string();
  j["certified"] = value.certified;
  return j;
}

Json to_json(const StableMembership& m) {
  Json j = Json::object();
  j["member"] = m.member;
  j["certified"] = m.certified;
  j["by_definition"] = m.by_definition;
  j["by_cutoff"] = m.by_cutoff;
  j["cutoff"] = index_json(m.cutoff);
  j["decomposition_shift"] = optional_index(m.decomposition_shift);
  j["decomposition_ok"] = m.decomposition_ok;
  return j;
}

}  // namespace recurshift
