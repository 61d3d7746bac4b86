#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "staffcast/dataset.hpp"
#include "staffcast/error.hpp"
#include "staffcast/evaluation.hpp"
#include "staffcast/heuristics.hpp"
#include "staffcast/lms.hpp"
#include "staffcast/ols.hpp"
#include "staffcast/selector.hpp"

// JSON shapes shared by the HTTP service and the CLI's --json output.
// Readers throw Error(InvalidRequest) naming the offending field.

namespace staffcast::json_io {

using nlohmann::json;

namespace detail {

inline const json& require(const json& obj, const char* key, std::string_view where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::InvalidRequest, std::string(where) + "." + key + " is required");
  }
  return obj.at(key);
}

inline double number(const json& v, std::string_view where) {
  if (!v.is_number()) throw Error(ErrorCode::InvalidRequest, std::string(where) + " must be a number");
  return v.get<double>();
}

inline std::string text(const json& v, std::string_view where) {
  if (!v.is_string()) throw Error(ErrorCode::InvalidRequest, std::string(where) + " must be a string");
  return v.get<std::string>();
}

inline std::uint64_t unsigned_int(const json& v, std::string_view where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw Error(ErrorCode::InvalidRequest,
                std::string(where) + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

inline std::string optional_text(const json& obj, const char* key) {
  return obj.contains(key) && obj.at(key).is_string() ? obj.at(key).get<std::string>() : "";
}

}  // namespace detail

// --- series: {"x": [...], "y": [...], "x_label"?: str, "y_label"?: str}

inline json to_json(const PairedSeries& s) {
  json j = {{"x", s.xs()}, {"y", s.ys()}};
  if (s.labels()) {
    j["x_label"] = s.labels()->x;
    j["y_label"] = s.labels()->y;
  }
  return j;
}

inline PairedSeries series_from_json(const json& j, std::string_view where = "series") {
  const auto& xj = detail::require(j, "x", where);
  const auto& yj = detail::require(j, "y", where);
  if (!xj.is_array() || !yj.is_array()) {
    throw Error(ErrorCode::InvalidRequest, std::string(where) + ".x and .y must be arrays");
  }
  if (xj.size() != yj.size()) {
    throw Error(ErrorCode::LengthMismatch, std::string(where) + ": x has " +
                                               std::to_string(xj.size()) + " values, y has " +
                                               std::to_string(yj.size()));
  }
  std::vector<Point> pts;
  for (std::size_t i = 0; i < xj.size(); ++i) {
    const auto idx = std::string(where) + "[" + std::to_string(i) + "]";
    pts.push_back({detail::number(xj[i], idx + ".x"), detail::number(yj[i], idx + ".y")});
  }
  std::optional<SeriesLabels> labels;
  if (j.contains("x_label") || j.contains("y_label")) {
    labels = SeriesLabels{detail::optional_text(j, "x_label"), detail::optional_text(j, "y_label")};
  }
  return PairedSeries(std::move(pts), std::move(labels));
}

// --- model / diagnostics

inline std::optional<FitMethod> parse_fit_method(std::string_view s) {
  for (auto m : {FitMethod::Ols, FitMethod::LmsExact, FitMethod::LmsRandom}) {
    if (method_name(m) == s) return m;
  }
  return std::nullopt;
}

inline json to_json(const LinearModel& m) {
  return {{"intercept", m.intercept},
          {"slope", m.slope},
          {"method", std::string(method_name(m.method))},
          {"objective", m.objective},
          {"n_train", m.n_train}};
}

inline LinearModel model_from_json(const json& j) {
  LinearModel m;
  m.intercept = detail::number(detail::require(j, "intercept", "model"), "model.intercept");
  m.slope = detail::number(detail::require(j, "slope", "model"), "model.slope");
  const auto method = parse_fit_method(detail::text(detail::require(j, "method", "model"), "model.method"));
  if (!method) throw Error(ErrorCode::InvalidRequest, "model.method is unknown");
  m.method = *method;
  m.objective = detail::number(detail::require(j, "objective", "model"), "model.objective");
  m.n_train = detail::unsigned_int(detail::require(j, "n_train", "model"), "model.n_train");
  return m;
}

inline json to_json(const ResidualDiagnostics& d) {
  return {{"sse", d.sse},
          {"rmse", d.rmse},
          {"ssr", d.ssr},
          {"max_abs_dev", d.max_abs_dev},
          {"min_abs_dev", d.min_abs_dev},
          {"mean_abs_dev", d.mean_abs_dev}};
}

inline ResidualDiagnostics diagnostics_from_json(const json& j) {
  auto get = [&](const char* k) {
    return detail::number(detail::require(j, k, "diagnostics"), std::string("diagnostics.") + k);
  };
  return {get("sse"), get("rmse"), get("ssr"), get("max_abs_dev"), get("min_abs_dev"),
          get("mean_abs_dev")};
}

// --- LMS config: {"mode"?: "EXACT"|"RANDOM", "max_exact_n"?, "subsets"?, "seed"?}

inline json to_json(const LmsConfig& c) {
  return {{"mode", std::string(lms_mode_name(c.mode))},
          {"max_exact_n", c.max_exact_n},
          {"subsets", c.subsets},
          {"seed", c.seed}};
}

inline LmsConfig lms_config_from_json(const json& j) {
  LmsConfig c;
  if (j.is_null()) return c;
  if (!j.is_object()) throw Error(ErrorCode::InvalidRequest, "lms must be an object");
  if (j.contains("mode")) {
    const auto mode = detail::text(j["mode"], "lms.mode");
    if (mode == "EXACT") c.mode = LmsMode::Exact;
    else if (mode == "RANDOM") c.mode = LmsMode::Random;
    else throw Error(ErrorCode::InvalidRequest, "lms.mode must be EXACT or RANDOM");
  }
  if (j.contains("max_exact_n")) c.max_exact_n = detail::unsigned_int(j["max_exact_n"], "lms.max_exact_n");
  if (j.contains("subsets")) c.subsets = detail::unsigned_int(j["subsets"], "lms.subsets");
  if (j.contains("seed")) c.seed = detail::unsigned_int(j["seed"], "lms.seed");
  c.check();
  return c;
}

// --- heuristics

inline RatioHistory ratio_history_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidRequest, "history must be an array");
  RatioHistory h;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto where = "history[" + std::to_string(i) + "]";
    RatioRecord r;
    r.driver = detail::number(detail::require(j[i], "driver", where), where + ".driver");
    r.headcount = detail::number(detail::require(j[i], "headcount", where), where + ".headcount");
    r.period_label = detail::optional_text(j[i], "period_label");
    h.records.push_back(std::move(r));
  }
  return h;
}

inline json to_json(const RatioHistory& h) {
  json out = json::array();
  for (const auto& r : h.records) {
    out.push_back({{"driver", r.driver}, {"headcount", r.headcount}, {"period_label", r.period_label}});
  }
  return out;
}

inline json to_json(const ScenarioRecord& s) {
  json indicators = json::array();
  for (const auto& ind : s.indicators) {
    indicators.push_back({{"name", ind.name}, {"history", to_json(ind.history)}});
  }
  json events = json::array();
  for (const auto& ev : s.future_events) {
    events.push_back({{"description", ev.description},
                      {"affected_indicator", ev.affected_indicator},
                      {"multiplier", ev.multiplier}});
  }
  return {{"background", s.background},
          {"indicators", indicators},
          {"future_events", events},
          {"horizon", s.horizon},
          {"narrative", s.narrative}};
}

inline ScenarioRecord scenario_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidRequest, "scenario must be an object");
  ScenarioRecord s;
  s.background = detail::optional_text(j, "background");
  s.narrative = detail::optional_text(j, "narrative");
  s.horizon = detail::unsigned_int(detail::require(j, "horizon", "scenario"), "scenario.horizon");
  const auto& inds = detail::require(j, "indicators", "scenario");
  if (!inds.is_array()) throw Error(ErrorCode::InvalidRequest, "scenario.indicators must be an array");
  for (std::size_t i = 0; i < inds.size(); ++i) {
    const auto where = "scenario.indicators[" + std::to_string(i) + "]";
    Indicator ind;
    ind.name = detail::text(detail::require(inds[i], "name", where), where + ".name");
    ind.history = series_from_json(detail::require(inds[i], "history", where), where + ".history");
    s.indicators.push_back(std::move(ind));
  }
  if (j.contains("future_events")) {
    const auto& evs = j["future_events"];
    if (!evs.is_array()) throw Error(ErrorCode::InvalidRequest, "scenario.future_events must be an array");
    for (std::size_t i = 0; i < evs.size(); ++i) {
      const auto where = "scenario.future_events[" + std::to_string(i) + "]";
      FutureEvent ev;
      ev.description = detail::optional_text(evs[i], "description");
      ev.affected_indicator = detail::text(detail::require(evs[i], "affected_indicator", where),
                                           where + ".affected_indicator");
      ev.multiplier = detail::number(detail::require(evs[i], "multiplier", where), where + ".multiplier");
      s.future_events.push_back(std::move(ev));
    }
  }
  s.check();
  return s;
}

inline json to_json(const IndicatorForecast& f) {
  return {{"name", f.name},
          {"periods", f.periods},
          {"baseline", f.baseline},
          {"multiplier", f.multiplier},
          {"forecast", f.forecast}};
}

// --- catalog pieces

inline json to_json(const Approach& a) {
  return {{"approach_id", a.approach_id}, {"name", a.name},
          {"introduction", a.introduction}, {"strength", a.strength},
          {"limitation", a.limitation},   {"suitability", a.suitability},
          {"application", a.application}, {"calculator", std::string(calculator_name(a.calculator))}};
}

inline json to_json(const CategoryId& c) {
  return {{"index", c.index}, {"label", c.label}, {"sentinel", c.sentinel()}};
}

// --- comparison report

inline json to_json(const ComparisonReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json jr = {{"method_name", row.method_name},
               {"model", to_json(row.model)},
               {"build_time_s", row.build_time_s},
               {"relative_absolute_error", row.relative_absolute_error},
               {"correlation_coefficient", row.correlation_coefficient},
               {"objective", row.objective}};
    if (row.reference_rae) jr["reference_rae"] = *row.reference_rae;
    rows.push_back(std::move(jr));
  }
  return {{"rows", rows},
          {"evaluation", r.evaluation},
          {"correlation_basis", r.correlation_basis},
          {"notes", r.notes}};
}

}  // namespace staffcast::json_io
