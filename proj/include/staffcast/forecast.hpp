#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "staffcast/error.hpp"
#include "staffcast/heuristics.hpp"
#include "staffcast/json_io.hpp"
#include "staffcast/lms.hpp"
#include "staffcast/ols.hpp"

namespace staffcast {

enum class ForecastMethod { DirectManagerial, HistoricalRatio, Scenario, LinearRegression, LmsRegression };

constexpr std::string_view forecast_method_name(ForecastMethod m) noexcept {
  switch (m) {
    case ForecastMethod::DirectManagerial: return "DIRECT_MANAGERIAL";
    case ForecastMethod::HistoricalRatio: return "HISTORICAL_RATIO";
    case ForecastMethod::Scenario: return "SCENARIO";
    case ForecastMethod::LinearRegression: return "LINEAR_REGRESSION";
    case ForecastMethod::LmsRegression: return "LMS_REGRESSION";
  }
  return "LINEAR_REGRESSION";
}

inline std::optional<ForecastMethod> parse_forecast_method(std::string_view s) {
  for (auto m : {ForecastMethod::DirectManagerial, ForecastMethod::HistoricalRatio,
                 ForecastMethod::Scenario, ForecastMethod::LinearRegression,
                 ForecastMethod::LmsRegression}) {
    if (forecast_method_name(m) == s) return m;
  }
  return std::nullopt;
}

/// Staffing headcount: the raw value rounded up. A relative slack of 1e-9
/// keeps representation noise (20.000000000000004) from adding a worker.
inline double rounded_headcount(double raw) {
  const double slack = 1e-9 * std::max(1.0, std::abs(raw));
  return std::ceil(raw - slack);
}

/// A method plus its method-specific payload (the request object itself).
struct ForecastRequest {
  ForecastMethod method = ForecastMethod::LinearRegression;
  nlohmann::json payload = nlohmann::json::object();
  std::optional<double> query_x;
};

struct ForecastResponse {
  ForecastMethod method = ForecastMethod::LinearRegression;
  std::optional<LinearModel> model;
  std::optional<ResidualDiagnostics> diagnostics;
  std::optional<double> forecast_value;
  nlohmann::json detail = nlohmann::json::object();
  std::vector<std::string> warnings;

  friend bool operator==(const ForecastResponse&, const ForecastResponse&) = default;
};

inline ForecastRequest parse_forecast_request(const nlohmann::json& body) {
  if (!body.is_object()) throw Error(ErrorCode::InvalidRequest, "request body must be a JSON object");
  ForecastRequest req;
  const auto method = json_io::detail::text(json_io::detail::require(body, "method", "request"), "method");
  const auto parsed = parse_forecast_method(method);
  if (!parsed) throw Error(ErrorCode::InvalidRequest, "unknown method '" + method + "'");
  req.method = *parsed;
  req.payload = body;
  if (body.contains("query_x") && !body["query_x"].is_null()) {
    req.query_x = json_io::detail::number(body["query_x"], "query_x");
  }
  return req;
}

namespace detail {

inline void add_headcount(ForecastResponse& r, double raw) {
  r.forecast_value = raw;
  r.detail["rounded_headcount"] = rounded_headcount(raw);
  if (raw < 0.0) r.warnings.push_back("forecast is negative; the driver is outside the data's useful range");
}

inline ForecastResponse run_regression(const ForecastRequest& req) {
  using namespace json_io;
  const auto series = series_from_json(json_io::detail::require(req.payload, "series", "request"));
  ForecastResponse r;
  r.method = req.method;
  if (req.method == ForecastMethod::LinearRegression) {
    r.model = fit_ols(series);
  } else {
    const auto cfg = lms_config_from_json(req.payload.value("lms", nlohmann::json()));
    r.model = fit_lms(series, cfg);
  }
  r.diagnostics = diagnostics(*r.model, series);
  r.detail["median_squared_residual"] = median_squared_residual(*r.model, series);
  try {
    r.detail["correlation"] = correlation(series);
  } catch (const Error&) {
    r.warnings.push_back("correlation undefined: y has zero variance");
  }
  const auto report = validate(series);
  if (report.duplicate_x_count > 0) {
    r.warnings.push_back(std::to_string(report.duplicate_x_count) + " duplicate x value(s)");
  }
  if (req.query_x) {
    r.detail["query_x"] = *req.query_x;
    add_headcount(r, predict(*r.model, *req.query_x));
  }
  return r;
}

}  // namespace detail

inline ForecastResponse run_forecast(const ForecastRequest& req) {
  using json_io::detail::number;
  using json_io::detail::require;
  const auto& p = req.payload;
  ForecastResponse r;
  r.method = req.method;
  switch (req.method) {
    case ForecastMethod::DirectManagerial: {
      if (p.contains("total_figure") || p.contains("average_figure")) {
        const double total = number(require(p, "total_figure", "request"), "total_figure");
        const double avg = number(require(p, "average_figure", "request"), "average_figure");
        r.detail["mode"] = "total_over_average";
        detail::add_headcount(r, direct_managerial_forecast(total, avg));
      } else if (p.contains("current_headcount") || p.contains("reduction_pct")) {
        const double current = number(require(p, "current_headcount", "request"), "current_headcount");
        const double pct = number(require(p, "reduction_pct", "request"), "reduction_pct");
        r.detail["mode"] = "percentage_reduction";
        detail::add_headcount(r, percentage_reduction(current, pct));
      } else {
        throw Error(ErrorCode::InvalidRequest,
                    "DIRECT_MANAGERIAL needs total_figure/average_figure or "
                    "current_headcount/reduction_pct");
      }
      return r;
    }
    case ForecastMethod::HistoricalRatio: {
      const auto history = json_io::ratio_history_from_json(require(p, "history", "request"));
      const double projected = number(require(p, "projected_driver", "request"), "projected_driver");
      const double value = historical_ratio_forecast(history, projected);
      r.detail["mean_ratio"] = value / projected;
      detail::add_headcount(r, value);
      return r;
    }
    case ForecastMethod::Scenario: {
      const auto scenario = json_io::scenario_from_json(require(p, "scenario", "request"));
      nlohmann::json out = nlohmann::json::array();
      for (const auto& f : apply_scenario(scenario)) out.push_back(json_io::to_json(f));
      r.detail["indicators"] = std::move(out);
      r.detail["background"] = scenario.background;
      r.detail["narrative"] = scenario.narrative;
      return r;
    }
    case ForecastMethod::LinearRegression:
    case ForecastMethod::LmsRegression:
      return detail::run_regression(req);
  }
  throw Error(ErrorCode::Internal, "unhandled method");
}

inline nlohmann::json to_json(const ForecastResponse& r) {
  nlohmann::json j = {{"method", std::string(forecast_method_name(r.method))}};
  if (r.model) j["model"] = json_io::to_json(*r.model);
  if (r.diagnostics) j["diagnostics"] = json_io::to_json(*r.diagnostics);
  if (r.forecast_value) j["forecast_value"] = *r.forecast_value;
  j["detail"] = r.detail;
  j["warnings"] = r.warnings;
  return j;
}

inline ForecastResponse response_from_json(const nlohmann::json& j) {
  ForecastResponse r;
  const auto m = parse_forecast_method(json_io::detail::text(json_io::detail::require(j, "method", "response"), "method"));
  if (!m) throw Error(ErrorCode::InvalidRequest, "unknown method");
  r.method = *m;
  if (j.contains("model")) r.model = json_io::model_from_json(j["model"]);
  if (j.contains("diagnostics")) r.diagnostics = json_io::diagnostics_from_json(j["diagnostics"]);
  if (j.contains("forecast_value")) r.forecast_value = json_io::detail::number(j["forecast_value"], "forecast_value");
  if (j.contains("detail")) r.detail = j["detail"];
  if (j.contains("warnings")) r.warnings = j["warnings"].get<std::vector<std::string>>();
  return r;
}

}  // namespace staffcast
