#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "staffcast/dataset.hpp"
#include "staffcast/error.hpp"
#include "staffcast/ols.hpp"

namespace staffcast {

// Headcount from a fixed total (budget, output, ...) divided by the average
// per worker.
inline double direct_managerial_forecast(double total_figure, double average_figure) {
  if (!(average_figure > 0.0)) {
    throw Error(ErrorCode::ZeroDivisor, "average figure must be > 0");
  }
  if (!(total_figure >= 0.0) || !std::isfinite(total_figure)) {
    throw Error(ErrorCode::OutOfRange, "total figure must be a finite value >= 0");
  }
  return total_figure / average_figure;
}

inline double percentage_reduction(double current_headcount, double reduction_pct) {
  if (!(reduction_pct >= 0.0 && reduction_pct <= 100.0)) {
    throw Error(ErrorCode::OutOfRange, "reduction percentage must lie in [0, 100]");
  }
  if (!(current_headcount >= 0.0) || !std::isfinite(current_headcount)) {
    throw Error(ErrorCode::OutOfRange, "current headcount must be a finite value >= 0");
  }
  return current_headcount * (1.0 - reduction_pct / 100.0);
}

struct RatioRecord {
  double driver = 0.0;
  double headcount = 0.0;
  std::string period_label;

  friend bool operator==(const RatioRecord&, const RatioRecord&) = default;
};

struct RatioHistory {
  std::vector<RatioRecord> records;

  friend bool operator==(const RatioHistory&, const RatioHistory&) = default;
};

/// Mean of the per-period headcount/driver ratios, scaled to the projected driver.
inline double historical_ratio_forecast(const RatioHistory& history, double projected_driver) {
  if (history.records.empty()) throw Error(ErrorCode::EmptyHistory, "ratio history is empty");
  if (!(projected_driver > 0.0) || !std::isfinite(projected_driver)) {
    throw Error(ErrorCode::NonPositiveDriver, "projected driver must be > 0");
  }
  double ratio_sum = 0.0;
  for (std::size_t i = 0; i < history.records.size(); ++i) {
    const auto& r = history.records[i];
    if (!(r.driver > 0.0) || !std::isfinite(r.driver)) {
      throw Error(ErrorCode::NonPositiveDriver, "record " + std::to_string(i) + " has driver <= 0");
    }
    if (!(r.headcount >= 0.0) || !std::isfinite(r.headcount)) {
      throw Error(ErrorCode::OutOfRange, "record " + std::to_string(i) + " has headcount < 0");
    }
    ratio_sum += r.headcount / r.driver;
  }
  return ratio_sum / static_cast<double>(history.records.size()) * projected_driver;
}

// Scenario analysis. Background and narrative are carried for the record only;
// indicators are extrapolated with OLS over their period index and scaled by
// every future event that targets them.

struct Indicator {
  std::string name;
  PairedSeries history;  // x = period index

  friend bool operator==(const Indicator&, const Indicator&) = default;
};

struct FutureEvent {
  std::string description;
  std::string affected_indicator;
  double multiplier = 1.0;

  friend bool operator==(const FutureEvent&, const FutureEvent&) = default;
};

struct ScenarioRecord {
  std::string background;
  std::vector<Indicator> indicators;
  std::vector<FutureEvent> future_events;
  std::size_t horizon = 1;
  std::string narrative;

  void check() const {
    if (horizon < 1) throw Error(ErrorCode::OutOfRange, "horizon must be >= 1");
    for (const auto& ev : future_events) {
      if (!(ev.multiplier > 0.0) || !std::isfinite(ev.multiplier)) {
        throw Error(ErrorCode::OutOfRange,
                    "event '" + ev.description + "' must have a multiplier > 0");
      }
      bool known = false;
      for (const auto& ind : indicators) known = known || ind.name == ev.affected_indicator;
      if (!known) {
        throw Error(ErrorCode::InvalidRequest, "event '" + ev.description + "' targets unknown indicator '" +
                                             ev.affected_indicator + "'");
      }
    }
  }

  friend bool operator==(const ScenarioRecord&, const ScenarioRecord&) = default;
};

struct IndicatorForecast {
  std::string name;
  std::vector<double> periods;   // extrapolated period indices
  std::vector<double> baseline;  // plain OLS extrapolation
  double multiplier = 1.0;       // product of matching event multipliers
  std::vector<double> forecast;  // baseline * multiplier

  friend bool operator==(const IndicatorForecast&, const IndicatorForecast&) = default;
};

inline std::vector<IndicatorForecast> apply_scenario(const ScenarioRecord& scenario) {
  scenario.check();
  std::vector<IndicatorForecast> out;
  out.reserve(scenario.indicators.size());
  for (const auto& ind : scenario.indicators) {
    LinearModel model;
    try {
      model = fit_ols(ind.history);
    } catch (const Error& e) {
      throw Error(e.code(), "indicator '" + ind.name + "': " + e.detail());
    }

    IndicatorForecast f;
    f.name = ind.name;
    for (const auto& ev : scenario.future_events) {
      if (ev.affected_indicator == ind.name) f.multiplier *= ev.multiplier;
    }
    double last = ind.history[0].x;
    for (const auto& p : ind.history.points()) last = std::max(last, p.x);
    for (std::size_t k = 1; k <= scenario.horizon; ++k) {
      const double period = last + static_cast<double>(k);
      const double base = predict(model, period);
      f.periods.push_back(period);
      f.baseline.push_back(base);
      f.forecast.push_back(base * f.multiplier);
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace staffcast
