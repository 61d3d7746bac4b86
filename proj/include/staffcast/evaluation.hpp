#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "staffcast/dataset.hpp"
#include "staffcast/error.hpp"
#include "staffcast/lms.hpp"
#include "staffcast/ols.hpp"
#include "staffcast/random.hpp"

namespace staffcast {

/// 100 * sum|actual - predicted| / sum|actual - mean(actual)|.
inline double relative_absolute_error(std::span<const double> actual,
                                      std::span<const double> predicted) {
  if (actual.size() != predicted.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(actual.size()) + " actual vs " +
                                               std::to_string(predicted.size()) + " predicted");
  }
  if (actual.size() < 2) throw Error(ErrorCode::InsufficientData, "need at least 2 values");
  double mean = 0.0;
  for (double a : actual) mean += a;
  mean /= static_cast<double>(actual.size());

  double err = 0.0;
  double base = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    err += std::abs(actual[i] - predicted[i]);
    base += std::abs(actual[i] - mean);
  }
  if (base == 0.0) throw Error(ErrorCode::DegenerateActuals, "all actual values are equal");
  return 100.0 * err / base;
}

struct ComparisonRow {
  std::string method_name;
  LinearModel model;
  double build_time_s = 0.0;
  double relative_absolute_error = 0.0;  // percent
  double correlation_coefficient = 0.0;
  double objective = 0.0;
  // RAE of this model's predictions against a reference (e.g. uncontaminated)
  // series; set by add_reference_rae.
  std::optional<double> reference_rae;

  friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

/// Resubstitution comparison of OLS and LMS; rows are always [OLS, LMS].
/// The correlation column is predicted-vs-actual; it is reported as 0 when a
/// method's predictions are constant (`notes` says so).
struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  std::string evaluation = "resubstitution";
  std::string correlation_basis = "predicted_vs_actual";
  std::vector<std::string> notes;

  friend bool operator==(const ComparisonReport&, const ComparisonReport&) = default;
};

namespace detail {

inline std::vector<double> predictions(const LinearModel& model, const PairedSeries& series) {
  std::vector<double> out;
  out.reserve(series.size());
  for (const auto& p : series.points()) out.push_back(predict(model, p.x));
  return out;
}

template <class Fit>
ComparisonRow timed_row(std::string name, const PairedSeries& series, Fit&& fit,
                        std::vector<std::string>& notes) {
  const auto t0 = std::chrono::steady_clock::now();
  LinearModel model = fit();
  const auto t1 = std::chrono::steady_clock::now();

  ComparisonRow row;
  row.method_name = std::move(name);
  row.model = model;
  row.build_time_s = std::chrono::duration<double>(t1 - t0).count();
  row.objective = model.objective;

  const auto predicted = predictions(model, series);
  const auto actual = series.ys();
  row.relative_absolute_error = relative_absolute_error(actual, predicted);
  try {
    row.correlation_coefficient = correlation(PairedSeries::from_columns(predicted, actual));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateX) throw;
    row.correlation_coefficient = 0.0;
    notes.push_back(row.method_name + ": constant predictions, correlation reported as 0");
  }
  return row;
}

}  // namespace detail

inline ComparisonReport compare_models(const PairedSeries& series, const LmsConfig& lms_config = {}) {
  ComparisonReport report;
  report.rows.push_back(detail::timed_row(
      "Linear Regression", series, [&] { return fit_ols(series); }, report.notes));
  report.rows.push_back(detail::timed_row(
      "Least Median Square Regression", series, [&] { return fit_lms(series, lms_config); },
      report.notes));
  return report;
}

/// Scores every row's model against `reference` (same x values, clean y).
inline void add_reference_rae(ComparisonReport& report, const PairedSeries& reference) {
  const auto actual = reference.ys();
  for (auto& row : report.rows) {
    row.reference_rae = relative_absolute_error(actual, detail::predictions(row.model, reference));
  }
}

/// Copy of `series` with floor(fraction * n) seeded, distinct points having y
/// multiplied by `magnitude`.
inline PairedSeries inject_outliers(const PairedSeries& series, double fraction, double magnitude,
                                    std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 0.5)) {
    throw Error(ErrorCode::OutOfRange, "outlier fraction must lie in [0, 0.5)");
  }
  if (!(magnitude > 1.0) || !std::isfinite(magnitude)) {
    throw Error(ErrorCode::OutOfRange, "outlier magnitude must be > 1");
  }
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(series.size())));
  std::vector<Point> pts(series.points().begin(), series.points().end());
  SeededRng rng(seed);
  for (auto i : rng.sample_without_replacement(pts.size(), count)) pts[i].y *= magnitude;
  return PairedSeries(std::move(pts), series.labels());
}

/// Plain-text comparison table with one column per method. Rows cover build
/// time, relative absolute error, correlation and the method's own objective.
inline std::string render_comparison_table(const ComparisonReport& report) {
  auto cell = [](const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return std::string(buf);
  };
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  constexpr std::size_t label_w = 32;
  constexpr std::size_t col_w = 34;

  std::string out = pad("Algorithm", label_w);
  for (const auto& r : report.rows) out += pad(r.method_name, col_w);
  out += "\n";
  std::string line = pad("Time taken to build the model", label_w);
  for (const auto& r : report.rows) line += pad(cell("%.6fs", r.build_time_s), col_w);
  out += line + "\n";
  line = pad("Relative Absolute Error", label_w);
  for (const auto& r : report.rows) line += pad(cell("%.2f%%", r.relative_absolute_error), col_w);
  out += line + "\n";
  line = pad("Correlation coefficient", label_w);
  for (const auto& r : report.rows) line += pad(cell("%.4f", r.correlation_coefficient), col_w);
  out += line + "\n";
  if (!report.rows.empty() && report.rows.front().reference_rae) {
    line = pad("RAE vs reference series", label_w);
    for (const auto& r : report.rows) line += pad(cell("%.2f%%", r.reference_rae.value_or(0.0)), col_w);
    out += line + "\n";
  }
  line = pad("Objective (SSE | median r^2)", label_w);
  for (const auto& r : report.rows) line += pad(cell("%.6f", r.objective), col_w);
  out += line + "\n";

  // Trim trailing pad spaces per line.
  std::string trimmed;
  std::size_t start = 0;
  while (start < out.size()) {
    const auto nl = out.find('\n', start);
    auto l = out.substr(start, nl - start);
    l.erase(l.find_last_not_of(' ') + 1);
    trimmed += l + "\n";
    start = nl + 1;
  }
  for (const auto& n : report.notes) trimmed += "note: " + n + "\n";
  return trimmed;
}

}  // namespace staffcast
