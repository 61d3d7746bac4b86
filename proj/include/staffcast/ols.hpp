#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>

#include "staffcast/dataset.hpp"
#include "staffcast/error.hpp"

namespace staffcast {

enum class FitMethod { Ols, LmsExact, LmsRandom };

constexpr std::string_view method_name(FitMethod m) noexcept {
  switch (m) {
    case FitMethod::Ols: return "OLS";
    case FitMethod::LmsExact: return "LMS_EXACT";
    case FitMethod::LmsRandom: return "LMS_RANDOM";
  }
  return "OLS";
}

/// Fitted line y = intercept + slope * x.
///
/// `objective` is what the producing method minimized: the sum of squared
/// residuals for OLS, the (lower) median squared residual for LMS.
struct LinearModel {
  double intercept = 0.0;
  double slope = 0.0;
  FitMethod method = FitMethod::Ols;
  double objective = 0.0;
  std::size_t n_train = 0;

  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

/// Residual summary of a line against a series. `rmse` divides by n.
struct ResidualDiagnostics {
  double sse = 0.0;           // sum (y - yhat)^2
  double rmse = 0.0;          // sqrt(sse / n)
  double ssr = 0.0;           // sum (yhat - ybar)^2
  double max_abs_dev = 0.0;
  double min_abs_dev = 0.0;
  double mean_abs_dev = 0.0;

  friend bool operator==(const ResidualDiagnostics&, const ResidualDiagnostics&) = default;
};

namespace detail {

struct Moments {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double sxx = 0.0;  // sum (x - mean_x)^2
  double syy = 0.0;
  double sxy = 0.0;
};

inline Moments centered_moments(std::span<const Point> pts) {
  Moments m;
  const double n = static_cast<double>(pts.size());
  for (const auto& p : pts) {
    m.mean_x += p.x;
    m.mean_y += p.y;
  }
  m.mean_x /= n;
  m.mean_y /= n;
  for (const auto& p : pts) {
    const double dx = p.x - m.mean_x;
    const double dy = p.y - m.mean_y;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

template <class Proj>
bool all_equal(std::span<const Point> pts, Proj proj) {
  return std::all_of(pts.begin(), pts.end(),
                     [&](const Point& p) { return proj(p) == proj(pts.front()); });
}

inline bool all_x_equal(std::span<const Point> pts) {
  return all_equal(pts, [](const Point& p) { return p.x; });
}

inline bool all_y_equal(std::span<const Point> pts) {
  return all_equal(pts, [](const Point& p) { return p.y; });
}

inline void require_fit_preconditions(const PairedSeries& series) {
  if (series.size() < 2) {
    throw Error(ErrorCode::InsufficientData,
                "need at least 2 points, got " + std::to_string(series.size()));
  }
  if (all_x_equal(series.points())) throw Error(ErrorCode::DegenerateX, "all x values are equal");
}

inline double sum_squared_residuals(double intercept, double slope, std::span<const Point> pts) {
  double sse = 0.0;
  for (const auto& p : pts) {
    const double r = p.y - (intercept + slope * p.x);
    sse += r * r;
  }
  return sse;
}

}  // namespace detail

inline double predict(const LinearModel& model, double x) noexcept {
  return model.intercept + model.slope * x;
}

/// Ordinary least squares with mean-centered two-pass accumulation.
inline LinearModel fit_ols(const PairedSeries& series) {
  detail::require_fit_preconditions(series);
  const auto pts = series.points();
  const auto m = detail::centered_moments(pts);

  LinearModel model;
  model.method = FitMethod::Ols;
  model.slope = m.sxy / m.sxx;
  model.intercept = m.mean_y - model.slope * m.mean_x;
  model.objective = detail::sum_squared_residuals(model.intercept, model.slope, pts);
  model.n_train = series.size();
  return model;
}

/// Residual diagnostics of any line against `series`.
inline ResidualDiagnostics diagnostics(const LinearModel& model, const PairedSeries& series) {
  if (series.empty()) throw Error(ErrorCode::EmptySeries, "diagnostics need at least 1 point");
  const auto pts = series.points();
  const double n = static_cast<double>(pts.size());

  double mean_y = 0.0;
  for (const auto& p : pts) mean_y += p.y;
  mean_y /= n;

  ResidualDiagnostics d;
  d.min_abs_dev = std::numeric_limits<double>::infinity();
  double abs_sum = 0.0;
  for (const auto& p : pts) {
    const double fitted = predict(model, p.x);
    const double r = p.y - fitted;
    d.sse += r * r;
    d.ssr += (fitted - mean_y) * (fitted - mean_y);
    const double a = std::abs(r);
    d.max_abs_dev = std::max(d.max_abs_dev, a);
    d.min_abs_dev = std::min(d.min_abs_dev, a);
    abs_sum += a;
  }
  d.mean_abs_dev = abs_sum / n;
  // Rounding can leave the mean a hair outside [min, max] when all deviations agree.
  d.mean_abs_dev = std::clamp(d.mean_abs_dev, d.min_abs_dev, d.max_abs_dev);
  d.rmse = std::sqrt(d.sse / n);
  return d;
}

/// Pearson correlation of x and y, clamped to [-1, 1].
inline double correlation(const PairedSeries& series) {
  if (series.size() < 2) {
    throw Error(ErrorCode::InsufficientData,
                "need at least 2 points, got " + std::to_string(series.size()));
  }
  const auto pts = series.points();
  if (detail::all_x_equal(pts)) throw Error(ErrorCode::DegenerateX, "all x values are equal");
  if (detail::all_y_equal(pts)) throw Error(ErrorCode::DegenerateY, "all y values are equal");
  const auto m = detail::centered_moments(pts);
  const double r = m.sxy / std::sqrt(m.sxx * m.syy);
  return std::clamp(r, -1.0, 1.0);
}

}  // namespace staffcast
