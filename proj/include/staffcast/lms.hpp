#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <thread>
#include <tuple>
#include <vector>

#include "staffcast/dataset.hpp"
#include "staffcast/error.hpp"
#include "staffcast/ols.hpp"
#include "staffcast/random.hpp"

namespace staffcast {

enum class LmsMode { Exact, Random };

constexpr std::string_view lms_mode_name(LmsMode m) noexcept {
  return m == LmsMode::Exact ? "EXACT" : "RANDOM";
}

/// Exact enumeration runs only when requested and n <= max_exact_n; larger
/// series fall back to `subsets` seeded random pair draws.
struct LmsConfig {
  LmsMode mode = LmsMode::Exact;
  std::size_t max_exact_n = 500;
  std::size_t subsets = 1000;
  std::uint64_t seed = 0;
  // Worker threads for candidate evaluation; 0 picks hardware concurrency.
  // The result does not depend on this value.
  unsigned threads = 0;

  void check() const {
    if (subsets < 1) throw Error(ErrorCode::OutOfRange, "subsets must be >= 1");
    if (max_exact_n < 2) throw Error(ErrorCode::OutOfRange, "max_exact_n must be >= 2");
  }

  friend bool operator==(const LmsConfig&, const LmsConfig&) = default;
};

namespace detail {

// Order statistic used as "the median": floor((n+1)/2), 1-based.
constexpr std::size_t lms_coverage(std::size_t n) noexcept { return (n + 1) / 2; }

struct LmsCandidate {
  double objective = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
};

// Total order: objective, then |slope|, then |intercept|; the signed values
// settle exact magnitude ties so the winner never depends on visit order.
inline bool better(const LmsCandidate& a, const LmsCandidate& b) noexcept {
  return std::make_tuple(a.objective, std::abs(a.slope), std::abs(a.intercept), a.slope,
                         a.intercept) < std::make_tuple(b.objective, std::abs(b.slope),
                                                        std::abs(b.intercept), b.slope,
                                                        b.intercept);
}

// For a fixed slope, the intercept minimizing the coverage-th smallest
// |residual| is the midpoint of the narrowest window of `coverage`
// consecutive sorted values of y - slope * x.
inline LmsCandidate best_intercept_for_slope(double slope, std::span<const Point> pts,
                                             std::vector<double>& scratch) {
  const std::size_t n = pts.size();
  const std::size_t h = lms_coverage(n);
  scratch.resize(n);
  for (std::size_t i = 0; i < n; ++i) scratch[i] = pts[i].y - slope * pts[i].x;
  std::sort(scratch.begin(), scratch.end());

  double best_width = scratch[h - 1] - scratch[0];
  double best_mid = scratch[0] + 0.5 * best_width;
  for (std::size_t i = 1; i + h <= n; ++i) {
    const double width = scratch[i + h - 1] - scratch[i];
    const double mid = scratch[i] + 0.5 * width;
    if (width < best_width || (width == best_width && std::abs(mid) < std::abs(best_mid))) {
      best_width = width;
      best_mid = mid;
    }
  }
  const double half = 0.5 * best_width;
  return {half * half, slope, best_mid};
}

inline LmsCandidate best_over_slopes(std::span<const double> slopes, std::span<const Point> pts,
                                     unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, slopes.size() / 256)));

  auto scan = [&](std::size_t begin, std::size_t end) {
    std::vector<double> scratch;
    LmsCandidate best = best_intercept_for_slope(slopes[begin], pts, scratch);
    for (std::size_t k = begin + 1; k < end; ++k) {
      const auto c = best_intercept_for_slope(slopes[k], pts, scratch);
      if (better(c, best)) best = c;
    }
    return best;
  };

  if (threads <= 1) return scan(0, slopes.size());

  std::vector<LmsCandidate> partial(threads);
  std::vector<std::thread> pool;
  const std::size_t chunk = (slopes.size() + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(slopes.size(), begin + chunk);
    if (begin >= end) {
      partial.resize(t);
      break;
    }
    pool.emplace_back([&, t, begin, end] { partial[t] = scan(begin, end); });
  }
  for (auto& th : pool) th.join();
  return *std::min_element(partial.begin(), partial.end(), better);
}

}  // namespace detail

/// Lower median (floor((n+1)/2)-th order statistic) of squared residuals.
inline double median_squared_residual(const LinearModel& model, const PairedSeries& series) {
  if (series.empty()) throw Error(ErrorCode::EmptySeries, "median of an empty series");
  std::vector<double> sq;
  sq.reserve(series.size());
  for (const auto& p : series.points()) {
    const double r = p.y - predict(model, p.x);
    sq.push_back(r * r);
  }
  const auto kth = sq.begin() + static_cast<std::ptrdiff_t>(detail::lms_coverage(sq.size()) - 1);
  std::nth_element(sq.begin(), kth, sq.end());
  return *kth;
}

/// Least-median-of-squares line.
///
/// Candidate slopes are every pairwise slope (EXACT) or `subsets` seeded pair
/// draws (RANDOM), always plus the OLS slope; each slope gets its exact
/// optimal intercept. The OLS line itself is also a candidate, so the result
/// never has a larger median squared residual than OLS.
inline LinearModel fit_lms(const PairedSeries& series, const LmsConfig& config = {}) {
  config.check();
  detail::require_fit_preconditions(series);

  // Canonical order makes the fit independent of input order.
  std::vector<Point> pts(series.points().begin(), series.points().end());
  std::sort(pts.begin(), pts.end(),
            [](const Point& a, const Point& b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
  const PairedSeries canonical(pts);
  const std::size_t n = pts.size();

  const LinearModel ols = fit_ols(canonical);
  const bool exact = config.mode == LmsMode::Exact && n <= config.max_exact_n;

  std::vector<double> slopes;
  slopes.push_back(ols.slope);
  if (exact) {
    slopes.reserve(n * (n - 1) / 2 + 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (pts[i].x != pts[j].x) slopes.push_back((pts[j].y - pts[i].y) / (pts[j].x - pts[i].x));
      }
    }
  } else {
    SeededRng rng(config.seed);
    slopes.reserve(config.subsets + 1);
    for (std::size_t s = 0; s < config.subsets; ++s) {
      auto [i, j] = rng.distinct_pair(n);
      if (i > j) std::swap(i, j);
      if (pts[i].x != pts[j].x) slopes.push_back((pts[j].y - pts[i].y) / (pts[j].x - pts[i].x));
    }
  }
  std::sort(slopes.begin(), slopes.end());
  slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());

  auto best = detail::best_over_slopes(slopes, pts, config.threads);

  LinearModel model;
  model.method = exact ? FitMethod::LmsExact : FitMethod::LmsRandom;
  model.n_train = n;
  model.slope = best.slope;
  model.intercept = best.intercept;
  best.objective = median_squared_residual(model, canonical);

  const detail::LmsCandidate ols_line{median_squared_residual(ols, canonical), ols.slope,
                                      ols.intercept};
  if (detail::better(ols_line, best)) best = ols_line;

  model.slope = best.slope;
  model.intercept = best.intercept;
  model.objective = best.objective;
  return model;
}

}  // namespace staffcast
