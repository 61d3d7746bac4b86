#pragma once

// Test-only reference computations. Nothing here calls into the library's
// fitting code: sums are raw (not mean-centered), intercepts are searched by
// brute force, and LMS is enumerated directly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

struct Line {
  double intercept = 0.0;
  double slope = 0.0;
};

struct Sums {
  double n = 0, sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
};

inline Sums raw_sums(const std::vector<double>& x, const std::vector<double>& y) {
  Sums s;
  s.n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    s.sx += x[i];
    s.sy += y[i];
    s.sxy += x[i] * y[i];
    s.sxx += x[i] * x[i];
    s.syy += y[i] * y[i];
  }
  return s;
}

// Textbook raw-sum formulas for slope, intercept and r.
inline Line ols_raw(const std::vector<double>& x, const std::vector<double>& y) {
  const auto s = raw_sums(x, y);
  const double den = s.n * s.sxx - s.sx * s.sx;
  return {(s.sy * s.sxx - s.sx * s.sxy) / den, (s.n * s.sxy - s.sx * s.sy) / den};
}

inline double r_raw(const std::vector<double>& x, const std::vector<double>& y) {
  const auto s = raw_sums(x, y);
  return (s.n * s.sxy - s.sx * s.sy) /
         std::sqrt((s.n * s.sxx - s.sx * s.sx) * (s.n * s.syy - s.sy * s.sy));
}

inline double sse(const Line& l, const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - l.intercept - l.slope * x[i];
    acc += r * r;
  }
  return acc;
}

// Coarse-to-fine grid search over (slope, intercept) minimizing SSE.
inline Line ols_grid(const std::vector<double>& x, const std::vector<double>& y) {
  const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
  const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  const double yspan = std::max(1.0, *ymax - *ymin);
  const double xspan = std::max(1e-12, *xmax - *xmin);
  double sc = 0, ic = 0;
  double sw = 4 * yspan / xspan;  // half-width of the slope window
  double iw = 4 * yspan + 4 * sw * std::max(std::abs(*xmin), std::abs(*xmax));
  constexpr int steps = 20;
  for (int round = 0; round < 60; ++round) {
    double best = std::numeric_limits<double>::infinity();
    double bs = sc, bi = ic;
    for (int a = -steps; a <= steps; ++a) {
      for (int b = -steps; b <= steps; ++b) {
        const Line l{ic + iw * b / steps, sc + sw * a / steps};
        const double v = sse(l, x, y);
        if (v < best) {
          best = v;
          bs = l.slope;
          bi = l.intercept;
        }
      }
    }
    sc = bs;
    ic = bi;
    sw /= 3;
    iw /= 3;
  }
  return {ic, sc};
}

struct Diag {
  double sse = 0, rmse = 0, ssr = 0, max_abs = 0, min_abs = 0, mean_abs = 0;
};

// Spreadsheet-style direct summation, one column at a time.
inline Diag diagnostics_direct(const Line& l, const std::vector<double>& x,
                               const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> fitted(n), resid(n), absdev(n);
  double ybar = 0;
  for (double v : y) ybar += v;
  ybar /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    fitted[i] = l.intercept + l.slope * x[i];
    resid[i] = y[i] - fitted[i];
    absdev[i] = std::abs(resid[i]);
  }
  Diag d;
  for (std::size_t i = 0; i < n; ++i) d.sse += resid[i] * resid[i];
  for (std::size_t i = 0; i < n; ++i) d.ssr += (fitted[i] - ybar) * (fitted[i] - ybar);
  d.rmse = std::sqrt(d.sse / static_cast<double>(n));
  d.max_abs = *std::max_element(absdev.begin(), absdev.end());
  d.min_abs = *std::min_element(absdev.begin(), absdev.end());
  for (double a : absdev) d.mean_abs += a;
  d.mean_abs /= static_cast<double>(n);
  return d;
}

// k-th smallest squared residual, k = floor((n+1)/2), by full sort.
inline double lower_median_sq(const Line& l, const std::vector<double>& x,
                              const std::vector<double>& y) {
  std::vector<double> sq;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - l.intercept - l.slope * x[i];
    sq.push_back(r * r);
  }
  std::sort(sq.begin(), sq.end());
  return sq[(sq.size() + 1) / 2 - 1];
}

// Best intercept for a slope by trying every midpoint of two adjusted values.
inline std::pair<double, double> best_intercept_bruteforce(double slope, const std::vector<double>& x,
                                                           const std::vector<double>& y) {
  std::vector<double> z;
  for (std::size_t i = 0; i < x.size(); ++i) z.push_back(y[i] - slope * x[i]);
  double best = std::numeric_limits<double>::infinity();
  double best_c = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i; j < z.size(); ++j) {
      const double c = 0.5 * (z[i] + z[j]);
      const double v = lower_median_sq({c, slope}, x, y);
      if (v < best) {
        best = v;
        best_c = c;
      }
    }
  }
  return {best, best_c};
}

// Minimum lower-median objective over all pairwise slopes plus `extra_slope`.
inline double lms_objective_bruteforce(const std::vector<double>& x, const std::vector<double>& y,
                                       double extra_slope) {
  double best = best_intercept_bruteforce(extra_slope, x, y).first;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[i] == x[j]) continue;
      const double s = (y[j] - y[i]) / (x[j] - x[i]);
      best = std::min(best, best_intercept_bruteforce(s, x, y).first);
    }
  }
  return best;
}

inline double rae_direct(const std::vector<double>& actual, const std::vector<double>& predicted) {
  double mean = 0;
  for (double a : actual) mean += a;
  mean /= static_cast<double>(actual.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) num += std::abs(actual[i] - predicted[i]);
  for (double a : actual) den += std::abs(a - mean);
  return 100.0 * num / den;
}

// Random noisy line with distinct-enough x values; n in [lo, hi].
struct RandomSeries {
  std::vector<double> x, y;
};

inline RandomSeries random_series(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> nd(lo, hi);
  std::uniform_real_distribution<double> xs(-50, 150), coef(-5, 5), noise(-10, 10);
  const int n = nd(rng);
  const double a = coef(rng) * 10, b = coef(rng);
  RandomSeries s;
  for (int i = 0; i < n; ++i) {
    const double x = std::round(xs(rng) * 10) / 10;
    s.x.push_back(x);
    s.y.push_back(a + b * x + noise(rng));
  }
  if (std::all_of(s.x.begin(), s.x.end(), [&](double v) { return v == s.x[0]; })) s.x[0] += 1;
  return s;
}

}  // namespace oracle
