#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "staffcast/ols.hpp"

using namespace staffcast;
namespace ho = fixtures::hospital_oracle;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

PairedSeries make(const oracle::RandomSeries& r) { return PairedSeries::from_columns(r.x, r.y); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST(FitOls, HospitalFixture) {
  const auto m = fit_ols(fixtures::hospital());
  EXPECT_EQ(m.method, FitMethod::Ols);
  EXPECT_NEAR(m.intercept, 30.912, 0.001);
  EXPECT_NEAR(m.slope, 2.2315, 0.001);
  EXPECT_NEAR(m.slope, ho::kSlope, 1e-12);
  EXPECT_NEAR(m.intercept, ho::kIntercept, 1e-10);
  EXPECT_LT(rel_err(m.objective, ho::kSse), 1e-9);
  EXPECT_EQ(m.n_train, 12u);
}

TEST(FitOls, MatchesRawSumFormulas) {
  const auto raw = oracle::ols_raw(fixtures::kHospitalBeds, fixtures::kHospitalStaff);
  const auto m = fit_ols(fixtures::hospital());
  EXPECT_LT(rel_err(m.slope, raw.slope), 1e-12);
  EXPECT_LT(rel_err(m.intercept, raw.intercept), 1e-12);
}

TEST(FitOls, TwoPointsExactFit) {
  const auto m = fit_ols(PairedSeries({{0, 0}, {1, 1}}));
  EXPECT_DOUBLE_EQ(m.slope, 1.0);
  EXPECT_DOUBLE_EQ(m.intercept, 0.0);
  EXPECT_DOUBLE_EQ(m.objective, 0.0);
}

TEST(FitOls, ConstantY) {
  const auto m = fit_ols(PairedSeries({{1, 5}, {2, 5}, {3, 5}}));
  EXPECT_DOUBLE_EQ(m.slope, 0.0);
  EXPECT_DOUBLE_EQ(m.intercept, 5.0);
}

TEST(FitOls, DegenerateInputs) {
  EXPECT_EQ(code_of([] { fit_ols(PairedSeries{}); }), ErrorCode::InsufficientData);
  EXPECT_EQ(code_of([] { fit_ols(PairedSeries({{1, 2}})); }), ErrorCode::InsufficientData);
  EXPECT_EQ(code_of([] { fit_ols(PairedSeries({{3, 1}, {3, 2}, {3, 9}})); }), ErrorCode::DegenerateX);
}

TEST(Predict, HospitalAt100Beds) {
  const auto m = fit_ols(fixtures::hospital());
  EXPECT_NEAR(predict(m, 100), 254.06, 0.05);
  EXPECT_NEAR(predict(m, 100), ho::kPredict100, 1e-9);
}

TEST(Predict, ConstantModel) {
  const LinearModel m{5.0, 0.0, FitMethod::Ols, 0.0, 3};
  EXPECT_EQ(predict(m, 999), 5.0);
}

TEST(Diagnostics, HospitalMatchesDirectSummationOracle) {
  const auto m = fit_ols(fixtures::hospital());
  const auto d = diagnostics(m, fixtures::hospital());
  const auto o = oracle::diagnostics_direct({m.intercept, m.slope}, fixtures::kHospitalBeds,
                                            fixtures::kHospitalStaff);
  EXPECT_LT(rel_err(d.sse, o.sse), 1e-9);
  EXPECT_LT(rel_err(d.rmse, o.rmse), 1e-9);
  EXPECT_LT(rel_err(d.ssr, o.ssr), 1e-9);
  EXPECT_LT(rel_err(d.max_abs_dev, o.max_abs), 1e-9);
  EXPECT_LT(rel_err(d.min_abs_dev, o.min_abs), 1e-9);
  EXPECT_LT(rel_err(d.mean_abs_dev, o.mean_abs), 1e-9);

  // Exact rational reference.
  EXPECT_LT(rel_err(d.sse, ho::kSse), 1e-9);
  EXPECT_LT(rel_err(d.ssr, ho::kSsr), 1e-9);
  EXPECT_LT(rel_err(d.rmse, ho::kRmse), 1e-9);
  EXPECT_LT(rel_err(d.max_abs_dev, ho::kMaxAbsDev), 1e-9);
  EXPECT_LT(rel_err(d.min_abs_dev, ho::kMinAbsDev), 1e-9);
  EXPECT_LT(rel_err(d.mean_abs_dev, ho::kMeanAbsDev), 1e-9);
}

TEST(Diagnostics, ExactFitIsAllZero) {
  const PairedSeries s({{2, 3}, {5, 9}});
  const auto d = diagnostics(fit_ols(s), s);
  EXPECT_EQ(d.sse, 0.0);
  EXPECT_EQ(d.rmse, 0.0);
  EXPECT_EQ(d.max_abs_dev, 0.0);
  EXPECT_EQ(d.min_abs_dev, 0.0);
  EXPECT_EQ(d.mean_abs_dev, 0.0);
}

TEST(Diagnostics, MeanPredictor) {
  const auto s = fixtures::hospital();
  const LinearModel mean_model{1692.0 / 12.0, 0.0, FitMethod::Ols, 0.0, 12};
  const auto d = diagnostics(mean_model, s);
  EXPECT_NEAR(d.ssr, 0.0, 1e-18);
  EXPECT_LT(rel_err(d.sse, ho::kSst), 1e-12);
}

TEST(Diagnostics, EmptySeries) {
  EXPECT_EQ(code_of([] { diagnostics(LinearModel{}, PairedSeries{}); }), ErrorCode::EmptySeries);
}

TEST(Diagnostics, InvariantsOnRandomSeries) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = oracle::random_series(rng, 1, 40);
    const auto s = make(r);
    const LinearModel m{std::uniform_real_distribution<>(-20, 20)(rng),
                        std::uniform_real_distribution<>(-3, 3)(rng), FitMethod::LmsExact, 0, 0};
    const auto d = diagnostics(m, s);
    EXPECT_GE(d.min_abs_dev, 0.0);
    EXPECT_LE(d.min_abs_dev, d.mean_abs_dev);
    EXPECT_LE(d.mean_abs_dev, d.max_abs_dev);
    EXPECT_GE(d.ssr, 0.0);
    if (d.sse > 0) {
      EXPECT_LT(rel_err(d.rmse * d.rmse * double(s.size()), d.sse), 1e-12);
    }
  }
}

TEST(Correlation, Fixtures) {
  EXPECT_DOUBLE_EQ(correlation(PairedSeries({{0, 0}, {1, 1}, {2, 2}})), 1.0);
  EXPECT_DOUBLE_EQ(correlation(PairedSeries({{0, 1}, {1, 0}})), -1.0);
  const double r = correlation(fixtures::hospital());
  EXPECT_NEAR(r, 0.9415, 0.002);
  EXPECT_NEAR(r, ho::kR, 1e-12);
  EXPECT_NEAR(r, oracle::r_raw(fixtures::kHospitalBeds, fixtures::kHospitalStaff), 1e-12);
}

TEST(Correlation, DegenerateInputs) {
  EXPECT_EQ(code_of([] { correlation(PairedSeries({{1, 1}, {1, 2}})); }), ErrorCode::DegenerateX);
  EXPECT_EQ(code_of([] { correlation(PairedSeries({{1, 2}, {3, 2}})); }), ErrorCode::DegenerateY);
  EXPECT_EQ(code_of([] { correlation(PairedSeries({{1, 2}})); }), ErrorCode::InsufficientData);
}

// ---------------------------------------------------------------------------
// Properties over seeded random series.

class OlsProperties : public ::testing::TestWithParam<int> {};

TEST_P(OlsProperties, NormalEquationsAndMeanPoint) {
  std::mt19937_64 rng(GetParam());
  const auto r = oracle::random_series(rng, 2, 50);
  const auto s = make(r);
  const auto m = fit_ols(s);

  double sum_r = 0, sum_rx = 0, scale = 0, scale_x = 0, xbar = 0, ybar = 0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const double res = r.y[i] - predict(m, r.x[i]);
    sum_r += res;
    sum_rx += res * r.x[i];
    scale += std::abs(r.y[i]);
    scale_x += std::abs(r.y[i] * r.x[i]);
    xbar += r.x[i];
    ybar += r.y[i];
  }
  xbar /= double(r.x.size());
  ybar /= double(r.x.size());
  EXPECT_LE(std::abs(sum_r), 1e-9 * scale);
  EXPECT_LE(std::abs(sum_rx), 1e-9 * scale_x);
  // Relative to the magnitudes that are summed in intercept + slope * xbar.
  const double mag = std::max({std::abs(ybar), std::abs(m.slope * xbar), 1.0});
  EXPECT_LE(std::abs(predict(m, xbar) - ybar), 1e-12 * mag);
}

TEST_P(OlsProperties, DecompositionAndRSquared) {
  std::mt19937_64 rng(GetParam() + 1000);
  const auto r = oracle::random_series(rng, 3, 50);
  const auto s = make(r);
  const auto m = fit_ols(s);
  const auto d = diagnostics(m, s);
  double ybar = 0;
  for (double v : r.y) ybar += v;
  ybar /= double(r.y.size());
  double sst = 0;
  for (double v : r.y) sst += (v - ybar) * (v - ybar);
  if (sst == 0) GTEST_SKIP();
  EXPECT_LT(rel_err(d.sse + d.ssr, sst), 1e-9);
  const double rr = correlation(s);
  EXPECT_LT(std::abs(rr * rr - d.ssr / (d.sse + d.ssr)), 1e-9);
}

TEST_P(OlsProperties, Equivariance) {
  std::mt19937_64 rng(GetParam() + 2000);
  const auto r = oracle::random_series(rng, 2, 30);
  const auto m = fit_ols(make(r));
  const double c = std::uniform_real_distribution<>(0.1, 10)(rng) * (GetParam() % 2 ? -1 : 1);
  const double dshift = std::uniform_real_distribution<>(-500, 500)(rng);

  auto scaled = r;
  for (auto& x : scaled.x) x *= c;
  const auto ms = fit_ols(make(scaled));
  EXPECT_LT(rel_err(ms.slope, m.slope / c), 1e-9);
  EXPECT_LE(std::abs(ms.intercept - m.intercept), 1e-9 * std::max(1.0, std::abs(m.intercept)) * 100);
  EXPECT_LT(rel_err(predict(ms, 7 * c), predict(m, 7)), 1e-9);

  auto shifted = r;
  for (auto& y : shifted.y) y += dshift;
  const auto mt = fit_ols(make(shifted));
  EXPECT_NEAR(mt.slope, m.slope, 1e-9 * std::max(1.0, std::abs(m.slope)));
  EXPECT_NEAR(mt.intercept, m.intercept + dshift, 1e-9 * std::max(1.0, std::abs(m.intercept + dshift)) * 100);
}

TEST_P(OlsProperties, CorrelationSymmetryAndAffineInvariance) {
  std::mt19937_64 rng(GetParam() + 3000);
  const auto r = oracle::random_series(rng, 3, 40);
  const double rxy = correlation(make(r));
  EXPECT_EQ(rxy, correlation(PairedSeries::from_columns(r.y, r.x)));
  auto t = r;
  for (auto& x : t.x) x = 3.5 * x - 12;
  for (auto& y : t.y) y = 0.25 * y + 1000;
  EXPECT_NEAR(correlation(make(t)), rxy, 1e-9);
  EXPECT_GE(rxy, -1.0);
  EXPECT_LE(rxy, 1.0);
}

TEST_P(OlsProperties, AgreesWithGridSearchOracle) {
  std::mt19937_64 rng(GetParam() + 4000);
  const auto r = oracle::random_series(rng, 3, 12);
  const auto m = fit_ols(make(r));
  const auto g = oracle::ols_grid(r.x, r.y);
  // Grid refinement converges to the SSE minimizer; compare objective and line.
  EXPECT_LE(oracle::sse({m.intercept, m.slope}, r.x, r.y), oracle::sse(g, r.x, r.y) * (1 + 1e-9) + 1e-9);
  EXPECT_NEAR(m.slope, g.slope, 1e-6 * std::max(1.0, std::abs(m.slope)));
  EXPECT_NEAR(m.intercept, g.intercept, 1e-5 * std::max(1.0, std::abs(m.intercept)));
}

INSTANTIATE_TEST_SUITE_P(Seeds, OlsProperties, ::testing::Range(1, 41));
