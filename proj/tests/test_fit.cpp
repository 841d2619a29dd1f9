// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "oracles/stats.hpp"
#include "sapeval/error.hpp"
#include "sapeval/fit.hpp"

namespace sapeval {
namespace {

std::vector<RatedSample> synthetic(std::size_t n, const ScorerWeights& w, std::uint64_t seed,
                                   double noise = 0.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> eps(0.0, noise > 0 ? noise : 1.0);
  std::vector<RatedSample> out;
  for (std::size_t i = 0; i < n; ++i) {
    RatedSample s;
    s.components = {u(rng), u(rng), u(rng)};
    s.rating = combine(s.components, w) + (noise > 0 ? eps(rng) : 0.0);
    out.push_back(s);
  }
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

TEST(FitWeights, RecoversDefaultWeightsWithoutNoise) {
  const auto data = synthetic(100, ScorerWeights{}, 42);
  const FitResult fit = fit_weights(data);
  EXPECT_NEAR(fit.weights.alpha, 0.40, 1e-6);
  EXPECT_NEAR(fit.weights.beta, 0.28, 1e-6);
  EXPECT_NEAR(fit.weights.gamma, 0.32, 1e-6);
  ASSERT_EQ(fit.report.folds.size(), 5u);
  EXPECT_LT(fit.report.mean_mse, 1e-12);
  std::size_t held_out = 0;
  for (const auto& f : fit.report.folds) {
    EXPECT_EQ(f.train_size + f.test_size, 100u);
    EXPECT_LT(f.mse, 1e-12);
    held_out += f.test_size;
  }
  EXPECT_EQ(held_out, 100u);
}

TEST(FitWeights, SingleFeatureRecovery) {
  auto data = synthetic(50, ScorerWeights{}, 3);
  for (auto& s : data) s.rating = s.components.nli;
  const auto w = fit_weights(data).weights;
  EXPECT_NEAR(w.alpha, 1.0, 1e-9);
  EXPECT_NEAR(w.beta, 0.0, 1e-9);
  EXPECT_NEAR(w.gamma, 0.0, 1e-9);
}

TEST(FitWeights, AnyNonNegativeTripleIsRecovered) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int iter = 0; iter < 50; ++iter) {
    double a = u(rng), b = u(rng), c = u(rng);
    const double sum = a + b + c;
    const ScorerWeights w{a / sum, b / sum, c / sum};
    const auto fit = fit_weights(synthetic(60, w, rng()));
    EXPECT_NEAR(fit.weights.alpha, w.alpha, 1e-6);
    EXPECT_NEAR(fit.weights.beta, w.beta, 1e-6);
    EXPECT_NEAR(fit.weights.gamma, w.gamma, 1e-6);
  }
}

TEST(LeastSquares, MatchesNormalEquationsOracleWithNoise) {
  const auto data = synthetic(200, ScorerWeights{0.5, 0.2, 0.3}, 8, 0.05);
  std::vector<std::array<double, 3>> rows;
  std::vector<double> y;
  for (auto s : data) {
    s.rating = std::clamp(s.rating, 0.0, 1.0);
    rows.push_back({s.components.nli, s.components.bert, s.components.soundex});
    y.push_back(s.rating);
  }
  std::vector<RatedSample> clamped = data;
  for (auto& s : clamped) s.rating = std::clamp(s.rating, 0.0, 1.0);
  const auto want = oracle::least_squares3(rows, y);
  const auto got = least_squares(clamped);
  EXPECT_NEAR(got.alpha, want[0], 1e-10);
  EXPECT_NEAR(got.beta, want[1], 1e-10);
  EXPECT_NEAR(got.gamma, want[2], 1e-10);
}

TEST(FitWeights, DeterministicForAFixedSeed) {
  auto data = synthetic(40, ScorerWeights{}, 1, 0.02);
  for (auto& s : data) s.rating = std::clamp(s.rating, 0.0, 1.0);
  const auto a = fit_weights(data, 5, 9);
  const auto b = fit_weights(data, 5, 9);
  ASSERT_EQ(a.report.folds.size(), b.report.folds.size());
  for (std::size_t i = 0; i < a.report.folds.size(); ++i) {
    EXPECT_EQ(a.report.folds[i].mse, b.report.folds[i].mse);
    EXPECT_EQ(a.report.folds[i].weights, b.report.folds[i].weights);
  }
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.report.seed, 9u);
}

TEST(FitWeights, Preconditions) {
  const auto three = synthetic(3, ScorerWeights{}, 2);
  EXPECT_EQ(code_of([&] { fit_weights(three, 5); }), ErrorCode::kTooFewSamples);
  std::vector<RatedSample> collinear;
  for (int i = 0; i < 10; ++i) {
    const double x = i / 10.0;
    collinear.push_back({{x, x, 0.5}, 0.5});
  }
  EXPECT_EQ(code_of([&] { fit_weights(collinear); }), ErrorCode::kRankDeficient);
  auto bad = synthetic(10, ScorerWeights{}, 2);
  bad[3].rating = 1.5;
  EXPECT_EQ(code_of([&] { fit_weights(bad); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { fit_weights(synthetic(10, ScorerWeights{}, 2), 1); }),
            ErrorCode::kInvalidArgument);
}

TEST(FitWeights, R2UndefinedForConstantHeldOutRatings) {
  std::vector<RatedSample> data;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10; ++i) data.push_back({{u(rng), u(rng), u(rng)}, 0.5});
  const auto fit = fit_weights(data, 5, 0);
  for (const auto& f : fit.report.folds) EXPECT_FALSE(f.r2.has_value());
  EXPECT_FALSE(fit.report.mean_r2.has_value());
}

}  // namespace
}  // namespace sapeval
