// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "sapeval/fit.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "sapeval/error.hpp"

namespace sapeval {
namespace {

constexpr std::size_t kFeatures = 3;

std::array<double, kFeatures> features(const ComponentScores& c) {
  return {c.nli, c.bert, c.soundex};
}

double predict(const ScorerWeights& w, const ComponentScores& c) {
  return combine(c, w);
}

}  // namespace

ScorerWeights least_squares(std::span<const RatedSample> samples) {
  const std::size_t n = samples.size();
  if (n < kFeatures) {
    throw Error(ErrorCode::kRankDeficient,
                "need at least 3 samples for 3 weights, got " + std::to_string(n));
  }
  // Column-major copy of the design matrix, and the right-hand side.
  std::vector<std::array<double, kFeatures>> rows(n);
  std::vector<double> rhs(n);
  double frobenius = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rows[i] = features(samples[i].components);
    rhs[i] = samples[i].rating;
    for (double v : rows[i]) frobenius += v * v;
  }
  frobenius = std::sqrt(frobenius);
  const double tolerance = 1e-12 * std::max(frobenius, 1.0);

  std::array<double, kFeatures> diag{};
  for (std::size_t k = 0; k < kFeatures; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) norm += rows[i][k] * rows[i][k];
    norm = std::sqrt(norm);
    if (norm <= tolerance) {
      throw Error(ErrorCode::kRankDeficient,
                  "component matrix is rank deficient (column " +
                      std::to_string(k) + ")");
    }
    const double alpha = rows[k][k] > 0 ? -norm : norm;
    // v = x - alpha e_k, stored in place of column k.
    rows[k][k] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) vnorm2 += rows[i][k] * rows[i][k];
    for (std::size_t c = k + 1; c < kFeatures; ++c) {
      double dot = 0.0;
      for (std::size_t i = k; i < n; ++i) dot += rows[i][k] * rows[i][c];
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < n; ++i) rows[i][c] -= f * rows[i][k];
    }
    double dot = 0.0;
    for (std::size_t i = k; i < n; ++i) dot += rows[i][k] * rhs[i];
    const double f = 2.0 * dot / vnorm2;
    for (std::size_t i = k; i < n; ++i) rhs[i] -= f * rows[i][k];
    diag[k] = alpha;
  }

  // Back substitution on R; the strict upper triangle lives in rows[k][c].
  std::array<double, kFeatures> w{};
  for (std::size_t k = kFeatures; k-- > 0;) {
    double acc = rhs[k];
    for (std::size_t c = k + 1; c < kFeatures; ++c) acc -= rows[k][c] * w[c];
    w[k] = acc / diag[k];
  }
  return {w[0], w[1], w[2]};
}

FitResult fit_weights(std::span<const RatedSample> samples, std::size_t folds,
                      std::uint64_t seed) {
  if (folds < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need at least 2 folds");
  }
  if (samples.size() < folds) {
    throw Error(ErrorCode::kTooFewSamples,
                std::to_string(samples.size()) + " samples for " +
                    std::to_string(folds) + " folds");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double r = samples[i].rating;
    if (!(r >= 0.0 && r <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "rating of sample " + std::to_string(i) + " is outside [0, 1]");
    }
  }

  FitResult result;
  result.weights = least_squares(samples);
  result.report.samples = samples.size();
  result.report.seed = seed;

  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng() % i]);
  }

  double mse_sum = 0.0;
  double r2_sum = 0.0;
  std::size_t r2_count = 0;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<RatedSample> train;
    std::vector<RatedSample> test;
    for (std::size_t p = 0; p < order.size(); ++p) {
      (p % folds == f ? test : train).push_back(samples[order[p]]);
    }
    FoldReport fold;
    fold.train_size = train.size();
    fold.test_size = test.size();
    fold.weights = least_squares(train);

    double mean = 0.0;
    for (const auto& s : test) mean += s.rating;
    mean /= static_cast<double>(test.size());
    double sse = 0.0;
    double sst = 0.0;
    for (const auto& s : test) {
      const double e = s.rating - predict(fold.weights, s.components);
      sse += e * e;
      sst += (s.rating - mean) * (s.rating - mean);
    }
    fold.mse = sse / static_cast<double>(test.size());
    if (sst > 0.0) {
      fold.r2 = 1.0 - sse / sst;
      r2_sum += *fold.r2;
      ++r2_count;
    }
    mse_sum += fold.mse;
    result.report.folds.push_back(fold);
  }
  result.report.mean_mse = mse_sum / static_cast<double>(folds);
  if (r2_count > 0) result.report.mean_r2 = r2_sum / static_cast<double>(r2_count);
  return result;
}

}  // namespace sapeval
