// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fake_backend.hpp"
#include "sapeval/backend.hpp"
#include "sapeval/error.hpp"
#include "sapeval/phonetic.hpp"
#include "sapeval/semantic.hpp"

namespace sapeval {
namespace {

Tokens T(std::initializer_list<const char*> words) { return Tokens(words.begin(), words.end()); }

TEST(Combine, Examples) {
  const ScorerWeights w;
  EXPECT_EQ(w.alpha, 0.40);
  EXPECT_EQ(w.beta, 0.28);
  EXPECT_EQ(w.gamma, 0.32);
  EXPECT_NEAR(combine({1, 1, 1}, w), 1.0, 1e-15);
  EXPECT_NEAR(combine({0.5, 0.25, 0.75}, w), 0.51, 1e-15);
}

TEST(CombineProperty, EqualComponentsMapToThemselves) {
  std::mt19937_64 rng(100);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double s = u(rng);
    EXPECT_NEAR(combine({s, s, s}, ScorerWeights{}), s, 1e-12);
  }
}

TEST(SelectReference, HigherWinsAndTiesGoToSecondVariant) {
  const ScorerWeights w;
  auto a = select_reference({ComponentScores{1, 1, 1}, ComponentScores{0, 0, 0}}, w);
  EXPECT_EQ(a.chosen_j, 0);
  EXPECT_NEAR(a.semscore, 1.0, 1e-15);
  auto b = select_reference({ComponentScores{0.5, 0.5, 0.5}, ComponentScores{0.5, 0.5, 0.5}}, w);
  EXPECT_EQ(b.chosen_j, 1);
  auto c = select_reference({std::nullopt, ComponentScores{0.2, 0.2, 0.2}}, w);
  EXPECT_EQ(c.chosen_j, 1);
  EXPECT_FALSE(c.per_reference[0].has_value());
  EXPECT_THROW(select_reference({std::nullopt, std::nullopt}, w), Error);
}

TEST(SelectReferenceProperty, MonotoneAndDominatesEachReference) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ScorerWeights w;
  for (int i = 0; i < 1000; ++i) {
    ComponentScores r0{u(rng), u(rng), u(rng)}, r1{u(rng), u(rng), u(rng)};
    const auto base = select_reference({r0, r1}, w);
    EXPECT_GE(base.semscore, combine(r0, w));
    EXPECT_GE(base.semscore, combine(r1, w));
    EXPECT_NEAR(base.semscore, combine(base.components, w), 0.0);
    // Raising one component of the chosen reference never lowers the score.
    ComponentScores& chosen = base.chosen_j == 0 ? r0 : r1;
    double* field[] = {&chosen.nli, &chosen.bert, &chosen.soundex};
    double* f = field[rng() % 3];
    *f = std::min(1.0, *f + u(rng) * (1.0 - *f));
    EXPECT_GE(select_reference({r0, r1}, w).semscore, base.semscore);
  }
}

TEST(CorpusSemscore, Examples) {
  auto item = [](double s) {
    UtteranceSem u;
    u.semscore = s;
    return u;
  };
  const std::vector<UtteranceSem> two = {item(0.4), item(0.6)};
  EXPECT_NEAR(corpus_semscore(two), 0.5, 1e-15);
  const std::vector<UtteranceSem> one = {item(0.123)};
  EXPECT_EQ(corpus_semscore(one), 0.123);
  EXPECT_THROW(corpus_semscore({}), Error);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<UtteranceSem> many;
  for (int i = 0; i < 500; ++i) many.push_back(item(u(rng)));
  const double base = corpus_semscore(many);
  for (int k = 0; k < 10; ++k) {
    std::shuffle(many.begin(), many.end(), rng);
    EXPECT_EQ(corpus_semscore(many), base);
  }
}

TEST(StubBackend, TokenF1Contract) {
  EXPECT_EQ(token_f1("A B C", "A B C"), 1.0);
  EXPECT_EQ(token_f1("A B C", "X Y"), 0.0);
  EXPECT_NEAR(token_f1("HOW DO YOU SPELL EXERCISE", "HOW DO YOU FEEL EXERCISE"), 0.8, 1e-15);
  EXPECT_NEAR(token_f1("A A B", "A B B"), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(token_f1("A", ""), 0.0);
  StubBackend stub;
  EXPECT_EQ(stub.health().status, "ok");
  EXPECT_NE(stub.health().model_info.find("stub"), std::string::npos);
}

TEST(SemanticScorer, StubIdentityAndDisjoint) {
  StubBackend stub;
  SemanticScorer scorer(stub);
  const auto same = scorer.components(T({"HOW", "ARE", "YOU"}), T({"HOW", "ARE", "YOU"}));
  EXPECT_EQ(same.nli, 1.0);
  EXPECT_EQ(same.bert, 1.0);
  EXPECT_EQ(same.soundex, 1.0);
  const Tokens ref = T({"SPELL"}), hyp = T({"FEEL"});
  const auto disjoint = scorer.components(ref, hyp);
  EXPECT_EQ(disjoint.nli, 0.0);
  EXPECT_EQ(disjoint.bert, 0.0);
  EXPECT_EQ(disjoint.soundex, score_soundex(ref, hyp));
}

TEST(SemanticScorer, ClampsAndCountsOutOfRangeValues) {
  testing::FakeBackend fake([](const ScoreRequest& r) { return ScoreResponse{r.id, 1.5, -0.25}; });
  SemanticScorer scorer(fake);
  const auto c = scorer.components(T({"A"}), T({"A"}));
  EXPECT_EQ(c.nli, 1.0);
  EXPECT_EQ(c.bert, 0.0);
  EXPECT_EQ(scorer.backend_values(), 2u);
  EXPECT_EQ(scorer.clamped_values(), 2u);
}

TEST(SemanticScorer, SendsReferenceAndHypothesisInTheirRoles) {
  testing::FakeBackend fake([](const ScoreRequest& r) { return ScoreResponse{r.id, 0, 0}; });
  SemanticScorer scorer(fake);
  scorer.components(T({"THE", "REF"}), T({"A", "HYP"}));
  ASSERT_EQ(fake.requests().size(), 1u);
  EXPECT_EQ(fake.requests()[0].reference, "THE REF");
  EXPECT_EQ(fake.requests()[0].hypothesis, "A HYP");
}

TEST(SemanticScorer, DualReferenceUsesTheBetterVariant) {
  StubBackend stub;
  SemanticScorer scorer(stub);
  const ReferencePair refs{T({"UM", "I", "WENT"}), T({"I", "WENT"})};
  const auto s = scorer.score(refs, T({"UM", "I", "WENT"}));
  EXPECT_EQ(s.chosen_j, 0);
  EXPECT_NEAR(s.semscore, 1.0, 1e-15);
  EXPECT_LT(*s.per_reference[1], 1.0);
}

TEST(SemanticScorer, BatchIsOneBackendCallAndMatchesSingleScoring) {
  testing::FakeBackend fake([](const ScoreRequest& r) {
    const double f = token_f1(r.reference, r.hypothesis);
    return ScoreResponse{r.id, f, f * f};
  });
  SemanticScorer batch_scorer(fake);
  std::vector<ReferencePair> refs = {
      {T({"UM", "HI"}), T({"HI"})}, {T({"A", "B"}), T({"A", "B"})}, {T({"X"}), {}}};
  std::vector<Tokens> hyps = {T({"HI"}), T({"A"}), T({"X", "Y"})};
  std::vector<SemItem> items;
  for (std::size_t i = 0; i < refs.size(); ++i) items.push_back({&refs[i], &hyps[i]});
  const auto batch = batch_scorer.score_batch(items);
  EXPECT_EQ(fake.calls(), 1u);
  // Identical variants and empty variants are not sent twice.
  EXPECT_EQ(fake.requests().size(), 4u);
  for (std::size_t i = 0; i < refs.size(); ++i) {
    SemanticScorer single(fake);
    const auto s = single.score(refs[i], hyps[i]);
    EXPECT_EQ(batch[i].semscore, s.semscore);
    EXPECT_EQ(batch[i].chosen_j, s.chosen_j);
  }
}

TEST(SemanticScorer, BackendErrorsPropagate) {
  testing::FakeBackend fake([](const ScoreRequest&) -> ScoreResponse {
    throw Error(ErrorCode::kBackendUnavailable, "down");
  });
  SemanticScorer scorer(fake);
  try {
    scorer.components(T({"A"}), T({"A"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBackendUnavailable);
    EXPECT_TRUE(e.retryable());
  }
}

TEST(MakeBackend, Selection) {
  EXPECT_EQ(make_backend("stub")->describe(), "stub");
  EXPECT_EQ(make_backend("http://127.0.0.1:1")->describe(), "http://127.0.0.1:1");
  EXPECT_THROW(make_backend("grpc://x"), Error);
}

}  // namespace
}  // namespace sapeval
