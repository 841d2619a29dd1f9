// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles/edit_scripts.hpp"
#include "sapeval/align.hpp"
#include "sapeval/error.hpp"

namespace sapeval {
namespace {

Tokens T(std::initializer_list<const char*> words) { return Tokens(words.begin(), words.end()); }

const Tokens kRef = T({"HOW", "DO", "YOU", "SPELL", "EXERCISE"});

Tokens random_tokens(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len,
                     int alphabet) {
  const std::size_t n = min_len + rng() % (max_len - min_len + 1);
  Tokens out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('A' + rng() % alphabet)));
  return out;
}

TEST(AlignWords, ExampleSubstitution) {
  const auto c = align_words(kRef, T({"HOW", "DO", "YOU", "FEEL", "EXERCISE"}));
  EXPECT_EQ(c, (AlignmentCounts{1, 0, 0, 5}));
  EXPECT_DOUBLE_EQ(c.rate(), 0.2);
}

TEST(AlignWords, ExampleTwoErrors) {
  const auto c = align_words(kRef, T({"HOW", "TO", "SPELL", "EXERCISE"}));
  EXPECT_EQ(c.errors(), 2u);
  EXPECT_EQ(c.reference_words, 5u);
  // Diagonal before deletion: DO->TO is the substitution, YOU is deleted.
  EXPECT_EQ(c, (AlignmentCounts{1, 1, 0, 5}));
}

TEST(AlignWords, Identity) {
  EXPECT_EQ(align_words(kRef, kRef), (AlignmentCounts{0, 0, 0, 5}));
}

TEST(AlignWords, EmptyHypothesisIsAllDeletions) {
  EXPECT_EQ(align_words(kRef, {}), (AlignmentCounts{0, 5, 0, 5}));
}

TEST(AlignWords, EmptyReferenceThrows) {
  try {
    align_words({}, kRef);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyReference);
  }
}

TEST(Align, ScriptReplaysToHypothesis) {
  const Tokens hyp = T({"HOW", "TO", "SPELL", "THE", "EXERCISE"});
  const Alignment a = align(kRef, hyp);
  std::size_t r = 0, h = 0;
  Tokens rebuilt;
  for (EditOp op : a.script) {
    switch (op) {
      case EditOp::kMatch: EXPECT_EQ(kRef[r], hyp[h]); rebuilt.push_back(hyp[h]); ++r; ++h; break;
      case EditOp::kSubstitution: EXPECT_NE(kRef[r], hyp[h]); rebuilt.push_back(hyp[h]); ++r; ++h; break;
      case EditOp::kDeletion: ++r; break;
      case EditOp::kInsertion: rebuilt.push_back(hyp[h]); ++h; break;
    }
  }
  EXPECT_EQ(r, kRef.size());
  EXPECT_EQ(rebuilt, hyp);
}

TEST(AlignProperty, MatchesExhaustiveEditScripts) {
  std::mt19937_64 rng(1234);
  for (int iter = 0; iter < 1000; ++iter) {
    const Tokens ref = random_tokens(rng, 1, 6, 4);
    const Tokens hyp = random_tokens(rng, 0, 6, 4);
    const oracle::EditScripts scripts(ref, hyp);
    const auto c = align_words(ref, hyp);
    ASSERT_EQ(c.errors(), scripts.min_cost());
    EXPECT_EQ(c.reference_words, ref.size());
    EXPECT_TRUE(scripts.minimal_scripts().contains({c.substitutions, c.deletions, c.insertions}));
  }
}

TEST(AlignProperty, SwappingSidesSwapsDeletionsAndInsertions) {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 300; ++iter) {
    const Tokens a = random_tokens(rng, 1, 6, 5);
    const Tokens b = random_tokens(rng, 1, 6, 5);
    const auto ab = align_words(a, b);
    EXPECT_EQ(ab.errors(), align_words(b, a).errors());
    // The mirrored script is minimal for the reversed pair.
    const oracle::EditScripts reversed(b, a);
    EXPECT_TRUE(reversed.minimal_scripts().contains({ab.substitutions, ab.insertions, ab.deletions}));
    EXPECT_LE(ab.substitutions + ab.deletions, a.size());
  }
}

TEST(AlignProperty, TriangleInequality) {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 500; ++iter) {
    const Tokens a = random_tokens(rng, 1, 8, 4);
    const Tokens b = random_tokens(rng, 1, 8, 4);
    const Tokens c = random_tokens(rng, 1, 8, 4);
    EXPECT_LE(align_words(a, c).errors(), align_words(a, b).errors() + align_words(b, c).errors());
  }
}

TEST(UtteranceWer, ExampleIdenticalReferences) {
  const ReferencePair refs{kRef, kRef};
  const auto w = utterance_wer(refs, T({"HOW", "DO", "YOU", "FEEL", "EXERCISE"}));
  EXPECT_DOUBLE_EQ(w.wer, 0.2);
  EXPECT_EQ(w.n_star, 5u);
  EXPECT_EQ(w.chosen_j, 1);
}

TEST(UtteranceWer, ExactMatchOnFirstVariant) {
  const ReferencePair refs{T({"UM", "HI"}), T({"HI"})};
  const auto w = utterance_wer(refs, T({"UM", "HI"}));
  EXPECT_EQ(w.wer, 0.0);
  EXPECT_EQ(w.chosen_j, 0);
  EXPECT_EQ(w.n_star, 2u);
}

TEST(UtteranceWer, CapClampsRateButKeepsNStar) {
  const ReferencePair refs{T({"A"}), T({"A"})};
  const auto w = utterance_wer(refs, T({"A", "B", "C", "D"}));
  EXPECT_EQ(w.wer, 1.0);
  EXPECT_EQ(w.n_star, 1u);
  EXPECT_DOUBLE_EQ(w.per_reference[1]->rate(), 3.0);
}

TEST(UtteranceWer, TieGoesToSecondVariant) {
  // Against [UM, HI]: 2 errors / 2; against [HI]: 1 error / 1. Both 100%.
  const ReferencePair refs{T({"UM", "HI"}), T({"HI"})};
  const auto w = utterance_wer(refs, T({"NO"}));
  EXPECT_EQ(w.chosen_j, 1);
  EXPECT_EQ(w.n_star, 1u);
}

TEST(UtteranceWer, EmptyVariantIsNotScored) {
  const ReferencePair refs{T({"UM"}), {}};
  const auto w = utterance_wer(refs, T({"UM"}));
  EXPECT_EQ(w.chosen_j, 0);
  EXPECT_FALSE(w.per_reference[1].has_value());
  try {
    utterance_wer(ReferencePair{}, T({"UM"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBothReferencesEmpty);
  }
}

TEST(UtteranceWerProperty, NotAboveEitherReferenceNorOne) {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 1000; ++iter) {
    const ReferencePair refs{random_tokens(rng, 1, 7, 4), random_tokens(rng, 1, 5, 4)};
    const auto w = utterance_wer(refs, random_tokens(rng, 0, 9, 4));
    EXPECT_LE(w.wer, 1.0);
    for (const auto& c : w.per_reference) EXPECT_LE(w.wer, c->rate());
    EXPECT_EQ(w.n_star, refs.variant(w.chosen_j).size());
  }
}

UtteranceWer item(double wer, std::size_t n) {
  UtteranceWer w;
  w.wer = wer;
  w.n_star = n;
  return w;
}

TEST(CorpusWer, Examples) {
  const std::vector<UtteranceWer> a = {item(0.2, 5), item(0.4, 5)};
  EXPECT_NEAR(corpus_wer(a).wer, 0.30, 1e-15);
  const std::vector<UtteranceWer> b = {item(0.0, 99), item(1.0, 1)};
  EXPECT_NEAR(corpus_wer(b).wer, 0.01, 1e-15);
  EXPECT_EQ(corpus_wer(b).total_n_star, 100u);
  const std::vector<UtteranceWer> c = {item(0.37, 8)};
  EXPECT_EQ(corpus_wer(c).wer, 0.37);
}

TEST(CorpusWer, Errors) {
  try {
    corpus_wer({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyBatch);
  }
  const std::vector<UtteranceWer> zero = {item(0.0, 0)};
  EXPECT_THROW(corpus_wer(zero), Error);
}

TEST(CorpusWerProperty, PermutationInvariantBitForBit) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<UtteranceWer> items;
  for (int i = 0; i < 300; ++i) items.push_back(item(u(rng), 1 + rng() % 30));
  const double base = corpus_wer(items).wer;
  for (int k = 0; k < 20; ++k) {
    std::shuffle(items.begin(), items.end(), rng);
    EXPECT_EQ(corpus_wer(items).wer, base);
  }
}

TEST(CorpusWerProperty, UncappedEqualsPooledCounts) {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<UtteranceWer> items;
    std::size_t errors = 0, words = 0;
    while (items.size() < 20) {
      const ReferencePair refs{random_tokens(rng, 3, 8, 3), random_tokens(rng, 3, 8, 3)};
      Tokens hyp = refs.without_disfluencies;
      if (rng() % 2) hyp[rng() % hyp.size()] = "Z";
      const auto w = utterance_wer(refs, hyp);
      if (w.per_reference[w.chosen_j]->rate() >= 1.0) continue;
      errors += w.per_reference[w.chosen_j]->errors();
      words += w.n_star;
      items.push_back(w);
    }
    EXPECT_NEAR(corpus_wer(items).wer, static_cast<double>(errors) / static_cast<double>(words),
                1e-12);
  }
}

TEST(CorpusWerProperty, AddingTheMeanLeavesItUnchanged) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<UtteranceWer> items;
    for (int i = 0; i < 10; ++i) items.push_back(item(u(rng), 1 + rng() % 9));
    const double before = corpus_wer(items).wer;
    items.push_back(item(before, 1 + rng() % 9));
    EXPECT_NEAR(corpus_wer(items).wer, before, 1e-12);
  }
}

}  // namespace
}  // namespace sapeval
