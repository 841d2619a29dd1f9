// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "oracles/soundex.hpp"
#include "sapeval/error.hpp"
#include "sapeval/phonetic.hpp"
#include "sapeval/text.hpp"

namespace sapeval {
namespace {

Tokens T(std::initializer_list<const char*> words) { return Tokens(words.begin(), words.end()); }

std::string random_word(std::mt19937_64& rng, std::size_t max_len) {
  const std::size_t n = 1 + rng() % max_len;
  std::string w;
  for (std::size_t i = 0; i < n; ++i) w += static_cast<char>('A' + rng() % 26);
  return w;
}

TEST(OracleSelfCheck, HandTracedSoundex) {
  // R=R, O vowel, B=1, E vowel, R=6, T=3.
  EXPECT_EQ(oracle::soundex("ROBERT"), "R163");
  // A, S=2, H transparent, C=2 merges with S, R=6, A, F=1 -> A261.
  EXPECT_EQ(oracle::soundex("ASHCRAFT"), "A261");
  EXPECT_EQ(oracle::soundex("A"), "A000");
  EXPECT_NEAR(oracle::jaro_winkler("MARTHA", "MARHTA"), 0.9611, 1e-4);
}

TEST(Soundex, Examples) {
  EXPECT_EQ(soundex("ROBERT").str(), "R163");
  EXPECT_EQ(soundex("RUPERT").str(), "R163");
  EXPECT_EQ(soundex("ASHCRAFT").str(), "A261");
  EXPECT_EQ(soundex("ASHCROFT").str(), "A261");
  EXPECT_EQ(soundex("TYMCZAK").str(), "T522");
  EXPECT_EQ(soundex("PFISTER").str(), "P236");
  EXPECT_EQ(soundex("HONEYMAN").str(), "H555");
  EXPECT_EQ(soundex("A").str(), "A000");
  EXPECT_EQ(soundex("spell").str(), "S140");
  EXPECT_EQ(soundex("FEEL").str(), "F400");
}

TEST(Soundex, IgnoresCaseAndNonLetters) {
  EXPECT_EQ(soundex("o'brien"), soundex("OBRIEN"));
  EXPECT_EQ(soundex("r2d2").str(), "R300");
}

TEST(Soundex, NonAlphabeticWordGetsSentinel) {
  const auto c = soundex("123");
  EXPECT_EQ(c.str(), "Z000");
  EXPECT_TRUE(c.non_alphabetic());
  EXPECT_FALSE(soundex("ZOO").non_alphabetic());
}

TEST(SoundexProperty, AgreesWithTableOracle) {
  std::mt19937_64 rng(8);
  for (int iter = 0; iter < 20000; ++iter) {
    const std::string w = random_word(rng, 10);
    const auto code = soundex(w);
    ASSERT_EQ(code.str(), oracle::soundex(w)) << w;
    const auto v = code.view();
    EXPECT_TRUE(v[0] >= 'A' && v[0] <= 'Z');
    for (int k = 1; k < 4; ++k) EXPECT_TRUE(v[k] >= '0' && v[k] <= '6');
  }
}

TEST(JaroWinkler, Examples) {
  EXPECT_NEAR(jaro_winkler("MARTHA", "MARHTA"), 0.9611, 1e-4);
  EXPECT_NEAR(jaro("MARTHA", "MARHTA"), 0.9444, 1e-4);
  EXPECT_NEAR(jaro_winkler("DWAYNE", "DUANE"), 0.84, 1e-2);
  EXPECT_NEAR(jaro_winkler("DIXON", "DICKSONX"), 0.8133, 1e-4);
  EXPECT_EQ(jaro_winkler("ABC", "ABC"), 1.0);
  EXPECT_EQ(jaro_winkler("", "ABC"), 0.0);
  EXPECT_EQ(jaro_winkler("", ""), 1.0);
  EXPECT_EQ(jaro_winkler("ABC", "XYZ"), 0.0);
}

TEST(JaroWinklerProperty, AgreesWithOracleAndIsSymmetric) {
  std::mt19937_64 rng(21);
  for (int iter = 0; iter < 20000; ++iter) {
    std::string a = random_word(rng, 12), b = random_word(rng, 12);
    for (auto& c : a) c = static_cast<char>('A' + (c - 'A') % 5);
    for (auto& c : b) c = static_cast<char>('A' + (c - 'A') % 5);
    const double ab = jaro_winkler(a, b);
    ASSERT_NEAR(ab, oracle::jaro_winkler(a, b), 1e-12) << a << " " << b;
    EXPECT_EQ(ab, jaro_winkler(b, a));
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
    EXPECT_EQ(jaro_winkler(a, a), 1.0);
  }
}

TEST(ScoreSoundex, Examples) {
  const Tokens ref = T({"HOW", "DO", "YOU", "SPELL", "EXERCISE"});
  EXPECT_EQ(score_soundex(ref, ref), 1.0);
  EXPECT_DOUBLE_EQ(score_soundex(T({"SPELL"}), T({"FEEL"})),
                   oracle::jaro_winkler("S140", "F400"));
  EXPECT_EQ(score_soundex(T({"HOW", "DO"}), {}), 0.0);
  EXPECT_EQ(encode_soundex(T({"HOW", "DO"})), "H000 D000");
}

TEST(ScoreSoundex, NonAlphabeticTokensAreSkipped) {
  EXPECT_EQ(encode_soundex(T({"HI", "42", "YOU"})), "H000 Y000");
  EXPECT_EQ(encode_soundex(T({"42", "7"})), "Z000 Z000");
  EXPECT_EQ(score_soundex(T({"HI", "YOU"}), T({"HI", "42", "YOU"})), 1.0);
}

TEST(ScoreSoundex, EmptyReferenceThrows) {
  try {
    score_soundex({}, T({"HI"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyReference);
  }
}

TEST(ScoreSoundexProperty, CaseInsensitiveAndOneIffSameCodes) {
  std::mt19937_64 rng(4);
  for (int iter = 0; iter < 2000; ++iter) {
    Tokens a, b;
    for (std::size_t n = 1 + rng() % 4; n > 0; --n) a.push_back(random_word(rng, 5));
    for (std::size_t n = 1 + rng() % 4; n > 0; --n) b.push_back(random_word(rng, 5));
    Tokens lower = b;
    for (auto& w : lower) {
      for (auto& c : w) c = static_cast<char>(c - 'A' + 'a');
    }
    const double s = score_soundex(a, b);
    EXPECT_EQ(s, score_soundex(a, lower));
    std::vector<std::string> ca, cb;
    for (const auto& w : a) ca.push_back(oracle::soundex(w));
    for (const auto& w : b) cb.push_back(oracle::soundex(w));
    EXPECT_EQ(s == 1.0, ca == cb);
  }
}

}  // namespace
}  // namespace sapeval
