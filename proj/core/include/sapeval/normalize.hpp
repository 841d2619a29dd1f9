// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_NORMALIZE_HPP_
#define SAPEVAL_NORMALIZE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "sapeval/text.hpp"

namespace sapeval {

struct NormalizeOptions {
  // Spell out digits and split capitalised abbreviations into letters.
  bool verbalize = true;
  // Annotator symbols for unintelligible words, matched case-insensitively.
  std::vector<std::string> unknown_symbols = {"xxx", "<unk>", "???"};
};

// The two normalized references of one utterance. Index 0 keeps
// parenthesized disfluencies and reparanda, index 1 drops them.
struct ReferencePair {
  Tokens with_disfluencies;
  Tokens without_disfluencies;

  const Tokens& variant(int j) const {
    return j == 0 ? with_disfluencies : without_disfluencies;
  }
  bool identical() const { return with_disfluencies == without_disfluencies; }
  bool empty() const {
    return with_disfluencies.empty() && without_disfluencies.empty();
  }

  friend bool operator==(const ReferencePair&, const ReferencePair&) = default;
};

// Normalizes an annotated transcript into its dual references.
//
// Markup understood:
//   [comment]     removed together with its content
//   {g:word}      annotator guess, replaced by the bare word
//   (um) (went)   disfluency or reparandum; kept in variant 0 without the
//                 parentheses, deleted from variant 1. Nested parentheses
//                 belong to the outermost span.
// Square brackets and parentheses also act as word boundaries; guess braces
// do not.
//
// Throws Error(kUnbalancedMarkup) with the byte offset of the offending
// character, or Error(kEmptyResult) when both variants come out empty.
ReferencePair normalize(std::string_view raw,
                        const NormalizeOptions& options = {});

// Hypotheses carry no markup; only punctuation removal, uppercasing and
// tokenization apply. May return an empty list.
Tokens normalize_hypothesis(std::string_view text);

// Spells out 0..999999 in lowercase English words separated by spaces.
std::string spell_cardinal(long value);

}  // namespace sapeval

#endif  // SAPEVAL_NORMALIZE_HPP_
