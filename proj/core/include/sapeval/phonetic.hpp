// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_PHONETIC_HPP_
#define SAPEVAL_PHONETIC_HPP_

#include <array>
#include <span>
#include <string>
#include <string_view>

namespace sapeval {

// Four-character American Soundex code: a letter followed by three digits.
class SoundexCode {
 public:
  SoundexCode(char letter, std::array<char, 3> digits, bool non_alphabetic = false)
      : chars_{letter, digits[0], digits[1], digits[2]},
        non_alphabetic_(non_alphabetic) {}

  // "Z000", flagged as standing in for a word with no letters.
  static SoundexCode sentinel() { return {'Z', {'0', '0', '0'}, true}; }

  std::string_view view() const { return {chars_.data(), chars_.size()}; }
  std::string str() const { return std::string(view()); }
  bool non_alphabetic() const { return non_alphabetic_; }

  friend bool operator==(const SoundexCode& a, const SoundexCode& b) {
    return a.chars_ == b.chars_ && a.non_alphabetic_ == b.non_alphabetic_;
  }

 private:
  std::array<char, 4> chars_;
  bool non_alphabetic_;
};

// Case-insensitive; characters other than ASCII letters are ignored. A word
// without letters yields SoundexCode::sentinel().
SoundexCode soundex(std::string_view word);

// Jaro-Winkler similarity with prefix scale 0.1 and a prefix of at most four
// characters. Two empty strings compare equal (1.0).
double jaro_winkler(std::string_view a, std::string_view b);
double jaro(std::string_view a, std::string_view b);

// Phonetic similarity of two token sequences: each side is encoded token by
// token, the codes are joined with spaces, and the encoded strings are
// compared with jaro_winkler. Tokens without letters are skipped unless
// that leaves nothing, in which case they contribute sentinel codes.
// Throws Error(kEmptyReference).
double score_soundex(std::span<const std::string> ref,
                     std::span<const std::string> hyp);

// The joined code string used by score_soundex.
std::string encode_soundex(std::span<const std::string> tokens);

}  // namespace sapeval

#endif  // SAPEVAL_PHONETIC_HPP_
