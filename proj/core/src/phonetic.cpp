// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "sapeval/phonetic.hpp"

#include <algorithm>
#include <vector>

#include "sapeval/error.hpp"
#include "sapeval/text.hpp"

namespace sapeval {
namespace {

// Digit class per letter; '0' for vowels (A E I O U Y), '-' for H and W,
// which are transparent when collapsing repeated classes.
constexpr char kClass[26] = {
    '0', '1', '2', '3', '0', '1', '2', '-', '0', '2', '2', '4', '5',
    //A   B    C    D    E    F    G    H    I    J    K    L    M
    '5', '0', '1', '2', '6', '2', '3', '0', '1', '-', '2', '0', '2',
    //N   O    P    Q    R    S    T    U    V    W    X    Y    Z
};

}  // namespace

SoundexCode soundex(std::string_view word) {
  std::string letters;
  for (char c : word) {
    if (is_ascii_alpha(c)) letters.push_back(to_upper_ascii(c));
  }
  if (letters.empty()) return SoundexCode::sentinel();

  std::array<char, 3> digits{'0', '0', '0'};
  std::size_t filled = 0;
  char previous = kClass[letters[0] - 'A'];
  for (std::size_t i = 1; i < letters.size() && filled < digits.size(); ++i) {
    const char cls = kClass[letters[i] - 'A'];
    if (cls == '-') continue;
    if (cls != '0' && cls != previous) digits[filled++] = cls;
    previous = cls;
  }
  return {letters[0], digits};
}

double jaro(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  const std::size_t longest = std::max(a.size(), b.size());
  const std::size_t window = longest / 2 > 0 ? longest / 2 - 1 : 0;

  std::vector<bool> a_matched(a.size(), false);
  std::vector<bool> b_matched(b.size(), false);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t lo = i > window ? i - window : 0;
    const std::size_t hi = std::min(b.size(), i + window + 1);
    for (std::size_t k = lo; k < hi; ++k) {
      if (b_matched[k] || a[i] != b[k]) continue;
      a_matched[i] = true;
      b_matched[k] = true;
      ++matches;
      break;
    }
  }
  if (matches == 0) return 0.0;

  std::size_t half_transpositions = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a_matched[i]) continue;
    while (!b_matched[k]) ++k;
    if (a[i] != b[k]) ++half_transpositions;
    ++k;
  }
  const double m = static_cast<double>(matches);
  const double t = static_cast<double>(half_transpositions) / 2.0;
  return (m / static_cast<double>(a.size()) + m / static_cast<double>(b.size()) +
          (m - t) / m) /
         3.0;
}

double jaro_winkler(std::string_view a, std::string_view b) {
  const double j = jaro(a, b);
  std::size_t prefix = 0;
  const std::size_t limit = std::min<std::size_t>({4, a.size(), b.size()});
  while (prefix < limit && a[prefix] == b[prefix]) ++prefix;
  return j + static_cast<double>(prefix) * 0.1 * (1.0 - j);
}

std::string encode_soundex(std::span<const std::string> tokens) {
  std::vector<std::string> codes;
  std::vector<std::string> sentinels;
  for (const auto& token : tokens) {
    const SoundexCode code = soundex(token);
    (code.non_alphabetic() ? sentinels : codes).push_back(code.str());
  }
  return join(codes.empty() ? sentinels : codes);
}

double score_soundex(std::span<const std::string> ref,
                     std::span<const std::string> hyp) {
  if (ref.empty()) {
    throw Error(ErrorCode::kEmptyReference, "reference has no words");
  }
  return jaro_winkler(encode_soundex(ref), encode_soundex(hyp));
}

}  // namespace sapeval
