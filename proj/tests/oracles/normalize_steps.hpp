// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

// Rule-by-rule reference normalizer built from regular expressions. It only
// understands lowercase ASCII input without digits and with at most one
// level of parentheses, which is what the generator in the tests produces.

#ifndef SAPEVAL_TESTS_ORACLES_NORMALIZE_STEPS_HPP_
#define SAPEVAL_TESTS_ORACLES_NORMALIZE_STEPS_HPP_

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

inline std::vector<std::string> finish(std::string text) {
  text = std::regex_replace(text, std::regex(R"((^|\s)xxx(?=\s|$))"), "$1UNK");
  // Punctuation other than apostrophes and hyphens vanishes; hyphens split.
  text = std::regex_replace(text, std::regex("-"), " ");
  text = std::regex_replace(text, std::regex("[^a-zA-Z0-9' ]"), "");
  std::vector<std::string> out;
  std::istringstream words(text);
  std::string w;
  while (words >> w) {
    const auto first = w.find_first_not_of('\'');
    if (first == std::string::npos) continue;
    w = w.substr(first, w.find_last_not_of('\'') - first + 1);
    std::transform(w.begin(), w.end(), w.begin(), [](unsigned char c) {
      return static_cast<char>(std::toupper(c));
    });
    out.push_back(w);
  }
  return out;
}

struct StepPair {
  std::vector<std::string> with_disfluencies;
  std::vector<std::string> without_disfluencies;
};

inline StepPair normalize_steps(const std::string& raw) {
  std::string text = std::regex_replace(raw, std::regex(R"(\[[^\]]*\])"), " ");
  text = std::regex_replace(text, std::regex(R"(\{g:([^}]*)\})"), "$1");
  const std::string j0 = std::regex_replace(text, std::regex(R"([()])"), " ");
  const std::string j1 = std::regex_replace(text, std::regex(R"(\([^()]*\))"), " ");
  return {finish(j0), finish(j1)};
}

}  // namespace oracle

#endif  // SAPEVAL_TESTS_ORACLES_NORMALIZE_STEPS_HPP_
