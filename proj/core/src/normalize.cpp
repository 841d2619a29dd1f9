// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "sapeval/normalize.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "sapeval/error.hpp"

namespace sapeval {
namespace {

constexpr const char* kOnes[] = {
    "zero",    "one",     "two",       "three",    "four",
    "five",    "six",     "seven",     "eight",    "nine",
    "ten",     "eleven",  "twelve",    "thirteen", "fourteen",
    "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};
constexpr const char* kTens[] = {"",      "",      "twenty",  "thirty",
                                 "forty", "fifty", "sixty",   "seventy",
                                 "eighty", "ninety"};

constexpr long kMaxCardinal = 999999;

void append_word(std::string& out, std::string_view word) {
  if (!out.empty()) out.push_back(' ');
  out += word;
}

void spell_below_thousand(long n, std::string& out) {
  if (n >= 100) {
    append_word(out, kOnes[n / 100]);
    append_word(out, "hundred");
    n %= 100;
    if (n == 0) return;
  }
  if (n >= 20) {
    append_word(out, kTens[n / 10]);
    if (n % 10 != 0) append_word(out, kOnes[n % 10]);
  } else {
    append_word(out, kOnes[n]);
  }
}

std::string spell_digits(std::string_view digits) {
  std::string out;
  for (char c : digits) append_word(out, kOnes[c - '0']);
  return out;
}

std::string to_ordinal(std::string cardinal) {
  const auto cut = cardinal.rfind(' ');
  const std::size_t start = cut == std::string::npos ? 0 : cut + 1;
  const std::string last = cardinal.substr(start);
  static const std::pair<const char*, const char*> kIrregular[] = {
      {"one", "first"}, {"two", "second"}, {"three", "third"},
      {"five", "fifth"}, {"eight", "eighth"}, {"nine", "ninth"},
      {"twelve", "twelfth"}};
  std::string ordinal;
  for (const auto& [base, irregular] : kIrregular) {
    if (last == base) ordinal = irregular;
  }
  if (ordinal.empty()) {
    ordinal = last.back() == 'y' ? last.substr(0, last.size() - 1) + "ieth"
                                 : last + "th";
  }
  return cardinal.substr(0, start) + ordinal;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return to_lower_ascii(x) == to_lower_ascii(y);
         });
}

// Number spelling inside one word: plain and comma-grouped integers,
// decimals, ordinal suffixes and a trailing percent sign.
std::string verbalize_numbers(std::string_view word) {
  std::string out;
  std::size_t i = 0;
  while (i < word.size()) {
    if (!is_ascii_digit(word[i])) {
      out.push_back(word[i++]);
      continue;
    }
    std::string integer;
    std::size_t j = i;
    while (j < word.size() && is_ascii_digit(word[j])) integer.push_back(word[j++]);
    if (integer.size() <= 3) {
      while (j + 3 < word.size() && word[j] == ',' &&
             is_ascii_digit(word[j + 1]) && is_ascii_digit(word[j + 2]) &&
             is_ascii_digit(word[j + 3]) &&
             (j + 4 >= word.size() || !is_ascii_digit(word[j + 4]))) {
        integer.append(word.substr(j + 1, 3));
        j += 4;
      }
    }
    std::string fraction;
    if (j + 1 < word.size() && word[j] == '.' && is_ascii_digit(word[j + 1])) {
      ++j;
      while (j < word.size() && is_ascii_digit(word[j])) fraction.push_back(word[j++]);
    }

    std::string spoken;
    const bool leading_zero = integer.size() > 1 && integer[0] == '0';
    if (leading_zero || integer.size() > 6) {
      spoken = spell_digits(integer);
    } else {
      spoken = spell_cardinal(std::stol(integer));
    }
    if (!fraction.empty()) {
      spoken += " point " + spell_digits(fraction);
    } else if (j + 1 < word.size() && !leading_zero) {
      const std::string suffix = to_lower_ascii(word.substr(j, 2));
      const bool ends = j + 2 >= word.size() || !is_ascii_alpha(word[j + 2]);
      if (ends && (suffix == "st" || suffix == "nd" || suffix == "rd" ||
                   suffix == "th")) {
        spoken = to_ordinal(spoken);
        j += 2;
      }
    }
    if (j < word.size() && word[j] == '%') {
      spoken += " percent";
      ++j;
    }
    out += ' ';
    out += spoken;
    out += ' ';
    i = j;
  }
  return out;
}

// Capitalised abbreviations ("FBI", "U.S.") become spaced letters.
bool split_abbreviation(std::string_view word, std::string& out) {
  std::string core;
  for (char c : word) {
    if (c != '.') core.push_back(c);
  }
  const auto first = std::find_if(core.begin(), core.end(), is_ascii_alpha);
  const auto last = std::find_if(core.rbegin(), core.rend(), is_ascii_alpha);
  if (first == core.end()) return false;
  const std::string_view inner(&*first, static_cast<std::size_t>(last.base() - first));
  for (auto it = core.begin(); it != first; ++it) {
    if (is_ascii_digit(*it)) return false;
  }
  for (auto it = last.base(); it != core.end(); ++it) {
    if (is_ascii_digit(*it) || *it == '\'') return false;
  }
  if (inner.size() < 2 || inner == "UNK") return false;
  if (!std::all_of(inner.begin(), inner.end(),
                   [](char c) { return c >= 'A' && c <= 'Z'; })) {
    return false;
  }
  out.clear();
  for (char c : inner) append_word(out, std::string_view(&c, 1));
  return true;
}

class Verbalizer {
 public:
  Verbalizer(const NormalizeOptions& options, bool split_abbreviations)
      : options_(options), split_abbreviations_(split_abbreviations) {
    for (const auto& symbol : options.unknown_symbols) {
      symbols_.push_back(to_lower_ascii(symbol));
      const Tokens cleaned = clean_tokens(symbol);
      cleaned_symbols_.push_back(cleaned.size() == 1 ? cleaned[0] : "");
    }
  }

  Tokens run(std::string_view ascii) const {
    std::string staged;
    std::size_t i = 0;
    while (i < ascii.size()) {
      while (i < ascii.size() && is_word_break(ascii[i])) ++i;
      const std::size_t start = i;
      while (i < ascii.size() && !is_word_break(ascii[i])) ++i;
      if (i == start) break;
      staged += ' ';
      staged += rewrite(ascii.substr(start, i - start));
    }
    return clean_tokens(staged);
  }

 private:
  std::string rewrite(std::string_view word) const {
    if (is_unknown(word)) return "UNK";
    if (!options_.verbalize) return std::string(word);
    std::string spaced;
    if (split_abbreviations_ && split_abbreviation(word, spaced)) return spaced;
    return verbalize_numbers(word);
  }

  bool is_unknown(std::string_view word) const {
    const Tokens cleaned = clean_tokens(word);
    for (std::size_t k = 0; k < symbols_.size(); ++k) {
      if (iequals(word, symbols_[k])) return true;
      if (!cleaned_symbols_[k].empty() && cleaned.size() == 1 &&
          cleaned[0] == cleaned_symbols_[k]) {
        return true;
      }
    }
    return false;
  }

  const NormalizeOptions& options_;
  bool split_abbreviations_;
  std::vector<std::string> symbols_;
  std::vector<std::string> cleaned_symbols_;
};

struct Frame {
  char opener;
  std::size_t position;
};

char closer_for(char opener) {
  switch (opener) {
    case '[': return ']';
    case '(': return ')';
    default: return '}';
  }
}

// Markup pass over the raw bytes. Fills the kept text of both variants.
void strip_markup(std::string_view raw, std::string& with_disfluencies,
                  std::string& without_disfluencies) {
  std::vector<Frame> stack;
  int bracket_depth = 0;
  int paren_depth = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    switch (c) {
      case '[':
      case '(':
      case '{':
        stack.push_back({c, i});
        if (c == '[') ++bracket_depth;
        if (c == '(') ++paren_depth;
        if (c == '{') {
          if (i + 2 < raw.size() && to_lower_ascii(raw[i + 1]) == 'g' &&
              raw[i + 2] == ':') {
            i += 2;
          }
        } else {
          with_disfluencies.push_back(' ');
          without_disfluencies.push_back(' ');
        }
        continue;
      case ']':
      case ')':
      case '}': {
        if (stack.empty() || closer_for(stack.back().opener) != c) {
          throw Error(ErrorCode::kUnbalancedMarkup,
                      std::string("unbalanced markup: unexpected '") + c +
                          "' at offset " + std::to_string(i),
                      i);
        }
        const char opener = stack.back().opener;
        stack.pop_back();
        if (opener == '[') --bracket_depth;
        if (opener == '(') --paren_depth;
        if (opener != '{') {
          with_disfluencies.push_back(' ');
          without_disfluencies.push_back(' ');
        }
        continue;
      }
      default:
        break;
    }
    if (bracket_depth > 0) continue;
    with_disfluencies.push_back(c);
    if (paren_depth == 0) without_disfluencies.push_back(c);
  }
  if (!stack.empty()) {
    const Frame& open = stack.back();
    throw Error(ErrorCode::kUnbalancedMarkup,
                std::string("unbalanced markup: '") + open.opener +
                    "' at offset " + std::to_string(open.position) +
                    " is never closed",
                open.position);
  }
}

}  // namespace

std::string spell_cardinal(long value) {
  if (value < 0 || value > kMaxCardinal) {
    throw Error(ErrorCode::kInvalidArgument,
                "spell_cardinal supports 0..999999, got " + std::to_string(value));
  }
  std::string out;
  if (value >= 1000) {
    spell_below_thousand(value / 1000, out);
    append_word(out, "thousand");
    value %= 1000;
    if (value == 0) return out;
  }
  spell_below_thousand(value, out);
  return out;
}

ReferencePair normalize(std::string_view raw, const NormalizeOptions& options) {
  std::string kept0;
  std::string kept1;
  strip_markup(raw, kept0, kept1);

  const std::string ascii0 = fold_to_ascii(kept0);
  const std::string ascii1 = fold_to_ascii(kept1);
  // Already-uppercase text has no case signal, so abbreviation splitting
  // only applies to mixed-case transcripts.
  const bool mixed_case = std::any_of(ascii0.begin(), ascii0.end(), [](char c) {
    return c >= 'a' && c <= 'z';
  });
  const Verbalizer verbalizer(options, options.verbalize && mixed_case);

  ReferencePair pair{verbalizer.run(ascii0), verbalizer.run(ascii1)};
  if (pair.empty()) {
    throw Error(ErrorCode::kEmptyResult, "transcript normalizes to no tokens");
  }
  return pair;
}

Tokens normalize_hypothesis(std::string_view text) {
  return clean_tokens(fold_to_ascii(text));
}

}  // namespace sapeval
