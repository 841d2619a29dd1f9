// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#include "sapeval/text.hpp"

#include <cstdint>

namespace sapeval {
namespace {

// Replacement for U+00C0..U+00FF. Empty entries delete the code point.
constexpr const char* kLatin1Fold[64] = {
    "A", "A", "A", "A", "A", "A", "AE", "C",   // C0-C7
    "E", "E", "E", "E", "I", "I", "I",  "I",   // C8-CF
    "D", "N", "O", "O", "O", "O", "O",  "",    // D0-D7 (D7 is x sign)
    "O", "U", "U", "U", "U", "Y", "",   "ss",  // D8-DF
    "a", "a", "a", "a", "a", "a", "ae", "c",   // E0-E7
    "e", "e", "e", "e", "i", "i", "i",  "i",   // E8-EF
    "d", "n", "o", "o", "o", "o", "o",  "",    // F0-F7 (F7 is division sign)
    "o", "u", "u", "u", "u", "y", "",   "y",   // F8-FF
};

// Decodes one UTF-8 sequence starting at s[i]; returns the code point and
// advances i. Invalid sequences yield 0xFFFD and consume one byte.
std::uint32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto lead = static_cast<unsigned char>(s[i]);
  int extra = 0;
  std::uint32_t cp = 0;
  if (lead < 0x80) {
    ++i;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + extra >= s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k <= extra; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += extra + 1;
  return cp;
}

}  // namespace

std::string fold_to_ascii(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  while (i < utf8.size()) {
    const std::uint32_t cp = decode_utf8(utf8, i);
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp >= 0xC0 && cp <= 0xFF) {
      out += kLatin1Fold[cp - 0xC0];
    } else if (cp == 0x2018 || cp == 0x2019 || cp == 0x02BC) {
      out.push_back('\'');
    } else if (cp == 0x2010 || cp == 0x2011 || cp == 0x2013 || cp == 0x2014) {
      out.push_back('-');
    } else if (cp == 0x00A0 || cp == 0x2009 || cp == 0x202F) {
      out.push_back(' ');
    }
  }
  return out;
}

Tokens split_whitespace(std::string_view text) {
  Tokens tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_ascii_space(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::string join(const Tokens& tokens, char separator) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(separator);
    out += tokens[i];
  }
  return out;
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = to_lower_ascii(c);
  return out;
}

Tokens clean_tokens(std::string_view ascii) {
  Tokens tokens;
  std::string word;
  auto flush = [&] {
    // Apostrophes survive only between two word characters.
    std::string kept;
    for (std::size_t k = 0; k < word.size(); ++k) {
      const char c = word[k];
      if (c != '\'') {
        kept.push_back(c);
        continue;
      }
      const bool inner = !kept.empty() && kept.back() != '\'' &&
                         word.find_first_not_of('\'', k) != std::string::npos;
      if (inner) kept.push_back(c);
    }
    while (!kept.empty() && kept.back() == '\'') kept.pop_back();
    if (!kept.empty()) tokens.push_back(std::move(kept));
    word.clear();
  };
  for (char c : ascii) {
    if (is_word_break(c)) {
      flush();
    } else if (is_ascii_alpha(c) || is_ascii_digit(c)) {
      word.push_back(to_upper_ascii(c));
    } else if (c == '\'') {
      word.push_back(c);
    }
  }
  flush();
  return tokens;
}

}  // namespace sapeval
