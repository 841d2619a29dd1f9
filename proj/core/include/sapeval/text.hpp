// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_TEXT_HPP_
#define SAPEVAL_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace sapeval {

using Tokens = std::vector<std::string>;

// Converts UTF-8 text to ASCII. Latin-1 letters lose their diacritics,
// typographic apostrophes become '\'', en/em dashes become '-', and any other
// non-ASCII code point (or invalid byte) is dropped.
std::string fold_to_ascii(std::string_view utf8);

Tokens split_whitespace(std::string_view text);
std::string join(const Tokens& tokens, char separator = ' ');

inline bool is_ascii_alpha(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}
inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
inline bool is_word_break(char c) { return c == '-' || is_ascii_space(c); }
inline char to_upper_ascii(char c) {
  return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
}
inline char to_lower_ascii(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}
std::string to_lower_ascii(std::string_view s);

// Final surface cleanup shared by references and hypotheses: splits on
// whitespace and hyphens, deletes punctuation except apostrophes inside a
// word, uppercases. Input is expected to be ASCII (see fold_to_ascii).
Tokens clean_tokens(std::string_view ascii);

}  // namespace sapeval

#endif  // SAPEVAL_TEXT_HPP_
