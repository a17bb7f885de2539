#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace wildkey {

// UTF-8 <-> codepoint helpers and the character classes used by the
// character-count metrics and the leak scanner. Classification covers
// ASCII plus Latin-1/Latin Extended-A/B letters; everything non-letter,
// non-digit, non-whitespace counts as a special character.

std::string encode_utf8(char32_t cp);
std::string encode_utf8(const std::vector<char32_t>& cps);
std::vector<char32_t> decode_utf8(const std::string& s);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_whitespace(char32_t cp);

char32_t to_lower(char32_t cp);
std::string lowercase(const std::string& word);

// Whitespace-separated tokens of a UTF-8 string.
std::vector<std::string> split_words(const std::string& text);

// Splits a token into (leading punctuation, core, trailing punctuation),
// where core is the maximal run between non-letter/non-digit affixes.
struct TokenParts {
    std::string prefix;
    std::string core;
    std::string suffix;
};
TokenParts strip_affixes(const std::string& token);

}  // namespace wildkey
