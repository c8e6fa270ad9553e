#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mfs {

// Shared tokenization for keyword matching and sentiment scoring: lowercase,
// split on non-word characters, keep a leading '#' or '@' attached to the
// token. Word characters are [a-z0-9_] plus any byte >= 0x80 so multibyte
// UTF-8 sequences never split a token; case folding is ASCII-only.
std::vector<std::string> tokenize(std::string_view text);

std::string to_lower_ascii(std::string_view s);

// Whole-word occurrence test on lowercased text, \b-style boundaries over
// [a-z0-9_]. `word` must already be lowercase.
bool contains_word(std::string_view lowered_text, std::string_view word);

// Contiguous case-insensitive substring test. `phrase` must be lowercase.
bool contains_phrase(std::string_view lowered_text, std::string_view phrase);

}  // namespace mfs
