#include "mfscast/text.hpp"

namespace mfs {

namespace {

inline bool is_word_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c >= 0x80;
}

inline char lower(unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

}  // namespace

std::string to_lower_ascii(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) out.push_back(lower(c));
    return out;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (!is_word_char(c) && c != '#' && c != '@') {
            ++i;
            continue;
        }
        std::string tok;
        if (c == '#' || c == '@') {
            // prefix counts only if a word character follows
            if (i + 1 >= n || !is_word_char(static_cast<unsigned char>(text[i + 1]))) {
                ++i;
                continue;
            }
            tok.push_back(static_cast<char>(c));
            ++i;
        }
        while (i < n && is_word_char(static_cast<unsigned char>(text[i]))) {
            tok.push_back(lower(static_cast<unsigned char>(text[i])));
            ++i;
        }
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

bool contains_word(std::string_view text, std::string_view word) {
    if (word.empty()) return false;
    std::size_t pos = 0;
    while ((pos = text.find(word, pos)) != std::string_view::npos) {
        const bool left_ok = pos == 0 || !is_word_char(static_cast<unsigned char>(text[pos - 1]));
        const std::size_t end = pos + word.size();
        const bool right_ok =
            end >= text.size() || !is_word_char(static_cast<unsigned char>(text[end]));
        if (left_ok && right_ok) return true;
        ++pos;
    }
    return false;
}

bool contains_phrase(std::string_view text, std::string_view phrase) {
    if (phrase.empty()) return false;
    return text.find(phrase) != std::string_view::npos;
}

}  // namespace mfs
