#include "mfscast/keywords.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mfscast/errors.hpp"
#include "mfscast/text.hpp"

namespace mfs {

namespace {

PatternKind parse_kind(const std::string& s) {
    if (s == "hashtag") return PatternKind::hashtag;
    if (s == "mention") return PatternKind::mention;
    if (s == "phrase") return PatternKind::phrase;
    if (s == "word") return PatternKind::word;
    throw ConfigError("unknown keyword pattern kind: " + s);
}

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

const char* pattern_kind_name(PatternKind k) {
    switch (k) {
        case PatternKind::hashtag: return "hashtag";
        case PatternKind::mention: return "mention";
        case PatternKind::phrase: return "phrase";
        case PatternKind::word: return "word";
    }
    return "?";
}

KeywordTable KeywordTable::from_json_text(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("keyword table is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("keyword table must be a JSON object (party -> patterns)");

    KeywordTable table;
    for (auto it = j.begin(); it != j.end(); ++it) {
        Entry entry;
        entry.party = it.key();
        if (!it.value().is_array() || it.value().empty())
            throw ConfigError("party '" + entry.party + "' must map to a non-empty pattern array");
        for (const auto& p : it.value()) {
            KeywordPattern pat;
            pat.kind = parse_kind(p.at("kind").get<std::string>());
            std::string v = trimmed(p.at("value").get<std::string>());
            if (v.empty())
                throw ConfigError("party '" + entry.party + "' has an empty pattern value");
            v = to_lower_ascii(v);
            // normalize: hashtag/mention values carry their prefix
            if (pat.kind == PatternKind::hashtag && v[0] != '#') v = "#" + v;
            if (pat.kind == PatternKind::mention && v[0] != '@') v = "@" + v;
            pat.value = std::move(v);
            entry.patterns.push_back(std::move(pat));
        }
        table.entries_.push_back(std::move(entry));
    }
    std::sort(table.entries_.begin(), table.entries_.end(),
              [](const Entry& a, const Entry& b) { return a.party < b.party; });
    return table;
}

KeywordTable KeywordTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open keyword table: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::vector<PartyId> KeywordTable::parties() const {
    std::vector<PartyId> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.party);
    return out;
}

std::set<PartyId> match_party(const std::string& text, const KeywordTable& table) {
    std::set<PartyId> matched;
    if (text.empty()) return matched;

    const std::string lowered = to_lower_ascii(text);
    std::vector<std::string> tokens;  // built lazily, only if a token pattern exists
    bool tokens_built = false;

    for (const auto& entry : table.entries()) {
        for (const auto& pat : entry.patterns) {
            bool hit = false;
            switch (pat.kind) {
                case PatternKind::hashtag:
                case PatternKind::mention: {
                    if (!tokens_built) {
                        tokens = tokenize(lowered);
                        tokens_built = true;
                    }
                    hit = std::find(tokens.begin(), tokens.end(), pat.value) != tokens.end();
                    break;
                }
                case PatternKind::phrase:
                    hit = contains_phrase(lowered, pat.value);
                    break;
                case PatternKind::word:
                    hit = contains_word(lowered, pat.value);
                    break;
            }
            if (hit) {
                matched.insert(entry.party);
                break;  // one matching pattern is enough for this party
            }
        }
    }
    return matched;
}

}  // namespace mfs
