#pragma once

#include <set>
#include <string>
#include <vector>

#include "mfscast/record.hpp"

namespace mfs {

enum class PatternKind { hashtag, mention, phrase, word };

struct KeywordPattern {
    PatternKind kind;
    std::string value;  // stored lowercased, prefix included for hashtag/mention
};

// Party -> patterns. Matching semantics:
//   hashtag/mention: whole-token equality ("#maga2020" does not match "#maga")
//   phrase:          contiguous case-insensitive substring
//   word:            whole word with \b-style boundaries ("Pence" != "Spence")
class KeywordTable {
public:
    struct Entry {
        PartyId party;
        std::vector<KeywordPattern> patterns;
    };

    static KeywordTable load(const std::string& path);
    static KeywordTable from_json_text(const std::string& json_text);

    const std::vector<Entry>& entries() const { return entries_; }
    std::vector<PartyId> parties() const;

private:
    std::vector<Entry> entries_;  // sorted by party name
};

std::set<PartyId> match_party(const std::string& text, const KeywordTable& table);

const char* pattern_kind_name(PatternKind k);

}  // namespace mfs
