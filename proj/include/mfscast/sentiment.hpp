#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>

#include "mfscast/exec.hpp"
#include "mfscast/record.hpp"

namespace mfs {

enum class Polarity { positive, negative, neutral };

// token -> score mapping; tokens are lowercase, unknown tokens score zero.
class Lexicon {
public:
    // Tab-separated "token<TAB>score" lines, '#' comments ignored. Duplicate
    // tokens: last wins (counted). Unparseable score is fatal (line number in
    // the message).
    static Lexicon load(const std::string& path);
    static Lexicon from_text(const std::string& text, const std::string& origin = "<memory>");

    double score_of(const std::string& token) const {
        auto it = scores_.find(token);
        return it == scores_.end() ? 0.0 : it->second;
    }
    std::size_t size() const { return scores_.size(); }
    std::uint64_t duplicate_tokens() const { return duplicates_; }

private:
    std::unordered_map<std::string, double> scores_;
    std::uint64_t duplicates_ = 0;
};

// Sum of per-token lexicon scores; each word evaluated independently.
double score_tweet(const std::string& text, const Lexicon& lexicon);

// Sign of the score; exactly zero is neutral.
Polarity classify_polarity(double score);

const char* polarity_name(Polarity p);

// Fills record.sentiment_score for every record.
void score_records(std::span<TweetRecord> records, const Lexicon& lexicon,
                   ExecMode mode = ExecMode::parallel);

struct PartyCounts {
    PartyId party;
    std::uint64_t total = 0;
    std::uint64_t positive = 0;
    std::uint64_t negative = 0;
    std::uint64_t neutral = 0;

    double pct_positive() const { return total ? 100.0 * positive / total : 0.0; }
    double pct_negative() const { return total ? 100.0 * negative / total : 0.0; }
    double pct_neutral() const { return total ? 100.0 * neutral / total : 0.0; }
};

// Polarity tally over scored records carrying the given party tag. Records
// must already be scored.
PartyCounts party_counts(std::span<const TweetRecord> records, const PartyId& party);

}  // namespace mfs
