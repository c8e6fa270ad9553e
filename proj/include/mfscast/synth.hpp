#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mfscast/dates.hpp"
#include "mfscast/record.hpp"

namespace mfs {

// linear trend over the window: value(t) interpolates start..end across days
struct TrendSpec {
    double start = 0.0;
    double end = 0.0;
    double at(int day, int n_days) const {
        if (n_days <= 1) return start;
        return start + (end - start) * (static_cast<double>(day) / (n_days - 1));
    }
};

struct PartyPlan {
    PartyId name;
    std::string marker;  // token/phrase embedded verbatim so tagging recovers the party
    TrendSpec popularity;  // expected tweets per user per day
    TrendSpec p_positive;
    TrendSpec p_negative;  // p_neutral is the remainder
};

struct CorpusSpec {
    int n_users = 100;
    int n_days = 14;
    Date start_day{};
    double interaction_rate = 0.3;  // probability a tweet addresses someone
    double retweet_exponent = 2.5;  // discrete power law, support {0..cap-1}
    int retweet_cap = 10000;
    std::uint64_t seed = 1;
    std::vector<PartyPlan> parties;
};

CorpusSpec load_corpus_spec(const std::string& path);

// Newline-delimited records in the ingest schema: authors uniform, partners
// by preferential attachment, retweet counts power-law distributed, sentiment
// words drawn from the planted mix. Byte-identical output per seed.
void generate_corpus(const CorpusSpec& spec, std::ostream& out);
void generate_corpus_file(const CorpusSpec& spec, const std::string& path);

// The planted popularity ranking on the final day, descending; parties with
// exactly equal final values share a tie group.
std::vector<std::vector<PartyId>> expected_ordering(const CorpusSpec& spec);

}  // namespace mfs
