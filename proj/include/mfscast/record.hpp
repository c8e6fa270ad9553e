#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfscast/dates.hpp"

namespace mfs {

using UserId = std::int64_t;
using PartyId = std::string;

// One ingested tweet. party_tags is filled by match_party, sentiment_score by
// the sentiment module; both travel with the record through the persisted
// store.
struct TweetRecord {
    std::string tweet_id;
    UserId from_user_id = 0;
    UserId to_user_id = -1;  // -1 = not a direct message
    std::string text;
    std::int64_t retweet_count = 0;
    std::int64_t timestamp = 0;  // epoch seconds, UTC
    std::vector<PartyId> party_tags;  // sorted, unique
    std::optional<double> sentiment_score;

    Date day() const { return date_of_timestamp(timestamp); }
};

// Canonical JSON-line form (round-trips all fields).
std::string record_to_json_line(const TweetRecord& r);

}  // namespace mfs
