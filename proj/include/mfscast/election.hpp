#pragma once

#include <map>
#include <string>

#include "mfscast/record.hpp"
#include "mfscast/sentiment.hpp"

namespace mfs {

// percentage points by party
using VoteShares = std::map<PartyId, double>;

struct ReferenceResults {
    VoteShares actual;
    VoteShares polls;
    // 2020 US presidential two-party results and final polls
    static ReferenceResults us2020();
};

// JSON file {"actual": {party: pp, ...}, "polls": {...}}
ReferenceResults load_reference(const std::string& path);

// Two-party conversion of forecasted scores: the score difference in
// percentage points splits the whole vote evenly around 50/50.
VoteShares vote_share_from_forecasts(const PartyId& party_a, double forecast_a,
                                     const PartyId& party_b, double forecast_b);

// Sentiment-margin baseline: raw_X = (pos X - neg X) / (total A + total B);
// the headline shares are the raw values rescaled to sum to 100.
struct SentimentBaseline {
    VoteShares raw;         // percent, need not sum to 100
    VoteShares normalized;  // percent, sums to 100
};
SentimentBaseline baseline_actual_sentiment(const PartyCounts& a, const PartyCounts& b);

// Popularity baseline: positive fraction times tweet-volume fraction, in
// percent. The two shares deliberately do not sum to 100.
VoteShares baseline_popularity(const PartyCounts& a, const PartyCounts& b);

// Cross-negative baseline: a negative tweet about one party counts toward the
// other; neutral tweets are excluded from the denominator.
VoteShares baseline_cross_negative(const PartyCounts& a, const PartyCounts& b);

struct MaeResult {
    std::map<PartyId, double> per_party;  // |predicted - actual| in pp
    double mean = 0.0;
};
MaeResult mae(const VoteShares& predicted, const VoteShares& actual);

}  // namespace mfs
