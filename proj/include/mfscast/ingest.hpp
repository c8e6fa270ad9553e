#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "mfscast/dates.hpp"
#include "mfscast/record.hpp"

namespace mfs {

struct ParseStats {
    std::uint64_t malformed = 0;      // skipped with a warning counter
    std::uint64_t self_messages = 0;  // from == to, dropped
    std::uint64_t duplicates = 0;     // repeated tweet_id, last occurrence wins
};

struct ParseResult {
    std::vector<TweetRecord> records;
    ParseStats stats;
};

enum class CorpusFormat { json_lines, csv, autodetect };

// Newline-delimited corpus: one JSON object per line, or CSV with a header
// carrying the same field names. Malformed lines are counted and skipped;
// an unreadable source is fatal.
ParseResult parse_tweet_stream(std::istream& in, CorpusFormat format = CorpusFormat::autodetect);
ParseResult parse_tweet_file(const std::string& path);

// Drops records outside the window; each retained record lands in exactly one
// bucket keyed by its UTC calendar date.
std::map<Date, std::vector<TweetRecord>> bucket_by_day(std::vector<TweetRecord> records,
                                                       const AnalysisWindow& window);

}  // namespace mfs
