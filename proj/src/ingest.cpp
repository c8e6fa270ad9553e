#include "mfscast/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "mfscast/errors.hpp"

namespace mfs {

namespace {

using nlohmann::json;

bool record_from_json(const std::string& line, TweetRecord& out) {
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) return false;

    auto id = j.find("tweet_id");
    auto from = j.find("from_user_id");
    auto to = j.find("to_user_id");
    auto text = j.find("text");
    auto rt = j.find("retweet_count");
    auto ts = j.find("timestamp");
    if (id == j.end() || from == j.end() || to == j.end() || text == j.end() || rt == j.end() ||
        ts == j.end())
        return false;
    if (!from->is_number_integer() || !to->is_number_integer() || !rt->is_number_integer() ||
        !text->is_string() || !ts->is_string())
        return false;

    if (id->is_string())
        out.tweet_id = id->get<std::string>();
    else if (id->is_number_integer())
        out.tweet_id = std::to_string(id->get<std::int64_t>());
    else
        return false;

    out.from_user_id = from->get<std::int64_t>();
    out.to_user_id = to->get<std::int64_t>();
    out.text = text->get<std::string>();
    out.retweet_count = rt->get<std::int64_t>();
    auto t = parse_timestamp(ts->get<std::string>());
    if (!t) return false;
    out.timestamp = *t;

    // optional passthrough fields (present when re-reading a persisted store)
    if (auto tags = j.find("party_tags"); tags != j.end() && tags->is_array()) {
        for (const auto& p : *tags)
            if (p.is_string()) out.party_tags.push_back(p.get<std::string>());
        std::sort(out.party_tags.begin(), out.party_tags.end());
    }
    if (auto s = j.find("sentiment_score"); s != j.end() && s->is_number())
        out.sentiment_score = s->get<double>();
    return true;
}

// RFC-4180-ish field splitter; quoted fields may contain commas, newlines are
// not supported inside fields (the corpus is strictly one record per line).
bool split_csv_line(const std::string& line, std::vector<std::string>& fields) {
    fields.clear();
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c == '\r') {
            // tolerate CRLF
        } else {
            cur.push_back(c);
        }
    }
    if (in_quotes) return false;
    fields.push_back(std::move(cur));
    return true;
}

bool parse_int64(const std::string& s, std::int64_t& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stoll(s, &pos);
    } catch (...) {
        return false;
    }
    return pos == s.size();
}

bool record_valid(const TweetRecord& r) {
    if (r.tweet_id.empty()) return false;
    if (r.from_user_id < 1) return false;
    if (r.to_user_id != -1 && r.to_user_id < 1) return false;
    if (r.retweet_count < 0) return false;
    return true;
}

}  // namespace

std::string record_to_json_line(const TweetRecord& r) {
    json j;
    j["tweet_id"] = r.tweet_id;
    j["from_user_id"] = r.from_user_id;
    j["to_user_id"] = r.to_user_id;
    j["text"] = r.text;
    j["retweet_count"] = r.retweet_count;
    j["timestamp"] = format_timestamp(r.timestamp);
    if (!r.party_tags.empty()) j["party_tags"] = r.party_tags;
    if (r.sentiment_score) j["sentiment_score"] = *r.sentiment_score;
    return j.dump();
}

ParseResult parse_tweet_stream(std::istream& in, CorpusFormat format) {
    if (!in) throw IoError("tweet stream is not readable");

    ParseResult result;
    std::unordered_map<std::string, std::size_t> seen;  // tweet_id -> index
    std::vector<std::string> header;
    std::vector<std::string> fields;
    int col_id = -1, col_from = -1, col_to = -1, col_text = -1, col_rt = -1, col_ts = -1;

    std::string line;
    bool first = true;
    bool csv = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        if (first) {
            first = false;
            if (format == CorpusFormat::csv ||
                (format == CorpusFormat::autodetect && line[0] != '{')) {
                csv = true;
                if (!split_csv_line(line, header))
                    throw ParseError("unparseable CSV header line");
                for (int i = 0; i < static_cast<int>(header.size()); ++i) {
                    const std::string& h = header[i];
                    if (h == "tweet_id") col_id = i;
                    else if (h == "from_user_id") col_from = i;
                    else if (h == "to_user_id") col_to = i;
                    else if (h == "text") col_text = i;
                    else if (h == "retweet_count") col_rt = i;
                    else if (h == "timestamp") col_ts = i;
                }
                if (col_id < 0 || col_from < 0 || col_to < 0 || col_text < 0 || col_rt < 0 ||
                    col_ts < 0)
                    throw ParseError("CSV header is missing required fields");
                continue;
            }
        }

        TweetRecord rec;
        bool ok;
        if (csv) {
            ok = split_csv_line(line, fields) &&
                 static_cast<int>(fields.size()) == static_cast<int>(header.size());
            if (ok) {
                rec.tweet_id = fields[col_id];
                rec.text = fields[col_text];
                ok = parse_int64(fields[col_from], rec.from_user_id) &&
                     parse_int64(fields[col_to], rec.to_user_id) &&
                     parse_int64(fields[col_rt], rec.retweet_count);
                if (ok) {
                    auto t = parse_timestamp(fields[col_ts]);
                    ok = t.has_value();
                    if (ok) rec.timestamp = *t;
                }
            }
        } else {
            ok = record_from_json(line, rec);
        }

        if (!ok || !record_valid(rec)) {
            ++result.stats.malformed;
            continue;
        }
        if (rec.to_user_id >= 1 && rec.to_user_id == rec.from_user_id) {
            ++result.stats.self_messages;
            continue;
        }
        auto [it, inserted] = seen.emplace(rec.tweet_id, result.records.size());
        if (inserted) {
            result.records.push_back(std::move(rec));
        } else {
            result.records[it->second] = std::move(rec);  // last occurrence wins
            ++result.stats.duplicates;
        }
    }
    return result;
}

ParseResult parse_tweet_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file: " + path);
    CorpusFormat fmt = CorpusFormat::autodetect;
    if (path.size() > 4 && path.compare(path.size() - 4, 4, ".csv") == 0) fmt = CorpusFormat::csv;
    return parse_tweet_stream(in, fmt);
}

std::map<Date, std::vector<TweetRecord>> bucket_by_day(std::vector<TweetRecord> records,
                                                       const AnalysisWindow& window) {
    std::map<Date, std::vector<TweetRecord>> buckets;
    for (auto& r : records) {
        const Date d = r.day();
        if (window.contains(d)) buckets[d].push_back(std::move(r));
    }
    return buckets;
}

}  // namespace mfs
