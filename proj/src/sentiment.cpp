#include "mfscast/sentiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mfscast/errors.hpp"
#include "mfscast/text.hpp"

namespace mfs {

Lexicon Lexicon::from_text(const std::string& text, const std::string& origin) {
    Lexicon lex;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw ParseError(origin + ":" + std::to_string(line_no) +
                             ": expected token<TAB>score");
        const std::string token = to_lower_ascii(line.substr(0, tab));
        const std::string score_str = line.substr(tab + 1);
        double score;
        std::size_t pos = 0;
        try {
            score = std::stod(score_str, &pos);
        } catch (...) {
            pos = 0;
        }
        if (pos == 0 || pos != score_str.size() || !std::isfinite(score))
            throw ParseError(origin + ":" + std::to_string(line_no) + ": unparseable score '" +
                             score_str + "'");
        auto [it, inserted] = lex.scores_.emplace(token, score);
        if (!inserted) {
            it->second = score;  // last wins
            ++lex.duplicates_;
        }
    }
    return lex;
}

Lexicon Lexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open lexicon: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str(), path);
}

double score_tweet(const std::string& text, const Lexicon& lexicon) {
    double total = 0.0;
    for (const auto& token : tokenize(text)) total += lexicon.score_of(token);
    return total;
}

Polarity classify_polarity(double score) {
    if (score > 0) return Polarity::positive;
    if (score < 0) return Polarity::negative;
    return Polarity::neutral;
}

const char* polarity_name(Polarity p) {
    switch (p) {
        case Polarity::positive: return "positive";
        case Polarity::negative: return "negative";
        case Polarity::neutral: return "neutral";
    }
    return "?";
}

void score_records(std::span<TweetRecord> records, const Lexicon& lexicon, ExecMode mode) {
    const std::int64_t n = static_cast<std::int64_t>(records.size());
    if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i)
            records[i].sentiment_score = score_tweet(records[i].text, lexicon);
    } else {
        for (std::int64_t i = 0; i < n; ++i)
            records[i].sentiment_score = score_tweet(records[i].text, lexicon);
    }
}

PartyCounts party_counts(std::span<const TweetRecord> records, const PartyId& party) {
    PartyCounts counts;
    counts.party = party;
    for (const auto& r : records) {
        if (!std::binary_search(r.party_tags.begin(), r.party_tags.end(), party)) continue;
        ++counts.total;
        switch (classify_polarity(r.sentiment_score.value_or(0.0))) {
            case Polarity::positive: ++counts.positive; break;
            case Polarity::negative: ++counts.negative; break;
            case Polarity::neutral: ++counts.neutral; break;
        }
    }
    return counts;
}

}  // namespace mfs
