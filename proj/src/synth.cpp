#include "mfscast/synth.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include "mfscast/errors.hpp"
#include "mfscast/ingest.hpp"
#include "mfscast/rng.hpp"

namespace mfs {

namespace {

// scored by the bundled test lexicon as positive / negative / absent
const char* const kPositiveWords[] = {"excellent", "great"};
const char* const kNegativeWords[] = {"terrible", "awful"};
const char* const kNeutralWords[] = {"update", "report"};

TrendSpec trend_of(const nlohmann::json& j) {
    if (j.is_number()) return {j.get<double>(), j.get<double>()};
    if (j.is_array() && j.size() == 2)
        return {j.at(0).get<double>(), j.at(1).get<double>()};
    throw ParseError("trend values must be a number or a [start, end] pair");
}

void validate(const CorpusSpec& spec) {
    if (spec.n_users < 1 || spec.n_days < 1)
        throw ParameterError("corpus spec needs n_users >= 1 and n_days >= 1");
    if (spec.interaction_rate < 0.0 || spec.interaction_rate > 1.0)
        throw ParameterError("interaction_rate must lie in [0, 1]");
    if (spec.retweet_exponent <= 0.0)
        throw ParameterError("retweet exponent must be positive");
    if (spec.retweet_cap < 1 || spec.retweet_cap > 1000000)
        throw ParameterError("retweet cap must lie in [1, 1000000]");
    if (spec.parties.empty()) throw ParameterError("corpus spec names no parties");
    for (const auto& party : spec.parties) {
        if (party.name.empty() || party.marker.empty())
            throw ParameterError("every party needs a name and a marker token");
        for (int edge : {0, spec.n_days - 1}) {
            const double pos = party.p_positive.at(edge, spec.n_days);
            const double neg = party.p_negative.at(edge, spec.n_days);
            if (pos < 0.0 || neg < 0.0 || pos + neg > 1.0 + 1e-12)
                throw ParameterError("sentiment mix of " + party.name +
                                     " must stay in [0, 1] and sum to at most 1");
            if (party.popularity.at(edge, spec.n_days) < 0.0)
                throw ParameterError("popularity of " + party.name + " must stay nonnegative");
        }
    }
    for (std::size_t i = 0; i < spec.parties.size(); ++i)
        for (std::size_t j = i + 1; j < spec.parties.size(); ++j)
            if (spec.parties[i].name == spec.parties[j].name)
                throw ParameterError("duplicate party name: " + spec.parties[i].name);
}

}  // namespace

CorpusSpec load_corpus_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus spec: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ParseError("corpus spec is not valid JSON: " + path);
    try {
        CorpusSpec spec;
        spec.n_users = j.at("n_users").get<int>();
        spec.n_days = j.at("n_days").get<int>();
        const auto day = parse_date(j.at("start_day").get<std::string>());
        if (!day) throw ParseError("corpus spec start_day must be YYYY-MM-DD");
        spec.start_day = *day;
        spec.interaction_rate = j.value("interaction_rate", spec.interaction_rate);
        if (j.contains("retweet_law")) {
            spec.retweet_exponent = j["retweet_law"].value("exponent", spec.retweet_exponent);
            spec.retweet_cap = j["retweet_law"].value("cap", spec.retweet_cap);
        }
        spec.seed = j.value("seed", spec.seed);
        for (const auto& p : j.at("parties")) {
            PartyPlan plan;
            plan.name = p.at("name").get<std::string>();
            plan.marker = p.at("marker").get<std::string>();
            plan.popularity = trend_of(p.at("popularity"));
            plan.p_positive = trend_of(p.at("sentiment_mix").at("pos"));
            plan.p_negative = trend_of(p.at("sentiment_mix").at("neg"));
            if (p.at("sentiment_mix").contains("neu")) {
                const TrendSpec neu = trend_of(p["sentiment_mix"]["neu"]);
                for (int edge : {0, spec.n_days - 1}) {
                    const double total = plan.p_positive.at(edge, spec.n_days) +
                                         plan.p_negative.at(edge, spec.n_days) +
                                         neu.at(edge, spec.n_days);
                    if (std::abs(total - 1.0) > 1e-9)
                        throw ParameterError("sentiment mix of " + plan.name +
                                             " does not sum to 1");
                }
            }
            spec.parties.push_back(std::move(plan));
        }
        validate(spec);
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("corpus spec " + path + ": " + e.what());
    }
}

void generate_corpus(const CorpusSpec& spec, std::ostream& out) {
    validate(spec);
    Rng rng(spec.seed);

    // discrete power law on {1..cap}, shifted down so zero retweets occur
    std::vector<double> retweet_cdf(spec.retweet_cap);
    double z = 0.0;
    for (int r = 1; r <= spec.retweet_cap; ++r) {
        z += std::pow(static_cast<double>(r), -spec.retweet_exponent);
        retweet_cdf[r - 1] = z;
    }
    const auto draw_retweets = [&]() {
        const double u = rng.uniform() * z;
        const auto it = std::lower_bound(retweet_cdf.begin(), retweet_cdf.end(), u);
        return static_cast<std::int64_t>(it - retweet_cdf.begin());  // rank - 1
    };

    // Polya urn: every pick returns the chosen user to the urn with one extra
    // copy, so frequently-addressed users keep attracting interactions
    std::vector<UserId> urn(spec.n_users);
    for (int u = 0; u < spec.n_users; ++u) urn[u] = u + 1;
    const auto draw_partner = [&](UserId author) -> UserId {
        if (spec.n_users < 2) return -1;
        for (int attempt = 0; attempt < 64; ++attempt) {
            const UserId pick = urn[rng.integer(urn.size())];
            if (pick == author) continue;
            urn.push_back(pick);
            return pick;
        }
        return -1;
    };

    std::int64_t next_id = 1;
    for (int day = 0; day < spec.n_days; ++day) {
        const std::int64_t day_epoch =
            static_cast<std::int64_t>(spec.start_day.days_since_epoch + day) * 86400;
        for (const auto& party : spec.parties) {
            const auto count = static_cast<std::int64_t>(
                std::llround(party.popularity.at(day, spec.n_days) * spec.n_users));
            const double p_pos = party.p_positive.at(day, spec.n_days);
            const double p_neg = party.p_negative.at(day, spec.n_days);
            for (std::int64_t i = 0; i < count; ++i) {
                TweetRecord r;
                r.tweet_id = "t" + std::to_string(next_id++);
                r.from_user_id = static_cast<UserId>(rng.integer(spec.n_users)) + 1;
                const double u = rng.uniform();
                const char* word = u < p_pos   ? kPositiveWords[rng.integer(2)]
                                   : u < p_pos + p_neg ? kNegativeWords[rng.integer(2)]
                                                       : kNeutralWords[rng.integer(2)];
                r.text = party.marker + " " + word;
                if (rng.uniform() < spec.interaction_rate)
                    r.to_user_id = draw_partner(r.from_user_id);
                r.retweet_count = draw_retweets();
                r.timestamp = day_epoch + static_cast<std::int64_t>(rng.integer(86400));
                out << record_to_json_line(r) << '\n';
            }
        }
    }
    if (!out) throw IoError("failed writing generated corpus");
}

void generate_corpus_file(const CorpusSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write corpus file: " + path);
    generate_corpus(spec, out);
}

std::vector<std::vector<PartyId>> expected_ordering(const CorpusSpec& spec) {
    validate(spec);
    std::map<double, std::vector<PartyId>, std::greater<>> groups;
    for (const auto& party : spec.parties)
        groups[party.popularity.at(spec.n_days - 1, spec.n_days)].push_back(party.name);
    std::vector<std::vector<PartyId>> out;
    for (auto& [value, names] : groups) {
        std::sort(names.begin(), names.end());
        out.push_back(std::move(names));
    }
    return out;
}

}  // namespace mfs
