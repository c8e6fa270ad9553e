#include "mfscast/election.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>

#include "mfscast/errors.hpp"

namespace mfs {

ReferenceResults ReferenceResults::us2020() {
    ReferenceResults ref;
    ref.actual = {{"Democratic", 51.40}, {"Republican", 46.90}};
    ref.polls = {{"Democratic", 54.40}, {"Republican", 45.60}};
    return ref;
}

ReferenceResults load_reference(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open reference results: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ParseError("reference results are not valid JSON: " + path);
    try {
        ReferenceResults ref;
        for (const auto& [party, value] : j.at("actual").items())
            ref.actual[party] = value.get<double>();
        for (const auto& [party, value] : j.at("polls").items())
            ref.polls[party] = value.get<double>();
        if (ref.actual.empty() || ref.polls.empty())
            throw ParseError("reference results must name at least one party: " + path);
        return ref;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("reference results " + path + ": " + e.what());
    }
}

VoteShares vote_share_from_forecasts(const PartyId& party_a, double forecast_a,
                                     const PartyId& party_b, double forecast_b) {
    if (party_a == party_b) throw ParameterError("vote shares need two distinct parties");
    if (!std::isfinite(forecast_a) || !std::isfinite(forecast_b))
        throw ParameterError("forecasts must be finite");
    const double diff_pp = 100.0 * (forecast_a - forecast_b);
    return {{party_a, 50.0 + diff_pp / 2.0}, {party_b, 50.0 - diff_pp / 2.0}};
}

SentimentBaseline baseline_actual_sentiment(const PartyCounts& a, const PartyCounts& b) {
    if (a.party == b.party) throw ParameterError("baselines need two distinct parties");
    const double grand_total = static_cast<double>(a.total) + static_cast<double>(b.total);
    if (grand_total <= 0.0) throw DegenerateError("no tweets in either party");
    const double raw_a =
        (static_cast<double>(a.positive) - static_cast<double>(a.negative)) / grand_total;
    const double raw_b =
        (static_cast<double>(b.positive) - static_cast<double>(b.negative)) / grand_total;
    const double raw_sum = raw_a + raw_b;
    if (raw_sum == 0.0)
        throw DegenerateError("sentiment margins cancel exactly; normalized shares undefined");
    SentimentBaseline out;
    out.raw = {{a.party, 100.0 * raw_a}, {b.party, 100.0 * raw_b}};
    out.normalized = {{a.party, 100.0 * raw_a / raw_sum}, {b.party, 100.0 * raw_b / raw_sum}};
    return out;
}

VoteShares baseline_popularity(const PartyCounts& a, const PartyCounts& b) {
    if (a.party == b.party) throw ParameterError("baselines need two distinct parties");
    const double grand_total = static_cast<double>(a.total) + static_cast<double>(b.total);
    if (grand_total <= 0.0) throw DegenerateError("no tweets in either party");
    VoteShares out;
    for (const PartyCounts* c : {&a, &b}) {
        const double polar = static_cast<double>(c->positive) + static_cast<double>(c->negative);
        if (polar <= 0.0)
            throw DegenerateError("party " + c->party + " has no positive or negative tweets");
        out[c->party] = 100.0 * (static_cast<double>(c->positive) / polar) *
                        (static_cast<double>(c->total) / grand_total);
    }
    return out;
}

VoteShares baseline_cross_negative(const PartyCounts& a, const PartyCounts& b) {
    if (a.party == b.party) throw ParameterError("baselines need two distinct parties");
    const double denom = static_cast<double>(a.positive) + static_cast<double>(a.negative) +
                         static_cast<double>(b.positive) + static_cast<double>(b.negative);
    if (denom <= 0.0) throw DegenerateError("no positive or negative tweets in either party");
    const double share_a =
        100.0 * (static_cast<double>(a.positive) + static_cast<double>(b.negative)) / denom;
    const double share_b =
        100.0 * (static_cast<double>(b.positive) + static_cast<double>(a.negative)) / denom;
    return {{a.party, share_a}, {b.party, share_b}};
}

MaeResult mae(const VoteShares& predicted, const VoteShares& actual) {
    if (predicted.empty()) throw ParameterError("mae: no parties to compare");
    if (predicted.size() != actual.size())
        throw ParameterError("mae: party sets differ in size");
    MaeResult out;
    double sum = 0.0;
    for (const auto& [party, value] : predicted) {
        auto it = actual.find(party);
        if (it == actual.end()) throw ParameterError("mae: party " + party + " missing from actual");
        const double err = std::abs(value - it->second);
        out.per_party[party] = err;
        sum += err;
    }
    out.mean = sum / static_cast<double>(predicted.size());
    return out;
}

}  // namespace mfs
