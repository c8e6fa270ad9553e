#include "mfscast/mfscore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "mfscast/errors.hpp"
#include "mfscast/optim.hpp"

namespace mfs {

double mfs_user(double centrality, std::span<const std::pair<double, std::int64_t>> tweets,
                double coefficient) {
    double sum = 0.0;
    for (const auto& [s, r] : tweets) sum += s * static_cast<double>(r == 0 ? 1 : r);
    return coefficient * centrality * sum;
}

std::vector<UserDayScore> user_day_scores(const std::map<Date, std::vector<TweetRecord>>& buckets,
                                          const InteractionGraph& g,
                                          const CentralityScores& scores, const PartyId& party,
                                          const AnalysisWindow& window, double coefficient) {
    std::vector<UserDayScore> out;
    std::unordered_map<UserId, double> weighted_sentiment;
    std::vector<UserId> active;
    for (Date day = window.start_day; day <= window.end_day; day = day.next()) {
        auto bucket = buckets.find(day);
        if (bucket == buckets.end()) continue;
        weighted_sentiment.clear();
        active.clear();
        for (const TweetRecord& r : bucket->second) {
            if (!std::binary_search(r.party_tags.begin(), r.party_tags.end(), party)) continue;
            if (!r.sentiment_score)
                throw ParameterError("record " + r.tweet_id + " has no sentiment score");
            const double rt = static_cast<double>(r.retweet_count == 0 ? 1 : r.retweet_count);
            auto [it, fresh] = weighted_sentiment.try_emplace(r.from_user_id, 0.0);
            if (fresh) active.push_back(r.from_user_id);
            it->second += *r.sentiment_score * rt;
        }
        std::sort(active.begin(), active.end());
        for (UserId user : active) {
            const double x = scores.of(g, user);
            out.push_back({user, day, party, coefficient * x * weighted_sentiment[user]});
        }
    }
    return out;
}

std::vector<DailyDistribution> daily_distributions(
    const std::map<Date, std::vector<TweetRecord>>& buckets, const InteractionGraph& g,
    const CentralityScores& scores, const PartyId& party, const AnalysisWindow& window,
    double coefficient) {
    const auto flat = user_day_scores(buckets, g, scores, party, window, coefficient);
    std::vector<DailyDistribution> out;
    std::size_t pos = 0;
    for (Date day = window.start_day; day <= window.end_day; day = day.next()) {
        DailyDistribution dist{day, party, {}};
        while (pos < flat.size() && flat[pos].day == day) dist.sample.push_back(flat[pos++].mfs);
        out.push_back(std::move(dist));
    }
    return out;
}

double median(std::span<const double> sample) {
    if (sample.empty()) throw DegenerateError("median of an empty sample");
    std::vector<double> v(sample.begin(), sample.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double mean(std::span<const double> sample) {
    if (sample.empty()) throw DegenerateError("mean of an empty sample");
    double sum = 0.0;
    for (double x : sample) sum += x;
    return sum / static_cast<double>(sample.size());
}

MedianSeries median_series(std::span<const DailyDistribution> distributions,
                           Statistic statistic) {
    if (distributions.empty()) throw DegenerateError("median_series over no days");
    MedianSeries series;
    series.party = distributions.front().party;
    std::vector<bool> observed;
    for (const auto& dist : distributions) {
        series.days.push_back(dist.day);
        series.sample_sizes.push_back(static_cast<std::int64_t>(dist.sample.size()));
        if (dist.sample.empty()) {
            series.values.push_back(0.0);  // placeholder, interpolated below
            observed.push_back(false);
        } else {
            series.values.push_back(statistic == Statistic::median ? median(dist.sample)
                                                                   : mean(dist.sample));
            observed.push_back(true);
        }
    }
    if (std::find(observed.begin(), observed.end(), true) == observed.end())
        throw DegenerateError("no day in the window has a scored user");

    // fill gaps linearly between observed neighbours, flat at the window ends
    const std::size_t n = series.values.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (observed[i]) continue;
        ++series.interpolated_days;
        std::size_t l = i;
        while (l > 0 && !observed[l - 1]) --l;  // l-1 observed or l == 0
        std::size_t r = i;
        while (r + 1 < n && !observed[r + 1]) ++r;  // r+1 observed or r == n-1
        const bool has_left = l > 0, has_right = r + 1 < n;
        if (has_left && has_right) {
            const double span = static_cast<double>(r + 1 - (l - 1));
            const double t = static_cast<double>(i - (l - 1)) / span;
            series.values[i] = series.values[l - 1] * (1.0 - t) + series.values[r + 1] * t;
        } else if (has_left) {
            series.values[i] = series.values[l - 1];
        } else {
            series.values[i] = series.values[r + 1];
        }
    }
    return series;
}

namespace {

// both samples ascending; walk the merged quantile jump points
double wasserstein1_sorted(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size(), m = b.size();
    std::size_t ia = 0, ib = 0;
    double q = 0.0, total = 0.0;
    while (ia < n && ib < m) {
        const double qa = static_cast<double>(ia + 1) / static_cast<double>(n);
        const double qb = static_cast<double>(ib + 1) / static_cast<double>(m);
        const double next = std::min(qa, qb);
        total += std::abs(a[ia] - b[ib]) * (next - q);
        q = next;
        if (qa == next) ++ia;
        if (qb == next) ++ib;
    }
    return total;
}

}  // namespace

double wasserstein1(std::span<const double> sample_a, std::span<const double> sample_b) {
    if (sample_a.empty() || sample_b.empty())
        throw DegenerateError("wasserstein1 of an empty sample");
    std::vector<double> a(sample_a.begin(), sample_a.end());
    std::vector<double> b(sample_b.begin(), sample_b.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return wasserstein1_sorted(a, b);
}

std::vector<std::vector<double>> distance_matrix(std::span<const DailyDistribution> distributions,
                                                 ExecMode mode) {
    const std::size_t k = distributions.size();
    std::vector<std::vector<double>> sorted(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (distributions[i].sample.empty())
            throw DegenerateError("empty distribution on " + format_date(distributions[i].day) +
                                  "; no distance defined");
        sorted[i].assign(distributions[i].sample.begin(), distributions[i].sample.end());
        std::sort(sorted[i].begin(), sorted[i].end());
    }
    std::vector<std::vector<double>> m(k, std::vector<double>(k, 0.0));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
    const auto npairs = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(static) if (mode == ExecMode::parallel)
    for (std::int64_t p = 0; p < npairs; ++p) {
        const auto [i, j] = pairs[p];
        const double w = wasserstein1_sorted(sorted[i], sorted[j]);
        m[i][j] = w;
        m[j][i] = w;
    }
    return m;
}

namespace {

constexpr double kNuLow = 0.5, kNuHigh = 200.0;

double nu_of(double z) { return kNuLow + (kNuHigh - kNuLow) / (1.0 + std::exp(-z)); }

double z_of(double nu) {
    const double p = (nu - kNuLow) / (kNuHigh - kNuLow);
    return std::log(p / (1.0 - p));
}

double t_negloglik(std::span<const double> x, double loc, double log_s, double nu) {
    const double s = std::exp(log_s);
    const double c = std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0) -
                     0.5 * std::log(nu * std::numbers::pi) - log_s;
    double acc = 0.0;
    for (double v : x) {
        const double u = (v - loc) / s;
        acc += std::log1p(u * u / nu);
    }
    return -static_cast<double>(x.size()) * c + 0.5 * (nu + 1.0) * acc;
}

}  // namespace

StudentTFit fit_student_t(std::span<const double> sample) {
    if (sample.size() < 8) throw ParameterError("fit_student_t needs a sample of size >= 8");
    const auto [lo, hi] = std::minmax_element(sample.begin(), sample.end());
    if (*lo == *hi) throw DegenerateError("fit_student_t on a zero-variance sample");

    const double loc0 = median(sample);
    double var = 0.0;
    const double m = mean(sample);
    for (double v : sample) var += (v - m) * (v - m);
    var /= static_cast<double>(sample.size());
    const double sd = std::sqrt(var);

    const auto objective = [&](std::span<const double> p) {
        return t_negloglik(sample, p[0], p[1], nu_of(p[2]));
    };
    SimplexResult best;
    best.fmin = std::numeric_limits<double>::infinity();
    // one heavy-tailed and one near-Gaussian start; keep the better optimum
    for (double nu0 : {3.0, 50.0}) {
        const double start[3] = {loc0, std::log(sd), z_of(nu0)};
        const double steps[3] = {0.25 * sd, 0.5, 1.0};
        auto r = minimize_simplex(objective, start, steps, 5000, 1e-10);
        if (r.fmin < best.fmin) best = std::move(r);
    }
    StudentTFit fit;
    fit.location = best.x[0];
    fit.scale = std::exp(best.x[1]);
    fit.degrees_of_freedom = nu_of(best.x[2]);
    fit.log_likelihood = -best.fmin;
    return fit;
}

}  // namespace mfs
