#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "mfscast/dates.hpp"
#include "mfscast/exec.hpp"
#include "mfscast/graph.hpp"
#include "mfscast/pagerank.hpp"
#include "mfscast/record.hpp"

namespace mfs {

struct UserDayScore {
    UserId user_id;
    Date day;
    PartyId party;
    double mfs;
};

struct DailyDistribution {
    Date day;
    PartyId party;
    std::vector<double> sample;  // one value per active user, ascending user id
};

enum class Statistic { median, mean };

struct MedianSeries {
    PartyId party;
    std::vector<Date> days;  // every day of the window, ascending
    std::vector<double> values;
    std::vector<std::int64_t> sample_sizes;  // 0 marks an interpolated day
    int interpolated_days = 0;
};

struct StudentTFit {
    double degrees_of_freedom = 0.0;
    double location = 0.0;
    double scale = 0.0;
    double log_likelihood = 0.0;
};

// 1000 * x_i * sum_j S_j * R_j, with R_j read as 1 whenever the recorded
// retweet count is zero.
double mfs_user(double centrality, std::span<const std::pair<double, std::int64_t>> tweets,
                double coefficient = 1000.0);

// Per-user scores for every window day on which the user posted at least one
// tweet tagged with `party`. Records must already carry sentiment scores.
std::vector<UserDayScore> user_day_scores(const std::map<Date, std::vector<TweetRecord>>& buckets,
                                          const InteractionGraph& g,
                                          const CentralityScores& scores, const PartyId& party,
                                          const AnalysisWindow& window,
                                          double coefficient = 1000.0);

// One distribution per window day (possibly empty when nobody was active).
std::vector<DailyDistribution> daily_distributions(
    const std::map<Date, std::vector<TweetRecord>>& buckets, const InteractionGraph& g,
    const CentralityScores& scores, const PartyId& party, const AnalysisWindow& window,
    double coefficient = 1000.0);

double median(std::span<const double> sample);
double mean(std::span<const double> sample);

// Daily statistic series over the full window; days with an empty sample are
// filled by linear interpolation between the surrounding observed days (flat
// at the ends) and reported via interpolated_days / sample_size 0.
MedianSeries median_series(std::span<const DailyDistribution> distributions,
                           Statistic statistic = Statistic::median);

// Exact W1 between two empirical distributions: the quantile functions are
// step functions, so the integral of |Fa^-1 - Fb^-1| is a finite sum over the
// merged jump points i/n and j/m.
double wasserstein1(std::span<const double> sample_a, std::span<const double> sample_b);

// Pairwise W1 matrix over the given distributions (symmetric, zero diagonal).
std::vector<std::vector<double>> distance_matrix(std::span<const DailyDistribution> distributions,
                                                 ExecMode mode = ExecMode::parallel);

// Maximum-likelihood location-scale Student-t fit by Nelder-Mead over
// (location, log scale, nu), nu kept inside [0.5, 200] by a logistic map.
StudentTFit fit_student_t(std::span<const double> sample);

}  // namespace mfs
