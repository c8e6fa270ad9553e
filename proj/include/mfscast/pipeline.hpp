#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mfscast/dates.hpp"
#include "mfscast/election.hpp"
#include "mfscast/farima.hpp"
#include "mfscast/graph_metrics.hpp"
#include "mfscast/ingest.hpp"
#include "mfscast/mfscore.hpp"
#include "mfscast/pagerank.hpp"

namespace mfs {

// Whether graph-stats measures one cumulative graph over the whole window or
// additionally tabulates the same measures on one graph per day.
enum class GraphSlice { window, daily };

struct PipelineConfig {
    std::string corpus;
    std::string lexicon;
    std::string keywords;
    std::string out_dir = "out";
    AnalysisWindow window;
    bool drop_multiparty = false;
    Statistic statistic = Statistic::median;
    double coefficient = 1000.0;
    GraphSlice slice = GraphSlice::window;

    PageRankParams pagerank;

    int farima_p = -1;  // -1 = choose (p, q) by corrected AIC
    int farima_q = -1;
    int truncation = 100;
    int horizon = 1;
    bool forecast_track = true;
    std::optional<Date> track_start;

    // the two parties converted to vote shares / compared in baselines
    std::pair<PartyId, PartyId> parties{"Democratic", "Republican"};

    std::string reference;  // reference-results JSON ("" = bundled 2020 values)
    bool baseline_actual_sentiment = true;
    bool baseline_popularity = true;
    bool baseline_cross_negative = true;

    // evaluate inputs: observed counts file and fixed forecast values; when
    // absent they are recomputed from the corpus / read from the out dir
    std::string counts_file;
    std::optional<std::pair<double, double>> forecast_values;
};

PipelineConfig load_pipeline_config(const std::string& path);

struct IngestOutcome {
    ParseStats stats;
    std::uint64_t in_window = 0;
    std::uint64_t tagged = 0;
    std::uint64_t dropped_multiparty = 0;
    std::vector<PartyCounts> counts;  // per party, plus a "Total" row
};

struct GraphStatsOutcome {
    std::int64_t vertices = 0;
    std::int64_t edges = 0;
    double spectral_radius = 0.0;
    int pagerank_iterations = 0;
    PathLengthStats path_length;
    double clustering = 0.0;
    int daily_rows = 0;  // rows written to the per-day table (daily slice only)
};

struct ScoreOutcome {
    std::map<PartyId, MedianSeries> series;
};

struct ForecastOutcome {
    std::map<PartyId, FarimaModel> models;
    std::map<PartyId, std::vector<double>> forecasts;  // h values per party
    VoteShares shares;                                 // from the configured pair
};

struct BaselinesOutcome {
    PartyCounts counts_a, counts_b;
    std::optional<SentimentBaseline> actual_sentiment;
    std::optional<VoteShares> popularity;
    std::optional<VoteShares> cross_negative;
};

struct EvaluationOutcome {
    std::map<std::string, VoteShares> shares_by_method;  // includes "polls"
    std::map<std::string, MaeResult> mae_by_method;
    VoteShares actual;
};

IngestOutcome run_ingest(const PipelineConfig& config);
std::vector<PartyCounts> run_sentiment_stats(const PipelineConfig& config);
GraphStatsOutcome run_graph_stats(const PipelineConfig& config);
ScoreOutcome run_score(const PipelineConfig& config);
ForecastOutcome run_forecast(const PipelineConfig& config);
BaselinesOutcome run_baselines(const PipelineConfig& config);
EvaluationOutcome run_evaluate(const PipelineConfig& config);

}  // namespace mfs
