#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mfscast/errors.hpp"
#include "mfscast/farima.hpp"
#include "mfscast/pipeline.hpp"
#include "mfscast/synth.hpp"

using namespace mfs;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("pipeline_cli");

namespace {

std::string data_file(const char* name) {
    return std::string(MFSCAST_DATA_DIR) + "/" + name;
}

std::string temp_path(const char* name) {
    return (fs::temp_directory_path() / name).string();
}

std::string write_file(const std::string& path, const std::string& text) {
    std::ofstream(path) << text;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int count_lines(const std::string& text) {
    return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

// 60 users, 40 days, planted Democratic 70/20 positive/negative vs
// Republican 30/50, Republican volume ramping up; generated once per process
const std::string& shared_corpus() {
    static const std::string path = [] {
        CorpusSpec spec;
        spec.n_users = 60;
        spec.n_days = 40;
        spec.start_day = *parse_date("2020-10-01");
        spec.seed = 11;
        PartyPlan a;
        a.name = "Democratic";
        a.marker = "Biden";
        a.popularity = {0.5, 0.5};
        a.p_positive = {0.7, 0.7};
        a.p_negative = {0.2, 0.2};
        PartyPlan b = a;
        b.name = "Republican";
        b.marker = "Trump";
        b.popularity = {0.5, 0.8};
        b.p_positive = {0.3, 0.3};
        b.p_negative = {0.5, 0.5};
        spec.parties = {a, b};
        const std::string file = temp_path("pipeline_corpus.jsonl");
        generate_corpus_file(spec, file);
        return file;
    }();
    return path;
}

PipelineConfig corpus_config(const char* out_name) {
    PipelineConfig c;
    c.corpus = shared_corpus();
    c.lexicon = data_file("test_lexicon.tsv");
    c.keywords = data_file("keywords_us2020.json");
    c.out_dir = temp_path(out_name);
    c.window = {*parse_date("2020-10-01"), *parse_date("2020-11-09")};
    c.forecast_track = false;
    return c;
}

int run_cli(const std::string& args, std::string* out = nullptr, std::string* err = nullptr) {
    const std::string out_file = temp_path("cli_stdout.txt");
    const std::string err_file = temp_path("cli_stderr.txt");
    const std::string cmd =
        std::string(MFSCAST_CLI_PATH) + " " + args + " >" + out_file + " 2>" + err_file;
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    if (out) *out = slurp(out_file);
    if (err) *err = slurp(err_file);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config loader fills defaults from a minimal file") {
    const std::string path = write_file(temp_path("cfg_min.json"), R"({
        "corpus": "tweets.jsonl", "lexicon": "lex.tsv", "keywords": "kw.json",
        "window": {"start": "2020-09-22", "end": "2020-11-02"}})");
    const PipelineConfig c = load_pipeline_config(path);
    CHECK(c.corpus == "tweets.jsonl");
    CHECK(c.out_dir == "out");
    CHECK(c.window.n_days() == 42);
    CHECK(c.statistic == Statistic::median);
    CHECK(c.coefficient == 1000.0);
    CHECK(c.drop_multiparty == false);
    CHECK(c.pagerank.alpha == 0.85);
    CHECK(!c.pagerank.beta.has_value());
    CHECK(c.farima_p == -1);
    CHECK(c.farima_q == -1);
    CHECK(c.truncation == 100);
    CHECK(c.horizon == 1);
    CHECK(c.forecast_track == true);
    CHECK(c.parties == std::pair<PartyId, PartyId>{"Democratic", "Republican"});
    CHECK(c.baseline_actual_sentiment);
    CHECK(c.baseline_popularity);
    CHECK(c.baseline_cross_negative);
    CHECK(!c.forecast_values.has_value());
    fs::remove(path);
}

TEST_CASE("config loader honors every documented knob") {
    const std::string path = write_file(temp_path("cfg_full.json"), R"({
        "corpus": "t.jsonl", "lexicon": "l.tsv", "keywords": "k.json",
        "out_dir": "elsewhere",
        "window": {"start": "2020-01-01", "end": "2020-01-31"},
        "drop_multiparty": true, "statistic": "mean", "coefficient": 250.5,
        "slice": "daily",
        "pagerank": {"alpha": 0.9, "beta": 0.01, "tolerance": 1e-8,
                     "max_iterations": 500, "weighted": true},
        "farima": {"p": 2, "q": 1, "K": 64, "horizon": 3,
                   "track": false, "track_start": "2020-01-20"},
        "parties": ["Green", "Libertarian"],
        "reference": "ref.json",
        "baselines": {"actual_sentiment": false, "popularity": false,
                      "cross_negative": true},
        "evaluate": {"counts": "counts.json",
                     "forecasts": {"Green": 0.25, "Libertarian": -0.5}}})");
    const PipelineConfig c = load_pipeline_config(path);
    CHECK(c.out_dir == "elsewhere");
    CHECK(c.drop_multiparty == true);
    CHECK(c.statistic == Statistic::mean);
    CHECK(c.coefficient == 250.5);
    CHECK(c.slice == GraphSlice::daily);
    CHECK(c.pagerank.alpha == 0.9);
    CHECK(c.pagerank.beta == 0.01);
    CHECK(c.pagerank.tolerance == 1e-8);
    CHECK(c.pagerank.max_iterations == 500);
    CHECK(c.pagerank.weighted == true);
    CHECK(c.farima_p == 2);
    CHECK(c.farima_q == 1);
    CHECK(c.truncation == 64);
    CHECK(c.horizon == 3);
    CHECK(c.forecast_track == false);
    REQUIRE(c.track_start.has_value());
    CHECK(format_date(*c.track_start) == "2020-01-20");
    CHECK(c.parties == std::pair<PartyId, PartyId>{"Green", "Libertarian"});
    CHECK(c.reference == "ref.json");
    CHECK(!c.baseline_actual_sentiment);
    CHECK(!c.baseline_popularity);
    CHECK(c.baseline_cross_negative);
    CHECK(c.counts_file == "counts.json");
    REQUIRE(c.forecast_values.has_value());
    CHECK(c.forecast_values->first == 0.25);
    CHECK(c.forecast_values->second == -0.5);
    fs::remove(path);
}

TEST_CASE("config loader rejects broken files with the right error class") {
    CHECK_THROWS_AS(load_pipeline_config(temp_path("does_not_exist.json")), IoError);
    const auto bad = [](const char* name, const std::string& body) {
        return write_file(temp_path(name), body);
    };
    CHECK_THROWS_AS(load_pipeline_config(bad("cfg_b1.json", "{oops")), ConfigError);
    // window is required
    CHECK_THROWS_AS(load_pipeline_config(bad(
                        "cfg_b2.json", R"({"corpus":"c","lexicon":"l","keywords":"k"})")),
                    ConfigError);
    const std::string head = R"({"corpus":"c","lexicon":"l","keywords":"k",
                                 "window":{"start":"2020-01-01","end":"2020-01-31"})";
    CHECK_THROWS_AS(load_pipeline_config(bad("cfg_b3.json", head + R"(,"statistic":"mode"})")),
                    ConfigError);
    CHECK_THROWS_AS(load_pipeline_config(bad("cfg_b4.json", head + R"(,"farima":{"horizon":0}})")),
                    ConfigError);
    CHECK_THROWS_AS(load_pipeline_config(bad("cfg_b7.json", head + R"(,"slice":"hourly"})")),
                    ConfigError);
    CHECK_THROWS_AS(load_pipeline_config(bad("cfg_b5.json", head + R"(,"parties":["One"]})")),
                    ConfigError);
    CHECK_THROWS_AS(
        load_pipeline_config(bad(
            "cfg_b6.json",
            R"({"corpus":"c","lexicon":"l","keywords":"k",
                "window":{"start":"2020-02-01","end":"2020-01-01"}})")),
        ConfigError);
    for (int i = 1; i <= 7; ++i)
        fs::remove(temp_path(("cfg_b" + std::to_string(i) + ".json").c_str()));
}

TEST_CASE("ingest stage writes the store, per-party shards, and summaries") {
    const PipelineConfig c = corpus_config("pipe_ingest");
    const IngestOutcome out = run_ingest(c);
    CHECK(out.stats.malformed == 0);
    CHECK(out.in_window > 0);
    CHECK(out.tagged == out.in_window);  // every synthetic tweet carries a marker
    CHECK(out.dropped_multiparty == 0);

    // one row per keyword-table party plus the total
    REQUIRE(out.counts.size() == 6);
    CHECK(out.counts.back().party == "Total");
    std::uint64_t dem = 0, rep = 0, total = 0;
    for (const auto& row : out.counts) {
        if (row.party == "Democratic") dem = row.total;
        if (row.party == "Republican") rep = row.total;
        if (row.party == "Total") total = row.total;
    }
    CHECK(dem == 30 * 40);  // popularity 0.5 * 60 users * 40 days
    CHECK(rep > dem);       // the ramping party outtweets the flat one
    CHECK(total == dem + rep);

    CHECK(count_lines(slurp(c.out_dir + "/records.jsonl")) ==
          static_cast<int>(out.in_window));
    CHECK(fs::exists(c.out_dir + "/records/democratic/2020-10-01.jsonl"));
    CHECK(fs::exists(c.out_dir + "/records/republican/2020-11-09.jsonl"));
    const std::string csv = slurp(c.out_dir + "/counts_summary.csv");
    CHECK(csv.find("Democratic,") != std::string::npos);
    const auto summary = nlohmann::json::parse(slurp(c.out_dir + "/ingest_summary.json"));
    CHECK(summary.at("in_window").get<std::uint64_t>() == out.in_window);
    fs::remove_all(c.out_dir);
}

TEST_CASE("sentiment stage reproduces the planted polarity mix") {
    const PipelineConfig c = corpus_config("pipe_sent");
    const auto counts = run_sentiment_stats(c);
    for (const auto& row : counts) {
        if (row.party == "Democratic") {
            CHECK(std::abs(row.pct_positive() - 70.0) < 6.0);
            CHECK(std::abs(row.pct_negative() - 20.0) < 6.0);
        }
        if (row.party == "Republican") {
            CHECK(std::abs(row.pct_negative() - 50.0) < 6.0);
        }
    }
    const std::string csv = slurp(c.out_dir + "/sentiment_stats.csv");
    CHECK(csv.rfind("party,", 0) == 0);
    fs::remove_all(c.out_dir);
}

TEST_CASE("graph stage writes topology metrics and centrality tables") {
    const PipelineConfig c = corpus_config("pipe_graph");
    const GraphStatsOutcome out = run_graph_stats(c);
    CHECK(out.vertices > 0);
    CHECK(out.vertices <= 60);
    CHECK(out.edges > 0);
    CHECK(out.pagerank_iterations > 0);
    CHECK(out.clustering >= 0.0);

    const std::string centrality = slurp(c.out_dir + "/centrality.csv");
    CHECK(count_lines(centrality) == static_cast<int>(out.vertices) + 1);
    CHECK(centrality.rfind("user_id,pagerank", 0) == 0);
    CHECK(fs::exists(c.out_dir + "/edges.tsv"));
    CHECK(fs::exists(c.out_dir + "/top_centrality.csv"));
    CHECK(fs::exists(c.out_dir + "/betweenness.csv"));
    const auto stats = nlohmann::json::parse(slurp(c.out_dir + "/graph_stats.json"));
    CHECK(stats.at("vertices").get<std::int64_t>() == out.vertices);
    CHECK(stats.contains("average_path_length"));
    fs::remove_all(c.out_dir);
}

TEST_CASE("daily graph slicing tabulates per-day measures beside the cumulative ones") {
    PipelineConfig c = corpus_config("pipe_graph_daily");
    c.slice = GraphSlice::daily;
    const GraphStatsOutcome out = run_graph_stats(c);
    CHECK(out.daily_rows == 40);  // every synthetic day has tweets
    const std::string daily = slurp(c.out_dir + "/graph_stats_daily.csv");
    CHECK(daily.rfind("date,vertices,edges,", 0) == 0);
    CHECK(count_lines(daily) == 41);
    CHECK(daily.find("2020-10-01,") != std::string::npos);
    // the cumulative artifacts are still produced
    CHECK(fs::exists(c.out_dir + "/centrality.csv"));
    const auto stats = nlohmann::json::parse(slurp(c.out_dir + "/graph_stats.json"));
    CHECK(stats.at("daily_rows") == 40);
    fs::remove_all(c.out_dir);
}

TEST_CASE("score stage emits one series row per window day plus fits") {
    const PipelineConfig c = corpus_config("pipe_score");
    const ScoreOutcome out = run_score(c);
    REQUIRE(out.series.count("Democratic") == 1);
    REQUIRE(out.series.count("Republican") == 1);
    const MedianSeries& dem = out.series.at("Democratic");
    CHECK(dem.values.size() == 40);
    CHECK(dem.days.front() == *parse_date("2020-10-01"));
    CHECK(dem.days.back() == *parse_date("2020-11-09"));

    const std::string series_csv = slurp(c.out_dir + "/median_series_democratic.csv");
    CHECK(series_csv.rfind("date,party,median_mfs,sample_size", 0) == 0);
    CHECK(count_lines(series_csv) == 41);
    CHECK(fs::exists(c.out_dir + "/distances_democratic.csv"));
    CHECK(fs::exists(c.out_dir + "/student_t_fits_republican.csv"));
    CHECK(fs::exists(c.out_dir + "/median_series.svg"));
    CHECK(fs::exists(c.out_dir + "/score_summary.json"));
    fs::remove_all(c.out_dir);
}

TEST_CASE("score stage honors the mean statistic switch in filenames") {
    PipelineConfig c = corpus_config("pipe_score_mean");
    c.statistic = Statistic::mean;
    run_score(c);
    CHECK(fs::exists(c.out_dir + "/mean_series_democratic.csv"));
    CHECK(fs::exists(c.out_dir + "/mean_series.svg"));
    fs::remove_all(c.out_dir);
}

TEST_CASE("forecast stage saves loadable models and paired vote shares") {
    const PipelineConfig c = corpus_config("pipe_forecast");
    const ForecastOutcome out = run_forecast(c);
    REQUIRE(out.models.count("Democratic") == 1);
    REQUIRE(out.forecasts.count("Republican") == 1);
    CHECK(out.forecasts.at("Republican").size() == 1);  // default horizon

    REQUIRE(out.shares.size() == 2);
    const double sum = out.shares.at("Democratic") + out.shares.at("Republican");
    CHECK(std::abs(sum - 100.0) <= 1e-9);

    const FarimaModel reloaded = load_model(c.out_dir + "/model_democratic.json");
    const FarimaModel& fitted = out.models.at("Democratic");
    CHECK(reloaded.ar.size() == fitted.ar.size());
    CHECK(reloaded.ma.size() == fitted.ma.size());
    CHECK(reloaded.d == doctest::Approx(fitted.d));

    const std::string fc_csv = slurp(c.out_dir + "/forecast_democratic.csv");
    CHECK(fc_csv.rfind("horizon,value", 0) == 0);
    CHECK(count_lines(fc_csv) == 2);
    const std::string shares_csv = slurp(c.out_dir + "/vote_shares.csv");
    CHECK(shares_csv.rfind("party,share", 0) == 0);
    CHECK(count_lines(shares_csv) == 3);
    CHECK(!fs::exists(c.out_dir + "/forecast_track_democratic.csv"));  // track off
    CHECK(fs::exists(c.out_dir + "/forecast_democratic.svg"));
    fs::remove_all(c.out_dir);
}

TEST_CASE("forecast tracking replays expanding-window refits when enabled") {
    PipelineConfig c = corpus_config("pipe_track");
    c.forecast_track = true;
    c.farima_p = 1;  // fix a small order so 8 refits stay cheap
    c.farima_q = 0;
    run_forecast(c);
    const std::string track = slurp(c.out_dir + "/forecast_track_democratic.csv");
    CHECK(track.rfind("date,forecast,observed", 0) == 0);
    CHECK(count_lines(track) == 1 + (40 - 32));  // one row per day beyond the burn-in
    fs::remove_all(c.out_dir);
}

TEST_CASE("baselines stage compares the configured pair three ways") {
    const PipelineConfig c = corpus_config("pipe_base");
    const BaselinesOutcome out = run_baselines(c);
    CHECK(out.counts_a.party == "Democratic");
    CHECK(out.counts_b.party == "Republican");
    REQUIRE(out.actual_sentiment.has_value());
    REQUIRE(out.popularity.has_value());
    REQUIRE(out.cross_negative.has_value());
    const auto& norm = out.actual_sentiment->normalized;
    CHECK(std::abs(norm.at("Democratic") + norm.at("Republican") - 100.0) <= 1e-9);
    // the positive-heavy party should win the sentiment baseline
    CHECK(norm.at("Democratic") > norm.at("Republican"));
    // cross-negative also rewards the party drawing fewer negatives
    CHECK(out.cross_negative->at("Democratic") > out.cross_negative->at("Republican"));

    const std::string csv = slurp(c.out_dir + "/baselines.csv");
    CHECK(csv.rfind("method,party,share", 0) == 0);
    CHECK(count_lines(csv) == 1 + 4 * 2);  // raw + three baselines, two parties each
    fs::remove_all(c.out_dir);
}

TEST_CASE("baseline toggles drop rows instead of writing zeros") {
    PipelineConfig c = corpus_config("pipe_base_toggle");
    c.baseline_popularity = false;
    c.baseline_cross_negative = false;
    const BaselinesOutcome out = run_baselines(c);
    CHECK(out.actual_sentiment.has_value());
    CHECK(!out.popularity.has_value());
    CHECK(!out.cross_negative.has_value());
    const std::string csv = slurp(c.out_dir + "/baselines.csv");
    CHECK(csv.find("popularity") == std::string::npos);
    fs::remove_all(c.out_dir);
}

TEST_CASE("evaluation reproduces the published 2020 comparison") {
    PipelineConfig c = load_pipeline_config(data_file("config_evaluate_us2020.json"));
    // the bundled config addresses its inputs relative to the repo root
    c.counts_file = data_file("us2020_observed_counts.json");
    c.reference = data_file("reference_us2020.json");
    c.out_dir = temp_path("pipe_eval");
    const EvaluationOutcome out = run_evaluate(c);

    CHECK(out.actual.at("Democratic") == doctest::Approx(51.40));
    CHECK(out.shares_by_method.at("multifactor").at("Democratic") ==
          doctest::Approx(50.728).epsilon(1e-4));
    const auto mean_mae = [&](const char* method) { return out.mae_by_method.at(method).mean; };
    CHECK(std::abs(mean_mae("multifactor") - 1.52) <= 0.01);
    CHECK(std::abs(mean_mae("polls") - 2.15) <= 0.01);
    CHECK(std::abs(mean_mae("actual_sentiment") - 54.80) <= 0.01);
    CHECK(std::abs(mean_mae("popularity") - 26.44) <= 0.01);
    CHECK(std::abs(mean_mae("cross_negative") - 2.71) <= 0.01);

    const std::string csv = slurp(c.out_dir + "/evaluation.csv");
    CHECK(csv.rfind("method,Democratic,Republican", 0) == 0);
    CHECK(csv.find("actual,51.4,46.9,,,") != std::string::npos);
    fs::remove_all(c.out_dir);
}

TEST_CASE("evaluation without forecasts points at the missing stage") {
    PipelineConfig c = corpus_config("pipe_eval_missing");
    c.forecast_values.reset();
    CHECK_THROWS_AS(run_evaluate(c), ConfigError);
    fs::remove_all(c.out_dir);
}

TEST_CASE("cli generates corpora deterministically across invocations") {
    const std::string spec = write_file(temp_path("cli_spec.json"), R"({
        "n_users": 40, "n_days": 6, "start_day": "2020-10-01", "seed": 3,
        "parties": [
          {"name": "Democratic", "marker": "Biden", "popularity": 0.5,
           "sentiment_mix": {"pos": 0.6, "neg": 0.2}},
          {"name": "Republican", "marker": "Trump", "popularity": 0.5,
           "sentiment_mix": {"pos": 0.4, "neg": 0.4}}]})");
    const std::string c1 = temp_path("cli_corpus1.jsonl");
    const std::string c2 = temp_path("cli_corpus2.jsonl");
    std::string stdout_text;
    REQUIRE(run_cli("synth --config " + spec + " --out " + c1, &stdout_text) == 0);
    const auto summary = nlohmann::json::parse(stdout_text);
    CHECK(summary.at("users") == 40);
    CHECK(summary.at("expected_ordering").size() == 1);  // equal popularity ties
    REQUIRE(run_cli("synth --config " + spec + " --out " + c2) == 0);
    CHECK(slurp(c1) == slurp(c2));

    // --seed overrides the spec
    REQUIRE(run_cli("synth --config " + spec + " --out " + c2 + " --seed 99") == 0);
    CHECK(slurp(c1) != slurp(c2));
    for (const auto& f : {spec, c1, c2}) fs::remove(f);
}

TEST_CASE("cli ingest runs end to end and reruns byte-identically") {
    const std::string out1 = temp_path("cli_out1");
    const std::string out2 = temp_path("cli_out2");
    const std::string cfg = write_file(temp_path("cli_cfg.json"), R"({
        "corpus": ")" + shared_corpus() + R"(",
        "lexicon": ")" + data_file("test_lexicon.tsv") + R"(",
        "keywords": ")" + data_file("keywords_us2020.json") + R"(",
        "window": {"start": "2020-10-01", "end": "2020-11-09"}})");
    std::string stdout_text;
    REQUIRE(run_cli("ingest --config " + cfg + " --out " + out1, &stdout_text) == 0);
    const auto summary = nlohmann::json::parse(stdout_text);
    CHECK(summary.at("in_window").get<std::int64_t>() > 0);
    CHECK(summary.at("malformed") == 0);
    REQUIRE(run_cli("ingest --config " + cfg + " --out " + out2) == 0);
    CHECK(slurp(out1 + "/records.jsonl") == slurp(out2 + "/records.jsonl"));
    CHECK(slurp(out1 + "/counts_summary.csv") == slurp(out2 + "/counts_summary.csv"));

    // --window narrows the analysis without touching the config file
    REQUIRE(run_cli("ingest --config " + cfg + " --out " + out2 +
                    " --window 2020-10-01:2020-10-05", &stdout_text) == 0);
    const auto narrowed = nlohmann::json::parse(stdout_text);
    CHECK(narrowed.at("in_window").get<std::int64_t>() <
          summary.at("in_window").get<std::int64_t>());

    // --slice daily adds the per-day topology table
    REQUIRE(run_cli("graph-stats --config " + cfg + " --out " + out2 + " --slice daily",
                    &stdout_text) == 0);
    CHECK(nlohmann::json::parse(stdout_text).at("daily_rows") == 40);
    CHECK(fs::exists(out2 + "/graph_stats_daily.csv"));
    fs::remove(cfg);
    fs::remove_all(out1);
    fs::remove_all(out2);
}

TEST_CASE("cli maps error classes to machine-readable stderr and exit codes") {
    std::string err;
    CHECK(run_cli("ingest --config " + temp_path("missing_config.json"), nullptr, &err) == 1);
    auto parsed = nlohmann::json::parse(err);
    CHECK(parsed.at("error") == "io");

    CHECK(run_cli("ingest", nullptr, &err) == 2);  // --config is required
    parsed = nlohmann::json::parse(err);
    CHECK(parsed.at("error") == "usage");

    CHECK(run_cli("ingest --config x.json --no-such-flag", nullptr, &err) == 2);
    parsed = nlohmann::json::parse(err);
    CHECK(parsed.at("error") == "usage");
    CHECK(parsed.at("message").get<std::string>().find("--no-such-flag") != std::string::npos);

    const std::string bad = write_file(temp_path("cli_bad_cfg.json"), "{broken");
    CHECK(run_cli("score --config " + bad, nullptr, &err) == 1);
    parsed = nlohmann::json::parse(err);
    CHECK(parsed.at("error") == "config");
    fs::remove(bad);
}

TEST_SUITE_END();
