#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "mfscast/errors.hpp"
#include "mfscast/pipeline.hpp"
#include "mfscast/synth.hpp"

namespace {

using nlohmann::json;

mfs::AnalysisWindow parse_window_arg(const std::string& arg) {
    const auto colon = arg.find(':');
    if (colon == std::string::npos)
        throw mfs::ConfigError("--window expects START:END (YYYY-MM-DD each)");
    const auto start = mfs::parse_date(arg.substr(0, colon));
    const auto end = mfs::parse_date(arg.substr(colon + 1));
    if (!start || !end) throw mfs::ConfigError("--window dates must be YYYY-MM-DD");
    const mfs::AnalysisWindow w{*start, *end};
    if (!w.valid()) throw mfs::ConfigError("--window start lies after its end");
    return w;
}

json counts_rows(const std::vector<mfs::PartyCounts>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"party", r.party},
                       {"total", r.total},
                       {"positive", r.positive},
                       {"negative", r.negative},
                       {"neutral", r.neutral}});
    return arr;
}

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::string window_arg;
    long long seed = -1;
    bool seed_set = false;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path, "pipeline config JSON")->required();
    sub->add_option("--out", args.out_dir, "output directory (overrides config)");
    sub->add_option("--window", args.window_arg, "analysis window START:END (overrides config)");
    sub->add_option("--seed", args.seed, "random seed (used by synth)")
        ->each([&args](const std::string&) { args.seed_set = true; });
}

mfs::PipelineConfig config_for(const CommonArgs& args) {
    mfs::PipelineConfig c = mfs::load_pipeline_config(args.config_path);
    if (!args.out_dir.empty()) c.out_dir = args.out_dir;
    if (!args.window_arg.empty()) c.window = parse_window_arg(args.window_arg);
    return c;
}

void emit(const json& summary) { std::cout << summary.dump() << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multifactor social-media election forecasting pipeline"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string synth_out = "synth_corpus.jsonl";
    std::string slice_arg;

    CLI::App* ingest = app.add_subcommand("ingest", "parse, tag and store the corpus");
    CLI::App* sentiment =
        app.add_subcommand("sentiment-stats", "per-party tweet and polarity counts");
    CLI::App* graph = app.add_subcommand("graph-stats", "interaction graph and centrality");
    CLI::App* score = app.add_subcommand("score", "daily score distributions and series");
    CLI::App* fc = app.add_subcommand("forecast", "fit models and forecast vote shares");
    CLI::App* baselines = app.add_subcommand("baselines", "literature baseline predictors");
    CLI::App* evaluate = app.add_subcommand("evaluate", "compare methods against the reference");
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic corpus");
    for (CLI::App* sub : {ingest, sentiment, graph, score, fc, baselines, evaluate})
        add_common(sub, args);
    graph->add_option("--slice", slice_arg, "measure one cumulative graph or one per day")
        ->check(CLI::IsMember({"window", "daily"}));
    synth->add_option("--config", args.config_path, "corpus spec JSON")->required();
    synth->add_option("--out", synth_out, "output corpus file");
    synth->add_option("--seed", args.seed, "random seed (overrides the spec)")
        ->each([&args](const std::string&) { args.seed_set = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        json err{{"error", "usage"}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return 2;
    }

    try {
        if (synth->parsed()) {
            mfs::CorpusSpec spec = mfs::load_corpus_spec(args.config_path);
            if (args.seed_set) spec.seed = static_cast<std::uint64_t>(args.seed);
            mfs::generate_corpus_file(spec, synth_out);
            json ordering = json::array();
            for (const auto& group : mfs::expected_ordering(spec)) ordering.push_back(group);
            emit({{"file", synth_out},
                  {"seed", spec.seed},
                  {"users", spec.n_users},
                  {"days", spec.n_days},
                  {"expected_ordering", ordering}});
            return 0;
        }

        const mfs::PipelineConfig config = config_for(args);
        if (ingest->parsed()) {
            const auto out = mfs::run_ingest(config);
            emit({{"in_window", out.in_window},
                  {"tagged", out.tagged},
                  {"malformed", out.stats.malformed},
                  {"self_messages", out.stats.self_messages},
                  {"duplicates", out.stats.duplicates},
                  {"dropped_multiparty", out.dropped_multiparty},
                  {"counts", counts_rows(out.counts)}});
        } else if (sentiment->parsed()) {
            emit({{"counts", counts_rows(mfs::run_sentiment_stats(config))}});
        } else if (graph->parsed()) {
            mfs::PipelineConfig sliced = config;
            if (!slice_arg.empty())
                sliced.slice =
                    slice_arg == "daily" ? mfs::GraphSlice::daily : mfs::GraphSlice::window;
            const auto out = mfs::run_graph_stats(sliced);
            json j{{"vertices", out.vertices},
                   {"edges", out.edges},
                   {"spectral_radius", out.spectral_radius},
                   {"pagerank_iterations", out.pagerank_iterations},
                   {"reachable_pairs", out.path_length.reachable_pairs},
                   {"global_clustering", out.clustering}};
            if (sliced.slice == mfs::GraphSlice::daily) j["daily_rows"] = out.daily_rows;
            j["average_path_length"] =
                out.path_length.mean ? json(*out.path_length.mean) : json(nullptr);
            emit(j);
        } else if (score->parsed()) {
            const auto out = mfs::run_score(config);
            json parties = json::array();
            for (const auto& [party, series] : out.series)
                parties.push_back({{"party", party},
                                   {"days", series.days.size()},
                                   {"interpolated_days", series.interpolated_days}});
            emit({{"series", parties}});
        } else if (fc->parsed()) {
            const auto out = mfs::run_forecast(config);
            json models;
            for (const auto& [party, model] : out.models)
                models[party] = {{"p", model.ar.size()},
                                 {"q", model.ma.size()},
                                 {"d", model.d},
                                 {"sigma2", model.sigma2}};
            emit({{"shares", out.shares}, {"models", models}});
        } else if (baselines->parsed()) {
            const auto out = mfs::run_baselines(config);
            json j;
            if (out.actual_sentiment) {
                j["actual_sentiment_raw"] = out.actual_sentiment->raw;
                j["actual_sentiment"] = out.actual_sentiment->normalized;
            }
            if (out.popularity) j["popularity"] = *out.popularity;
            if (out.cross_negative) j["cross_negative"] = *out.cross_negative;
            emit(j);
        } else if (evaluate->parsed()) {
            const auto out = mfs::run_evaluate(config);
            json j{{"actual", out.actual}};
            for (const auto& [method, shares] : out.shares_by_method) {
                j["shares"][method] = shares;
                j["mae"][method] = out.mae_by_method.at(method).mean;
            }
            emit(j);
        }
        return 0;
    } catch (const mfs::Error& e) {
        json err{{"error", e.kind()}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        json err{{"error", "internal"}, {"message", e.what()}};
        std::cerr << err.dump() << '\n';
        return 1;
    }
}
