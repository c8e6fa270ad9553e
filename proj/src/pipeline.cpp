#include "mfscast/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "mfscast/errors.hpp"
#include "mfscast/io.hpp"
#include "mfscast/keywords.hpp"
#include "mfscast/sentiment.hpp"

namespace mfs {

namespace fs = std::filesystem;

namespace {

AnalysisWindow window_of_json(const nlohmann::json& j) {
    const auto start = parse_date(j.at("start").get<std::string>());
    const auto end = parse_date(j.at("end").get<std::string>());
    if (!start || !end) throw ConfigError("window dates must be YYYY-MM-DD");
    const AnalysisWindow w{*start, *end};
    if (!w.valid()) throw ConfigError("window start lies after its end");
    return w;
}

std::string series_label(Statistic s) { return s == Statistic::median ? "median" : "mean"; }

std::string sanitize(const PartyId& party) {
    std::string out;
    for (char c : party)
        out += (std::isalnum(static_cast<unsigned char>(c)) != 0) ? static_cast<char>(std::tolower(
                                                                        static_cast<unsigned char>(c)))
                                                                  : '_';
    return out;
}

std::string path_in(const PipelineConfig& c, const std::string& name) {
    return (fs::path(c.out_dir) / name).string();
}

// everything downstream commands share: window-filtered, tagged, scored records
struct LoadedCorpus {
    std::vector<TweetRecord> records;
    ParseStats stats;
    std::uint64_t in_window = 0;
    std::uint64_t tagged = 0;
    std::uint64_t dropped_multiparty = 0;
    std::vector<PartyId> party_names;
};

LoadedCorpus load_and_prepare(const PipelineConfig& c) {
    if (!c.window.valid()) throw ConfigError("invalid analysis window");
    const KeywordTable table = KeywordTable::load(c.keywords);
    const Lexicon lexicon = Lexicon::load(c.lexicon);
    ParseResult parsed = parse_tweet_file(c.corpus);

    LoadedCorpus out;
    out.stats = parsed.stats;
    out.party_names = table.parties();
    out.records.reserve(parsed.records.size());
    for (auto& r : parsed.records)
        if (c.window.contains(r.day())) out.records.push_back(std::move(r));
    out.in_window = out.records.size();

    for (auto& r : out.records) {
        if (r.party_tags.empty()) {
            const auto tags = match_party(r.text, table);
            r.party_tags.assign(tags.begin(), tags.end());
        }
    }
    if (c.drop_multiparty) {
        const auto before = out.records.size();
        std::erase_if(out.records,
                      [](const TweetRecord& r) { return r.party_tags.size() > 1; });
        out.dropped_multiparty = before - out.records.size();
    }
    for (const auto& r : out.records)
        if (!r.party_tags.empty()) ++out.tagged;

    score_records(out.records, lexicon);
    return out;
}

std::vector<PartyCounts> tally_counts(const LoadedCorpus& data) {
    std::vector<PartyCounts> rows;
    PartyCounts total;
    total.party = "Total";
    for (const auto& party : data.party_names) {
        PartyCounts c = party_counts(data.records, party);
        total.total += c.total;
        total.positive += c.positive;
        total.negative += c.negative;
        total.neutral += c.neutral;
        rows.push_back(std::move(c));
    }
    rows.push_back(total);
    return rows;
}

std::string counts_csv(const std::vector<PartyCounts>& rows, bool with_percentages) {
    std::string csv = "party,total,positive,negative,neutral";
    if (with_percentages) csv += ",pct_positive,pct_negative,pct_neutral";
    csv += '\n';
    for (const auto& r : rows) {
        csv += r.party + ',' + std::to_string(r.total) + ',' + std::to_string(r.positive) + ',' +
               std::to_string(r.negative) + ',' + std::to_string(r.neutral);
        if (with_percentages)
            csv += ',' + format_double(r.pct_positive()) + ',' + format_double(r.pct_negative()) +
                   ',' + format_double(r.pct_neutral());
        csv += '\n';
    }
    return csv;
}

// graph + centrality, shared by graph-stats / score / forecast
struct ScoredGraph {
    InteractionGraph graph;
    CentralityScores centrality;
};

ScoredGraph centrality_of(const LoadedCorpus& data, const PipelineConfig& c) {
    ScoredGraph sg;
    sg.graph = build_graph(data.records);
    if (sg.graph.n_vertices() == 0)
        throw DegenerateError("no users in the analysis window; graph is empty");
    sg.centrality = pagerank(sg.graph, c.pagerank);
    return sg;
}

MedianSeries series_for_party(const std::map<Date, std::vector<TweetRecord>>& buckets,
                              const ScoredGraph& sg, const PipelineConfig& c,
                              const PartyId& party,
                              std::vector<DailyDistribution>* keep_distributions = nullptr) {
    auto dists =
        daily_distributions(buckets, sg.graph, sg.centrality, party, c.window, c.coefficient);
    MedianSeries series = median_series(dists, c.statistic);
    if (keep_distributions) *keep_distributions = std::move(dists);
    return series;
}

std::string series_csv(const MedianSeries& series, Statistic statistic) {
    std::string csv = "date,party," + series_label(statistic) + "_mfs,sample_size\n";
    for (std::size_t i = 0; i < series.days.size(); ++i)
        csv += format_date(series.days[i]) + ',' + series.party + ',' +
               format_double(series.values[i]) + ',' + std::to_string(series.sample_sizes[i]) +
               '\n';
    return csv;
}

FarimaModel fit_series(const PipelineConfig& c, std::span<const double> values) {
    if (c.farima_p < 0 || c.farima_q < 0) return fit_farima_auto(values, c.truncation);
    return fit_farima(values, c.farima_p, c.farima_q, c.truncation);
}

}  // namespace

PipelineConfig load_pipeline_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config is not valid JSON: " + path);
    try {
        PipelineConfig c;
        c.corpus = j.at("corpus").get<std::string>();
        c.lexicon = j.at("lexicon").get<std::string>();
        c.keywords = j.at("keywords").get<std::string>();
        c.out_dir = j.value("out_dir", c.out_dir);
        c.window = window_of_json(j.at("window"));
        c.drop_multiparty = j.value("drop_multiparty", false);
        const std::string stat = j.value("statistic", "median");
        if (stat == "median")
            c.statistic = Statistic::median;
        else if (stat == "mean")
            c.statistic = Statistic::mean;
        else
            throw ConfigError("statistic must be \"median\" or \"mean\"");
        c.coefficient = j.value("coefficient", c.coefficient);
        const std::string slice = j.value("slice", "window");
        if (slice == "window")
            c.slice = GraphSlice::window;
        else if (slice == "daily")
            c.slice = GraphSlice::daily;
        else
            throw ConfigError("slice must be \"window\" or \"daily\"");

        if (j.contains("pagerank")) {
            const auto& p = j["pagerank"];
            c.pagerank.alpha = p.value("alpha", c.pagerank.alpha);
            c.pagerank.tolerance = p.value("tolerance", c.pagerank.tolerance);
            c.pagerank.max_iterations = p.value("max_iterations", c.pagerank.max_iterations);
            c.pagerank.weighted = p.value("weighted", c.pagerank.weighted);
            if (p.contains("beta")) c.pagerank.beta = p["beta"].get<double>();
        }
        if (j.contains("farima")) {
            const auto& f = j["farima"];
            c.farima_p = f.value("p", c.farima_p);
            c.farima_q = f.value("q", c.farima_q);
            c.truncation = f.value("K", c.truncation);
            c.horizon = f.value("horizon", c.horizon);
            c.forecast_track = f.value("track", c.forecast_track);
            if (f.contains("track_start")) {
                const auto day = parse_date(f["track_start"].get<std::string>());
                if (!day) throw ConfigError("farima.track_start must be YYYY-MM-DD");
                c.track_start = *day;
            }
        }
        if (c.horizon < 1) throw ConfigError("farima.horizon must be >= 1");
        if (c.truncation < 1) throw ConfigError("farima.K must be >= 1");

        if (j.contains("parties")) {
            const auto& p = j["parties"];
            if (!p.is_array() || p.size() != 2)
                throw ConfigError("parties must list exactly the two compared parties");
            c.parties = {p.at(0).get<std::string>(), p.at(1).get<std::string>()};
        }
        c.reference = j.value("reference", c.reference);
        if (j.contains("baselines")) {
            const auto& b = j["baselines"];
            c.baseline_actual_sentiment = b.value("actual_sentiment", true);
            c.baseline_popularity = b.value("popularity", true);
            c.baseline_cross_negative = b.value("cross_negative", true);
        }
        if (j.contains("evaluate")) {
            const auto& e = j["evaluate"];
            c.counts_file = e.value("counts", c.counts_file);
            if (e.contains("forecasts")) {
                const auto& f = e["forecasts"];
                c.forecast_values = {{f.at(c.parties.first).get<double>(),
                                      f.at(c.parties.second).get<double>()}};
            }
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
}

IngestOutcome run_ingest(const PipelineConfig& c) {
    const LoadedCorpus data = load_and_prepare(c);
    fs::create_directories(c.out_dir);

    {
        std::ofstream store(path_in(c, "records.jsonl"), std::ios::binary);
        if (!store) throw IoError("cannot write record store");
        for (const auto& r : data.records) store << record_to_json_line(r) << '\n';
        if (!store) throw IoError("failed writing record store");
    }
    for (const auto& party : data.party_names) {
        const fs::path dir = fs::path(c.out_dir) / "records" / sanitize(party);
        fs::create_directories(dir);
        std::map<Date, std::string> per_day;
        for (const auto& r : data.records)
            if (std::binary_search(r.party_tags.begin(), r.party_tags.end(), party))
                per_day[r.day()] += record_to_json_line(r) + '\n';
        for (const auto& [day, text] : per_day)
            write_text_file((dir / (format_date(day) + ".jsonl")).string(), text);
    }

    IngestOutcome out;
    out.stats = data.stats;
    out.in_window = data.in_window;
    out.tagged = data.tagged;
    out.dropped_multiparty = data.dropped_multiparty;
    out.counts = tally_counts(data);
    write_text_file(path_in(c, "counts_summary.csv"), counts_csv(out.counts, false));

    nlohmann::json j;
    j["malformed"] = out.stats.malformed;
    j["self_messages"] = out.stats.self_messages;
    j["duplicates"] = out.stats.duplicates;
    j["in_window"] = out.in_window;
    j["tagged"] = out.tagged;
    j["dropped_multiparty"] = out.dropped_multiparty;
    write_text_file(path_in(c, "ingest_summary.json"), j.dump(2) + "\n");
    return out;
}

std::vector<PartyCounts> run_sentiment_stats(const PipelineConfig& c) {
    const LoadedCorpus data = load_and_prepare(c);
    fs::create_directories(c.out_dir);
    auto counts = tally_counts(data);
    write_text_file(path_in(c, "sentiment_stats.csv"), counts_csv(counts, true));
    return counts;
}

GraphStatsOutcome run_graph_stats(const PipelineConfig& c) {
    const LoadedCorpus data = load_and_prepare(c);
    fs::create_directories(c.out_dir);
    const ScoredGraph sg = centrality_of(data, c);
    const auto& g = sg.graph;

    GraphStatsOutcome out;
    out.vertices = g.n_vertices();
    out.edges = g.n_edges();
    out.spectral_radius = spectral_radius(g, c.pagerank.weighted);
    out.pagerank_iterations = sg.centrality.iterations_used;
    out.path_length = average_path_length(g);
    out.clustering = global_clustering(g);

    g.save_edge_list(path_in(c, "edges.tsv"));
    {
        std::string csv = "user_id,pagerank\n";
        for (InteractionGraph::Index i = 0; i < g.n_vertices(); ++i)
            csv += std::to_string(g.vertex_id(i)) + ',' +
                   format_double(sg.centrality.values[i]) + '\n';
        write_text_file(path_in(c, "centrality.csv"), csv);
    }
    {
        std::string csv = "user_id,pagerank\n";
        for (UserId id : top_k_by_centrality(g, sg.centrality, 100))
            csv += std::to_string(id) + ',' +
                   format_double(sg.centrality.of(g, id)) + '\n';
        write_text_file(path_in(c, "top_centrality.csv"), csv);
    }
    {
        const auto bc = vertex_betweenness(g);
        std::string csv = "user_id,betweenness\n";
        for (InteractionGraph::Index i = 0; i < g.n_vertices(); ++i)
            csv += std::to_string(g.vertex_id(i)) + ',' + format_double(bc[i]) + '\n';
        write_text_file(path_in(c, "betweenness.csv"), csv);
    }
    if (c.slice == GraphSlice::daily) {
        std::string csv =
            "date,vertices,edges,spectral_radius,average_path_length,reachable_pairs,"
            "global_clustering\n";
        for (const auto& [day, day_records] : bucket_by_day(data.records, c.window)) {
            const InteractionGraph dg = InteractionGraph::from_records(day_records);
            if (dg.n_vertices() == 0) continue;
            const PathLengthStats pl = average_path_length(dg);
            csv += format_date(day) + ',' + std::to_string(dg.n_vertices()) + ',' +
                   std::to_string(dg.n_edges()) + ',' +
                   format_double(spectral_radius(dg, c.pagerank.weighted)) + ',' +
                   (pl.mean ? format_double(*pl.mean) : std::string()) + ',' +
                   std::to_string(pl.reachable_pairs) + ',' +
                   format_double(global_clustering(dg)) + '\n';
            ++out.daily_rows;
        }
        write_text_file(path_in(c, "graph_stats_daily.csv"), csv);
    }

    nlohmann::json j;
    j["vertices"] = out.vertices;
    j["edges"] = out.edges;
    j["spectral_radius"] = out.spectral_radius;
    j["pagerank_iterations"] = out.pagerank_iterations;
    j["pagerank_residual"] = sg.centrality.residual;
    if (out.path_length.mean)
        j["average_path_length"] = *out.path_length.mean;
    else
        j["average_path_length"] = nullptr;
    j["reachable_pairs"] = out.path_length.reachable_pairs;
    j["global_clustering"] = out.clustering;
    if (c.slice == GraphSlice::daily) j["daily_rows"] = out.daily_rows;
    write_text_file(path_in(c, "graph_stats.json"), j.dump(2) + "\n");
    return out;
}

ScoreOutcome run_score(const PipelineConfig& c) {
    const LoadedCorpus data = load_and_prepare(c);
    fs::create_directories(c.out_dir);
    const ScoredGraph sg = centrality_of(data, c);
    const auto buckets = bucket_by_day(data.records, c.window);
    const std::string label = series_label(c.statistic);

    ScoreOutcome out;
    std::vector<ChartSeries> chart;
    nlohmann::json summary;
    for (const auto& party : data.party_names) {
        std::vector<DailyDistribution> dists;
        MedianSeries series;
        try {
            series = series_for_party(buckets, sg, c, party, &dists);
        } catch (const DegenerateError&) {
            summary["skipped_parties"].push_back(party);
            continue;  // party never active in the window
        }
        const std::string stem = sanitize(party);
        write_text_file(path_in(c, label + "_series_" + stem + ".csv"),
                        series_csv(series, c.statistic));

        // distances over the observed (non-empty) days only
        std::vector<DailyDistribution> observed;
        for (auto& d : dists)
            if (!d.sample.empty()) observed.push_back(std::move(d));
        const auto matrix = distance_matrix(observed);
        std::string csv = "date";
        for (const auto& d : observed) csv += ',' + format_date(d.day);
        csv += '\n';
        for (std::size_t i = 0; i < observed.size(); ++i) {
            csv += format_date(observed[i].day);
            for (std::size_t k = 0; k < observed.size(); ++k)
                csv += ',' + format_double(matrix[i][k]);
            csv += '\n';
        }
        write_text_file(path_in(c, "distances_" + stem + ".csv"), csv);

        std::string fits = "date,nu,location,scale,log_likelihood\n";
        for (const auto& d : observed) {
            if (d.sample.size() < 8) continue;
            try {
                const StudentTFit fit = fit_student_t(d.sample);
                fits += format_date(d.day) + ',' + format_double(fit.degrees_of_freedom) + ',' +
                        format_double(fit.location) + ',' + format_double(fit.scale) + ',' +
                        format_double(fit.log_likelihood) + '\n';
            } catch (const DegenerateError&) {
                // a day where everyone scored identically has no spread to fit
            }
        }
        write_text_file(path_in(c, "student_t_fits_" + stem + ".csv"), fits);

        summary["interpolated_days"][party] = series.interpolated_days;
        chart.push_back({party, series.values});
        out.series.emplace(party, std::move(series));
    }
    if (out.series.empty()) throw DegenerateError("no party has any scored user in the window");
    write_text_file(path_in(c, label + "_series.svg"),
                    svg_line_chart(label + " multifactor score by day", chart));
    write_text_file(path_in(c, "score_summary.json"), summary.dump(2) + "\n");
    return out;
}

ForecastOutcome run_forecast(const PipelineConfig& c) {
    const LoadedCorpus data = load_and_prepare(c);
    fs::create_directories(c.out_dir);
    const ScoredGraph sg = centrality_of(data, c);
    const auto buckets = bucket_by_day(data.records, c.window);
    const std::string label = series_label(c.statistic);

    ForecastOutcome out;
    nlohmann::json summary;
    for (const auto& party : data.party_names) {
        MedianSeries series;
        try {
            series = series_for_party(buckets, sg, c, party);
        } catch (const DegenerateError&) {
            summary["skipped_parties"].push_back(party);
            continue;
        }
        const std::string stem = sanitize(party);
        write_text_file(path_in(c, label + "_series_" + stem + ".csv"),
                        series_csv(series, c.statistic));

        const FarimaModel model = fit_series(c, series.values);
        save_model(path_in(c, "model_" + stem + ".json"), model);
        const auto fc = forecast(model, series.values, c.horizon);
        std::string csv = "horizon,value\n";
        for (int h = 0; h < c.horizon; ++h)
            csv += std::to_string(h + 1) + ',' + format_double(fc[h]) + '\n';
        write_text_file(path_in(c, "forecast_" + stem + ".csv"), csv);

        if (c.forecast_track) {
            int first = 32;
            if (c.track_start) {
                first = c.track_start->days_since_epoch - c.window.start_day.days_since_epoch;
                if (first < 1 || first >= static_cast<int>(series.values.size()))
                    throw ConfigError("track_start must fall inside the analysis window");
            }
            std::string track = "date,forecast,observed\n";
            for (int t = first; t < static_cast<int>(series.values.size()); ++t) {
                const std::span<const double> prefix{series.values.data(),
                                                     static_cast<std::size_t>(t)};
                try {
                    const FarimaModel m = fit_series(c, prefix);
                    const double step = forecast(m, prefix, 1)[0];
                    track += format_date(series.days[t]) + ',' + format_double(step) + ',' +
                             format_double(series.values[t]) + '\n';
                } catch (const Error&) {
                    // prefix too short or degenerate; the track starts later
                }
            }
            write_text_file(path_in(c, "forecast_track_" + stem + ".csv"), track);
        }

        std::vector<ChartSeries> chart{{party, series.values}, {"forecast", {}}};
        chart[1].values.assign(series.values.begin(), series.values.end());
        chart[1].values.insert(chart[1].values.end(), fc.begin(), fc.end());
        write_text_file(path_in(c, "forecast_" + stem + ".svg"),
                        svg_line_chart(label + " series and forecast: " + party, chart));

        summary["interpolated_days"][party] = series.interpolated_days;
        summary["d_clamped"][party] = model.d_clamped;
        out.models.emplace(party, model);
        out.forecasts.emplace(party, fc);
    }

    const auto fa = out.forecasts.find(c.parties.first);
    const auto fb = out.forecasts.find(c.parties.second);
    if (fa == out.forecasts.end() || fb == out.forecasts.end())
        throw DegenerateError("both compared parties need a forecast; check keywords and window");
    out.shares = vote_share_from_forecasts(c.parties.first, fa->second[0], c.parties.second,
                                           fb->second[0]);
    std::string csv = "party,share\n";
    for (const auto& [party, share] : out.shares)
        csv += party + ',' + format_double(share) + '\n';
    write_text_file(path_in(c, "vote_shares.csv"), csv);
    write_text_file(path_in(c, "forecast_summary.json"), summary.dump(2) + "\n");
    return out;
}

BaselinesOutcome run_baselines(const PipelineConfig& c) {
    const LoadedCorpus data = load_and_prepare(c);
    fs::create_directories(c.out_dir);

    BaselinesOutcome out;
    out.counts_a = party_counts(data.records, c.parties.first);
    out.counts_b = party_counts(data.records, c.parties.second);

    std::string csv = "method,party,share\n";
    nlohmann::json j;
    const auto add = [&](const std::string& method, const VoteShares& shares) {
        for (const auto& [party, share] : shares) {
            csv += method + ',' + party + ',' + format_double(share) + '\n';
            j["shares"][method][party] = share;
        }
    };
    if (c.baseline_actual_sentiment) {
        out.actual_sentiment = baseline_actual_sentiment(out.counts_a, out.counts_b);
        add("actual_sentiment_raw", out.actual_sentiment->raw);
        add("actual_sentiment", out.actual_sentiment->normalized);
    }
    if (c.baseline_popularity) {
        out.popularity = baseline_popularity(out.counts_a, out.counts_b);
        add("popularity", *out.popularity);
    }
    if (c.baseline_cross_negative) {
        out.cross_negative = baseline_cross_negative(out.counts_a, out.counts_b);
        add("cross_negative", *out.cross_negative);
    }
    j["notes"] = {"cross_negative divides by positive + negative counts, excluding neutrals",
                  "actual_sentiment reports raw margins and the sum-normalized shares"};
    write_text_file(path_in(c, "baselines.csv"), csv);
    write_text_file(path_in(c, "baselines.json"), j.dump(2) + "\n");
    return out;
}

namespace {

PartyCounts counts_from_json(const nlohmann::json& j, const PartyId& party,
                             const std::string& path) {
    if (!j.contains(party))
        throw ConfigError("counts file " + path + " lacks party " + party);
    const auto& p = j.at(party);
    PartyCounts c;
    c.party = party;
    c.total = p.at("total").get<std::uint64_t>();
    c.positive = p.at("positive").get<std::uint64_t>();
    c.negative = p.at("negative").get<std::uint64_t>();
    c.neutral = p.at("neutral").get<std::uint64_t>();
    return c;
}

double forecast_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("no forecast found at " + path +
                          "; run the forecast step first or configure evaluate.forecasts");
    std::string header, line;
    std::getline(in, header);
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string horizon, value;
        if (std::getline(row, horizon, ',') && std::getline(row, value) && horizon == "1")
            return std::stod(value);
    }
    throw ParseError("forecast file " + path + " has no horizon-1 row");
}

}  // namespace

EvaluationOutcome run_evaluate(const PipelineConfig& c) {
    fs::create_directories(c.out_dir);
    const ReferenceResults ref =
        c.reference.empty() ? ReferenceResults::us2020() : load_reference(c.reference);

    PartyCounts a, b;
    if (!c.counts_file.empty()) {
        std::ifstream in(c.counts_file);
        if (!in) throw IoError("cannot open counts file: " + c.counts_file);
        nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded())
            throw ParseError("counts file is not valid JSON: " + c.counts_file);
        a = counts_from_json(j, c.parties.first, c.counts_file);
        b = counts_from_json(j, c.parties.second, c.counts_file);
    } else {
        const LoadedCorpus data = load_and_prepare(c);
        a = party_counts(data.records, c.parties.first);
        b = party_counts(data.records, c.parties.second);
    }

    double fa, fb;
    if (c.forecast_values) {
        fa = c.forecast_values->first;
        fb = c.forecast_values->second;
    } else {
        fa = forecast_from_csv(path_in(c, "forecast_" + sanitize(c.parties.first) + ".csv"));
        fb = forecast_from_csv(path_in(c, "forecast_" + sanitize(c.parties.second) + ".csv"));
    }

    EvaluationOutcome out;
    out.actual = ref.actual;
    out.shares_by_method["multifactor"] =
        vote_share_from_forecasts(c.parties.first, fa, c.parties.second, fb);
    out.shares_by_method["polls"] = ref.polls;
    if (c.baseline_actual_sentiment)
        out.shares_by_method["actual_sentiment"] = baseline_actual_sentiment(a, b).normalized;
    if (c.baseline_popularity) out.shares_by_method["popularity"] = baseline_popularity(a, b);
    if (c.baseline_cross_negative)
        out.shares_by_method["cross_negative"] = baseline_cross_negative(a, b);
    for (const auto& [method, shares] : out.shares_by_method)
        out.mae_by_method[method] = mae(shares, ref.actual);

    const PartyId& pa = c.parties.first;
    const PartyId& pb = c.parties.second;
    std::string csv = "method," + pa + "," + pb + ",abs_err_" + pa + ",abs_err_" + pb + ",mae\n";
    nlohmann::json j;
    for (const auto& [method, shares] : out.shares_by_method) {
        const MaeResult& m = out.mae_by_method.at(method);
        csv += method + ',' + format_double(shares.at(pa)) + ',' + format_double(shares.at(pb)) +
               ',' + format_double(m.per_party.at(pa)) + ',' + format_double(m.per_party.at(pb)) +
               ',' + format_double(m.mean) + '\n';
        j["shares"][method] = shares;
        j["mae"][method] = {{"per_party", m.per_party}, {"mean", m.mean}};
    }
    csv += "actual," + format_double(ref.actual.at(pa)) + ',' + format_double(ref.actual.at(pb)) +
           ",,,\n";
    j["actual"] = ref.actual;
    j["notes"] = {"cross_negative divides by positive + negative counts, excluding neutrals"};
    write_text_file(path_in(c, "evaluation.csv"), csv);
    write_text_file(path_in(c, "evaluation.json"), j.dump(2) + "\n");
    return out;
}

}  // namespace mfs
