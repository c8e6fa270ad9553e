// Release gate: ten end-to-end checks, one line of output each. The first
// three pin the published 2020 comparison tables, the middle ones hold the
// numerical kernels to brute-force references, and the last two exercise the
// whole pipeline (planted-trend sign recovery, byte-level determinism).
// Exits nonzero if any criterion fails or overruns its time budget.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mfscast/election.hpp"
#include "mfscast/farima.hpp"
#include "mfscast/graph_metrics.hpp"
#include "mfscast/mfscore.hpp"
#include "mfscast/pagerank.hpp"
#include "mfscast/pipeline.hpp"
#include "mfscast/rng.hpp"
#include "mfscast/synth.hpp"
#include "oracles.hpp"

using namespace mfs;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

// Runs one criterion, prints its verdict line, enforces the time budget
// (budget_ms <= 0 means untimed). The check returns true/false and may leave
// a short explanation in `detail`.
void criterion(int id, const std::string& name, double budget_ms,
               const std::function<bool(std::string&)>& check) {
    std::string detail;
    const auto t0 = Clock::now();
    bool ok = false;
    try {
        ok = check(detail);
    } catch (const std::exception& e) {
        detail = std::string("threw: ") + e.what();
    }
    const double ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(Clock::now() - t0)
            .count();
    if (ok && budget_ms > 0 && ms > budget_ms) {
        ok = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "took %.0f ms, budget %.0f ms", ms, budget_ms);
        detail = buf;
    }
    std::printf("[%s] criterion %d: %s (%.0f ms)%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                ms, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    g_failures += !ok;
}

bool close_to(double value, double expected, double tol, const char* what, std::string& detail) {
    if (std::abs(value - expected) <= tol) return true;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: got %.6f, expected %.6f +- %g", what, value, expected,
                  tol);
    detail = buf;
    return false;
}

// Table rows the 2020 methods are checked against (counts in tweets, shares
// and errors in percentage points).
PartyCounts observed_democratic() { return {"Democratic", 3851293, 1663373, 1639495, 548424}; }
PartyCounts observed_republican() { return {"Republican", 7109941, 2831179, 3791732, 487031}; }

const std::string kDataDir = MFSCAST_DATA_DIR;

std::string temp_root() {
    static const std::string root = [] {
        const fs::path p = fs::temp_directory_path() / "mfscast_acceptance";
        fs::remove_all(p);
        fs::create_directories(p);
        return p.string();
    }();
    return root;
}

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(MFSCAST_CLI_PATH) + " " + args + " >/dev/null 2>/dev/null";
    const int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> relative_files(const fs::path& root) {
    std::vector<std::string> out;
    for (const auto& entry : fs::recursive_directory_iterator(root))
        if (entry.is_regular_file())
            out.push_back(fs::relative(entry.path(), root).string());
    std::sort(out.begin(), out.end());
    return out;
}

double median_of(std::vector<double> v) { return median(v); }

// -------------------------------------------------------------------------
// criteria
// -------------------------------------------------------------------------

bool check_alternative_methods(std::string& detail) {
    const PartyCounts dem = observed_democratic();
    const PartyCounts rep = observed_republican();
    const SentimentBaseline s = baseline_actual_sentiment(dem, rep);
    const VoteShares pop = baseline_popularity(dem, rep);
    const VoteShares cross = baseline_cross_negative(dem, rep);
    return close_to(s.normalized.at("Democratic"), -2.55, 0.01, "sentiment D", detail) &&
           close_to(s.normalized.at("Republican"), 102.55, 0.01, "sentiment R", detail) &&
           close_to(pop.at("Democratic"), 17.69, 0.01, "popularity D", detail) &&
           close_to(pop.at("Republican"), 27.73, 0.01, "popularity R", detail) &&
           close_to(cross.at("Democratic"), 54.96, 0.01, "cross-negative D", detail) &&
           close_to(cross.at("Republican"), 45.04, 0.01, "cross-negative R", detail);
}

bool check_mae_table(std::string& detail) {
    const PartyCounts dem = observed_democratic();
    const PartyCounts rep = observed_republican();
    const ReferenceResults ref = ReferenceResults::us2020();
    const VoteShares multifactor =
        vote_share_from_forecasts("Democratic", 0.004256, "Republican", -0.010304);

    struct Row {
        const char* name;
        VoteShares shares;
        double err_d, err_r, mean;
    };
    const std::vector<Row> rows = {
        {"multifactor", multifactor, 0.67, 2.37, 1.52},
        {"polls", ref.polls, 3.00, 1.30, 2.15},
        {"sentiment", baseline_actual_sentiment(dem, rep).normalized, 53.95, 55.65, 54.80},
        {"popularity", baseline_popularity(dem, rep), 33.71, 19.17, 26.44},
        {"cross-negative", baseline_cross_negative(dem, rep), 3.56, 1.86, 2.71},
    };
    for (const auto& row : rows) {
        const MaeResult m = mae(row.shares, ref.actual);
        const std::string label = row.name;
        if (!close_to(m.per_party.at("Democratic"), row.err_d, 0.01, (label + " D").c_str(),
                      detail) ||
            !close_to(m.per_party.at("Republican"), row.err_r, 0.01, (label + " R").c_str(),
                      detail) ||
            !close_to(m.mean, row.mean, 0.01, (label + " mean").c_str(), detail))
            return false;
    }
    return true;
}

bool check_share_conversion(std::string& detail) {
    const VoteShares shares =
        vote_share_from_forecasts("Democratic", 0.004256, "Republican", -0.010304);
    return close_to(shares.at("Democratic"), 50.73, 0.005, "share D", detail) &&
           close_to(shares.at("Republican"), 49.27, 0.005, "share R", detail);
}

bool check_centrality_oracle(std::string& detail) {
    Rng rng(424242);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.integer(49));  // 2..50 vertices
        const double p = 0.1 + 0.4 * rng.uniform();
        const InteractionGraph g = oracle::random_graph(n, p, rng);

        // the damping factor must clear the measured spectral radius
        const double rho = spectral_radius(g);
        PageRankParams params;  // alpha = 0.85
        const double cap = rho > 0.0 ? 1.0 / rho : params.alpha_cap;
        if (params.alpha >= cap) {
            detail = "alpha 0.85 not admissible for a sampled graph";
            return false;
        }

        const CentralityScores fast = pagerank(g, params);
        const std::vector<double> dense =
            oracle::pagerank_dense(g, params.alpha, (1.0 - params.alpha) / g.n_vertices());
        for (std::size_t i = 0; i < dense.size(); ++i)
            worst = std::max(worst, std::abs(fast.values[i] - dense[i]));
    }
    if (worst <= 1e-8) return true;
    char buf[96];
    std::snprintf(buf, sizeof buf, "max |power - dense| = %.3g (limit 1e-8)", worst);
    detail = buf;
    return false;
}

bool check_topology_oracles(std::string& detail) {
    Rng rng(771177);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.integer(11));  // 2..12 vertices
        const double p = 0.1 + 0.5 * rng.uniform();
        const InteractionGraph g = oracle::random_graph(n, p, rng);

        const PathLengthStats apl = average_path_length(g);
        const auto [apl_ref, pairs_ref] = oracle::average_path_length_fw(g);
        if (apl.reachable_pairs != pairs_ref ||
            apl.mean.has_value() != apl_ref.has_value() ||
            (apl.mean && std::abs(*apl.mean - *apl_ref) > 1e-10)) {
            detail = "average path length disagrees with Floyd-Warshall";
            return false;
        }

        if (std::abs(global_clustering(g) - oracle::clustering_triples(g)) > 1e-10) {
            detail = "clustering disagrees with the direct triple count";
            return false;
        }

        const std::vector<double> fast = vertex_betweenness(g);
        const std::vector<double> slow = oracle::betweenness_paths(g);
        for (std::size_t i = 0; i < slow.size(); ++i)
            if (std::abs(fast[i] - slow[i]) > 1e-10) {
                detail = "betweenness disagrees with path enumeration";
                return false;
            }
    }
    return true;
}

bool check_transport_oracle(std::string& detail) {
    Rng rng(909090);
    const auto sample = [&rng](std::size_t max_size) {
        std::vector<double> s(1 + rng.integer(max_size));
        for (double& v : s) v = 3.0 * rng.gaussian() + rng.uniform();
        return s;
    };
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<double> a = sample(10), b = sample(10);
        const double fast = wasserstein1(a, b);
        const double slow = oracle::wasserstein_assignment(a, b);
        if (std::abs(fast - slow) > 1e-10) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "pair %d: |quantile - assignment| = %.3g", trial,
                          std::abs(fast - slow));
            detail = buf;
            return false;
        }
    }
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<double> a = sample(10), b = sample(10), c = sample(10);
        if (wasserstein1(a, b) != wasserstein1(b, a)) {
            detail = "symmetry is not exact";
            return false;
        }
        if (wasserstein1(a, c) > wasserstein1(a, b) + wasserstein1(b, c) + 1e-12) {
            detail = "triangle inequality violated";
            return false;
        }
    }
    return true;
}

bool check_fractional_filter(std::string& detail) {
    const int n = 512, K = 100;
    Rng rng(171717);
    std::vector<double> x(n);
    for (double& v : x) v = rng.gaussian();
    for (const double d : {-0.45, -0.3, 0.0, 0.3, 0.45}) {
        const std::vector<double> y = frac_difference(x, d, K);
        const std::vector<double> z = frac_integrate(y, d, K);
        double worst = 0.0;
        for (int t = K; t < n; ++t) worst = std::max(worst, std::abs(z[t] - x[t]));
        if (worst > 1e-6) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "round trip at d=%g: max err %.3g", d, worst);
            detail = buf;
            return false;
        }
    }
    // recursion vs direct binomial evaluation via the gamma function
    for (const double d : {-0.45, -0.3, 0.3, 0.45}) {
        const std::vector<double> coeffs = frac_diff_coeffs(d, 50);
        for (int k = 0; k <= 50; ++k) {
            const double direct =
                k == 0 ? 1.0 : std::tgamma(k - d) / (std::tgamma(k + 1.0) * std::tgamma(-d));
            if (std::abs(coeffs[k] - direct) > 1e-12) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "coefficient k=%d at d=%g off by %.3g", k, d,
                              std::abs(coeffs[k] - direct));
                detail = buf;
                return false;
            }
        }
    }
    const std::vector<double> at_zero = frac_diff_coeffs(0.0, 50);
    for (int k = 0; k <= 50; ++k)
        if (at_zero[k] != (k == 0 ? 1.0 : 0.0)) {
            detail = "d=0 coefficients are not the identity filter";
            return false;
        }
    return true;
}

bool check_memory_recovery(std::string& detail) {
    for (const double d : {-0.3, 0.0, 0.3}) {
        FarimaModel model;
        model.d = d;
        std::vector<double> errors;
        for (int seed = 1; seed <= 20; ++seed) {
            const TimeSeries ts = simulate_farima(model, 2048, 1000 + seed);
            errors.push_back(std::abs(estimate_d(ts.values).d - d));
        }
        if (!close_to(median_of(errors), 0.0, 0.1,
                      ("median |d_hat - d| at d=" + std::to_string(d)).c_str(), detail))
            return false;
    }
    FarimaModel ar1;
    ar1.ar = {0.6};
    std::vector<double> errors;
    for (int seed = 1; seed <= 20; ++seed) {
        TimeSeries ts = simulate_farima(ar1, 2000, 2000 + seed);
        const double mu = mean(ts.values);
        for (double& v : ts.values) v -= mu;
        errors.push_back(std::abs(fit_arma(ts.values, 1, 0).ar[0] - 0.6));
    }
    return close_to(median_of(errors), 0.0, 0.1, "median |phi_hat - 0.6|", detail);
}

bool check_planted_ordering(std::string& detail) {
    CorpusSpec spec;
    spec.n_users = 10000;
    spec.n_days = 63;
    spec.start_day = *parse_date("2020-09-01");
    PartyPlan dem;
    dem.name = "Democratic";
    dem.marker = "Biden";
    dem.popularity = {0.4, 0.7};
    dem.p_positive = {0.6, 0.6};
    dem.p_negative = {0.2, 0.2};
    PartyPlan rep = dem;
    rep.name = "Republican";
    rep.marker = "Trump";
    rep.popularity = {0.55, 0.35};
    spec.parties = {dem, rep};

    const auto planted = expected_ordering(spec);
    if (planted.front() != std::vector<PartyId>{"Democratic"}) {
        detail = "plant does not put Democratic first";
        return false;
    }

    const fs::path root = fs::path(temp_root()) / "sign_test";
    int matches = 0;
    for (int seed = 1; seed <= 20; ++seed) {
        spec.seed = static_cast<std::uint64_t>(seed);
        fs::create_directories(root);
        const std::string corpus = (root / "corpus.jsonl").string();
        generate_corpus_file(spec, corpus);

        PipelineConfig c;
        c.corpus = corpus;
        c.lexicon = kDataDir + "/test_lexicon.tsv";
        c.keywords = kDataDir + "/keywords_us2020.json";
        c.out_dir = (root / "out").string();
        c.window = {spec.start_day, Date{spec.start_day.days_since_epoch + 62}};
        c.forecast_track = false;
        const ForecastOutcome out = run_forecast(c);
        matches += out.shares.at("Democratic") > out.shares.at("Republican");
        fs::remove_all(root);
    }
    if (matches >= 18) return true;
    char buf[96];
    std::snprintf(buf, sizeof buf, "ordering recovered in %d of 20 seeds (need 18)", matches);
    detail = buf;
    return false;
}

bool check_determinism(std::string& detail) {
    const fs::path root = fs::path(temp_root()) / "determinism";
    fs::create_directories(root);
    const std::string spec = kDataDir + "/synth_spec_example.json";
    const std::string corpus_a = (root / "corpus_a.jsonl").string();
    const std::string corpus_b = (root / "corpus_b.jsonl").string();
    if (run_cli("synth --config " + spec + " --out " + corpus_a) != 0 ||
        run_cli("synth --config " + spec + " --out " + corpus_b) != 0) {
        detail = "synth invocation failed";
        return false;
    }
    if (slurp(corpus_a) != slurp(corpus_b)) {
        detail = "synth reruns differ";
        return false;
    }

    // one config, the same corpus, two output trees
    const std::string config = (root / "config.json").string();
    std::ofstream(config) << "{\n"
                          << R"(  "corpus": ")" << corpus_a << "\",\n"
                          << R"(  "lexicon": ")" << kDataDir << "/test_lexicon.tsv\",\n"
                          << R"(  "keywords": ")" << kDataDir << "/keywords_us2020.json\",\n"
                          << R"(  "window": {"start": "2020-09-22", "end": "2020-11-02"})"
                          << "\n}\n";
    for (const char* out : {"a", "b"})
        for (const char* sub : {"ingest", "sentiment-stats", "graph-stats", "score", "forecast",
                                "baselines", "evaluate"})
            if (run_cli(std::string(sub) + " --config " + config + " --out " +
                        (root / out).string()) != 0) {
                detail = std::string(sub) + " invocation failed";
                return false;
            }

    const std::vector<std::string> files_a = relative_files(root / "a");
    if (files_a != relative_files(root / "b")) {
        detail = "output trees contain different files";
        return false;
    }
    if (files_a.empty()) {
        detail = "no outputs produced";
        return false;
    }
    for (const std::string& rel : files_a)
        if (slurp(root / "a" / rel) != slurp(root / "b" / rel)) {
            detail = rel + " differs between reruns";
            return false;
        }
    fs::remove_all(root);
    return true;
}

}  // namespace

int main() {
    criterion(1, "alternative vote-share methods reproduce the published 2020 table", 1000,
              check_alternative_methods);
    criterion(2, "mean absolute errors match the published comparison", 0, check_mae_table);
    criterion(3, "forecast-difference conversion yields the published shares", 0,
              check_share_conversion);
    criterion(4, "power-iteration centrality matches a dense solve on 20 random graphs", 5000,
              check_centrality_oracle);
    criterion(5, "path length, clustering, betweenness match brute force on 50 graphs", 10000,
              check_topology_oracles);
    criterion(6, "transport distance matches the assignment solution and metric axioms", 0,
              check_transport_oracle);
    criterion(7, "fractional differencing round-trips and matches binomial coefficients", 0,
              check_fractional_filter);
    criterion(8, "long-memory and AR(1) parameters are recovered from simulation", 60000,
              check_memory_recovery);
    criterion(9, "pipeline recovers a planted party ordering in 18 of 20 corpora", 300000,
              check_planted_ordering);
    criterion(10, "every subcommand rerun is byte-identical", 0, check_determinism);

    fs::remove_all(temp_root());
    if (g_failures > 0) {
        std::printf("%d of 10 criteria failed\n", g_failures);
        return 1;
    }
    std::printf("all 10 criteria passed\n");
    return 0;
}
