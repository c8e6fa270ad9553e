// Timings for the kernels that carry both a serial reference and an OpenMP
// path. Run with OMP_NUM_THREADS set to compare.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <utility>
#include <vector>

#include "mfscast/graph.hpp"
#include "mfscast/graph_metrics.hpp"
#include "mfscast/mfscore.hpp"
#include "mfscast/pagerank.hpp"
#include "mfscast/rng.hpp"
#include "mfscast/sentiment.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_of(F&& body) {
    const auto t0 = Clock::now();
    body();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-22s serial %8.3f s   parallel %8.3f s   speedup %5.2fx\n", name, serial,
                parallel, parallel > 0.0 ? serial / parallel : 0.0);
}

mfs::InteractionGraph random_graph(int n, int m, std::uint64_t seed) {
    mfs::Rng rng(seed);
    std::vector<std::pair<mfs::UserId, mfs::UserId>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const auto a = static_cast<mfs::UserId>(rng.integer(static_cast<std::uint64_t>(n)) + 1);
        const auto b = static_cast<mfs::UserId>(rng.integer(static_cast<std::uint64_t>(n)) + 1);
        if (a != b) edges.emplace_back(a, b);
    }
    return mfs::InteractionGraph::from_edges(std::move(edges));
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", omp_get_max_threads());

    {
        const auto g = random_graph(200000, 2000000, 7);
        mfs::PageRankParams params;
        params.tolerance = 1e-12;
        double serial = time_of([&] { mfs::pagerank(g, params, mfs::ExecMode::serial); });
        double parallel = time_of([&] { mfs::pagerank(g, params, mfs::ExecMode::parallel); });
        report("pagerank", serial, parallel);
    }
    {
        const auto g = random_graph(4000, 40000, 11);
        double serial = time_of([&] { mfs::average_path_length(g, mfs::ExecMode::serial); });
        double parallel = time_of([&] { mfs::average_path_length(g, mfs::ExecMode::parallel); });
        report("average_path_length", serial, parallel);
        serial = time_of([&] { mfs::vertex_betweenness(g, mfs::ExecMode::serial); });
        parallel = time_of([&] { mfs::vertex_betweenness(g, mfs::ExecMode::parallel); });
        report("vertex_betweenness", serial, parallel);
    }
    {
        mfs::Rng rng(13);
        std::vector<mfs::DailyDistribution> days(120);
        for (std::size_t i = 0; i < days.size(); ++i) {
            days[i].day = mfs::Date{static_cast<std::int32_t>(i)};
            days[i].sample.resize(800);
            for (auto& v : days[i].sample) v = rng.gaussian();
        }
        double serial = time_of([&] { mfs::distance_matrix(days, mfs::ExecMode::serial); });
        double parallel = time_of([&] { mfs::distance_matrix(days, mfs::ExecMode::parallel); });
        report("distance_matrix", serial, parallel);
    }
    {
        const mfs::Lexicon lexicon = mfs::Lexicon::from_text(
            "excellent\t2\ngreat\t1\nterrible\t-2\nawful\t-1\n");
        mfs::Rng rng(17);
        const char* words[] = {"excellent", "great", "terrible", "awful", "update", "report"};
        std::vector<mfs::TweetRecord> records(2000000);
        for (std::size_t i = 0; i < records.size(); ++i) {
            auto& r = records[i];
            r.tweet_id = "t" + std::to_string(i);
            r.from_user_id = static_cast<mfs::UserId>(rng.integer(1000) + 1);
            std::string text = "the vote";
            for (int k = 0; k < 6; ++k) {
                text += ' ';
                text += words[rng.integer(6)];
            }
            r.text = std::move(text);
        }
        auto copy = records;
        double serial =
            time_of([&] { mfs::score_records(copy, lexicon, mfs::ExecMode::serial); });
        double parallel =
            time_of([&] { mfs::score_records(records, lexicon, mfs::ExecMode::parallel); });
        report("score_records", serial, parallel);
    }
    return 0;
}
