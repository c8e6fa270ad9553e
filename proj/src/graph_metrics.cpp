#include "mfscast/graph_metrics.hpp"

#include <omp.h>

#include <algorithm>
#include <vector>

namespace mfs {

namespace {

using Index = InteractionGraph::Index;

// BFS from s over out-edges; returns (sum of distances, vertices reached)
std::pair<std::int64_t, std::int64_t> bfs_distance_sum(const InteractionGraph& g, Index s,
                                                       std::vector<Index>& dist,
                                                       std::vector<Index>& queue) {
    dist.assign(dist.size(), -1);
    queue.clear();
    queue.push_back(s);
    dist[s] = 0;
    std::int64_t sum = 0, reached = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Index u = queue[head];
        for (Index v : g.out_neighbors(u)) {
            if (dist[v] >= 0) continue;
            dist[v] = dist[u] + 1;
            sum += dist[v];
            ++reached;
            queue.push_back(v);
        }
    }
    return {sum, reached};
}

}  // namespace

PathLengthStats average_path_length(const InteractionGraph& g, ExecMode mode) {
    const Index n = g.n_vertices();
    std::int64_t sum = 0, pairs = 0;
    // integer reductions, so the result is exact under any thread count
#pragma omp parallel if (mode == ExecMode::parallel)
    {
        std::vector<Index> dist(n), queue;
        queue.reserve(n);
#pragma omp for schedule(static) reduction(+ : sum, pairs)
        for (Index s = 0; s < n; ++s) {
            auto [d, r] = bfs_distance_sum(g, s, dist, queue);
            sum += d;
            pairs += r;
        }
    }
    PathLengthStats stats;
    stats.reachable_pairs = pairs;
    if (pairs > 0) stats.mean = static_cast<double>(sum) / static_cast<double>(pairs);
    return stats;
}

double global_clustering(const InteractionGraph& g) {
    const auto adj = g.undirected_adjacency();
    const Index n = g.n_vertices();
    std::int64_t triangles = 0, triplets = 0;
    for (Index u = 0; u < n; ++u) {
        const auto& nu = adj[u];
        const std::int64_t d = static_cast<std::int64_t>(nu.size());
        triplets += d * (d - 1) / 2;
        // count each triangle once at its smallest vertex: u < v < w
        for (Index v : nu) {
            if (v <= u) continue;
            const auto& nv = adj[v];
            // sorted-list intersection restricted to w > v
            auto it_u = std::upper_bound(nu.begin(), nu.end(), v);
            auto it_v = std::upper_bound(nv.begin(), nv.end(), v);
            while (it_u != nu.end() && it_v != nv.end()) {
                if (*it_u < *it_v)
                    ++it_u;
                else if (*it_v < *it_u)
                    ++it_v;
                else {
                    ++triangles;
                    ++it_u;
                    ++it_v;
                }
            }
        }
    }
    if (triplets == 0) return 0.0;
    return 3.0 * static_cast<double>(triangles) / static_cast<double>(triplets);
}

namespace {

// single-source Brandes pass: accumulate pair dependencies into bc
void brandes_from(const InteractionGraph& g, Index s, std::vector<double>& bc,
                  std::vector<Index>& dist, std::vector<double>& sigma, std::vector<double>& delta,
                  std::vector<std::vector<Index>>& preds, std::vector<Index>& order) {
    dist.assign(dist.size(), -1);
    sigma.assign(sigma.size(), 0.0);
    delta.assign(delta.size(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
        Index u = order[head];
        for (Index v : g.out_neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                preds[v].clear();
                order.push_back(v);
            }
            if (dist[v] == dist[u] + 1) {
                sigma[v] += sigma[u];
                preds[v].push_back(u);
            }
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Index w = *it;
        const double coeff = (1.0 + delta[w]) / sigma[w];
        for (Index v : preds[w]) delta[v] += sigma[v] * coeff;
        if (w != s) bc[w] += delta[w];
    }
}

}  // namespace

std::vector<double> vertex_betweenness(const InteractionGraph& g, ExecMode mode) {
    const Index n = g.n_vertices();
    std::vector<double> bc(n, 0.0);
    if (mode == ExecMode::serial) {
        std::vector<Index> dist(n), order;
        std::vector<double> sigma(n), delta(n);
        std::vector<std::vector<Index>> preds(n);
        order.reserve(n);
        for (Index s = 0; s < n; ++s) brandes_from(g, s, bc, dist, sigma, delta, preds, order);
        return bc;
    }
    // per-thread accumulators merged in thread order, so results are
    // reproducible for a fixed thread count
    std::vector<std::vector<double>> partial(omp_get_max_threads());
#pragma omp parallel
    {
        auto& local = partial[omp_get_thread_num()];
        local.assign(n, 0.0);
        std::vector<Index> dist(n), order;
        std::vector<double> sigma(n), delta(n);
        std::vector<std::vector<Index>> preds(n);
        order.reserve(n);
#pragma omp for schedule(static)
        for (Index s = 0; s < n; ++s) brandes_from(g, s, local, dist, sigma, delta, preds, order);
    }
    for (const auto& local : partial) {
        if (local.empty()) continue;
        for (Index i = 0; i < n; ++i) bc[i] += local[i];
    }
    return bc;
}

}  // namespace mfs
