#include "mfscast/pagerank.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <vector>

#include "mfscast/errors.hpp"

namespace mfs {

namespace {

using Index = InteractionGraph::Index;

// 1 / out-degree (or 1 / out-strength when weighted); 0 marks a zero row
std::vector<double> inverse_row_norms(const InteractionGraph& g, bool weighted) {
    const Index n = g.n_vertices();
    std::vector<double> inv(n, 0.0);
    for (Index i = 0; i < n; ++i) {
        if (weighted) {
            auto w = g.out_weights(i);
            double s = std::accumulate(w.begin(), w.end(), 0.0);
            if (s > 0.0) inv[i] = 1.0 / s;
        } else if (g.out_degree(i) > 0) {
            inv[i] = 1.0 / g.out_degree(i);
        }
    }
    return inv;
}

// One sweep of y = scale * (x D^-1 A) + shift, pulling over in-edges so each
// row is an independent fixed-order sum: results are bit-identical for any
// thread count. Returns max_i |y_i - x_i|.
double pull_sweep(const InteractionGraph& g, bool weighted, const std::vector<double>& inv_norm,
                  const std::vector<double>& x, std::vector<double>& y, double scale, double shift,
                  bool parallel) {
    const Index n = g.n_vertices();
    double res = 0.0;
#pragma omp parallel for schedule(static) reduction(max : res) if (parallel)
    for (Index i = 0; i < n; ++i) {
        double acc = 0.0;
        auto src = g.in_neighbors(i);
        if (weighted) {
            auto w = g.in_weights(i);
            for (std::size_t k = 0; k < src.size(); ++k)
                acc += x[src[k]] * inv_norm[src[k]] * w[k];
        } else {
            for (Index s : src) acc += x[s] * inv_norm[s];
        }
        y[i] = scale * acc + shift;
        res = std::max(res, std::abs(y[i] - x[i]));
    }
    return res;
}

}  // namespace

CentralityScores pagerank(const InteractionGraph& g, const PageRankParams& params, ExecMode mode) {
    const Index n = g.n_vertices();
    if (n == 0) throw ParameterError("pagerank requires a non-empty graph");
    if (!std::isfinite(params.alpha) || params.alpha < 0.0)
        throw ParameterError("alpha must be finite and nonnegative");
    if (!(params.tolerance > 0.0)) throw ParameterError("tolerance must be positive");
    if (params.max_iterations <= 0) throw ParameterError("max_iterations must be positive");

    const double rho = spectral_radius(g, params.weighted);
    const double cap = rho > 0.0 ? 1.0 / rho : params.alpha_cap;
    if (params.alpha >= cap) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "alpha=%g does not satisfy alpha < %g (1/spectral_radius, rho=%g)",
                      params.alpha, cap, rho);
        throw ParameterError(buf);
    }
    const double beta = params.beta ? *params.beta : (1.0 - params.alpha) / n;
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw ParameterError("beta must be finite and positive (set it explicitly for alpha >= 1)");

    const auto inv_norm = inverse_row_norms(g, params.weighted);
    const bool par = mode == ExecMode::parallel;
    std::vector<double> x(n, 1.0 / n), y(n);

    CentralityScores out;
    double res = 0.0;
    for (int it = 1; it <= params.max_iterations; ++it) {
        res = pull_sweep(g, params.weighted, inv_norm, x, y, params.alpha, beta, par);
        x.swap(y);
        if (res <= params.tolerance) {
            out.values = std::move(x);
            out.iterations_used = it;
            out.residual = res;
            return out;
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "power iteration still at residual %g after %d iterations", res,
                  params.max_iterations);
    throw ConvergenceError(buf, res);
}

double spectral_radius(const InteractionGraph& g, bool weighted) {
    const Index n = g.n_vertices();
    if (n == 0 || g.n_edges() == 0) return 0.0;

    const auto inv_norm = inverse_row_norms(g, weighted);
    std::vector<double> v(n, 1.0 / n), w(n);
    constexpr int kMaxIter = 100000;
    constexpr int kMaxPeriod = 48;
    std::vector<double> ratios;
    ratios.reserve(1024);
    double log_sum = 0.0;

    for (int t = 1; t <= kMaxIter; ++t) {
        pull_sweep(g, weighted, inv_norm, v, w, 1.0, 0.0, /*parallel=*/false);
        // v is normalized to 1-norm 1, so the new 1-norm is the growth ratio
        double s = std::accumulate(w.begin(), w.end(), 0.0);
        if (s == 0.0) return 0.0;  // nilpotent: the acyclic part died out exactly
        ratios.push_back(s);
        log_sum += std::log(s);
        for (Index i = 0; i < n; ++i) v[i] = w[i] / s;

        // The ratio sequence converges for aperiodic graphs and cycles with a
        // period otherwise; detect the shortest period p and average over it.
        for (int p = 1; p <= kMaxPeriod && 2 * p <= t; ++p) {
            bool periodic = true;
            bool bitwise = true;
            for (int j = 0; j < p && periodic; ++j) {
                double a = ratios[t - 1 - j], b = ratios[t - 1 - j - p];
                if (std::abs(a - b) > 1e-11 * std::max(std::abs(a), std::abs(b)))
                    periodic = false;
                if (a != b) bitwise = false;
            }
            if (!periodic) continue;
            if (bitwise && p == 1) return ratios[t - 1];
            double acc = 0.0;
            for (int j = 0; j < p; ++j) acc += std::log(ratios[t - 1 - j]);
            return std::exp(acc / p);
        }
    }
    // no stable period emerged; fall back on the Cesaro mean of log-ratios,
    // which converges (slowly) to log rho for any nonnegative matrix
    return std::exp(log_sum / kMaxIter);
}

std::vector<UserId> top_k_by_centrality(const InteractionGraph& g, const CentralityScores& scores,
                                        std::size_t k) {
    std::vector<Index> order(g.n_vertices());
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        if (scores.values[a] != scores.values[b]) return scores.values[a] > scores.values[b];
        return g.vertex_id(a) < g.vertex_id(b);
    });
    if (order.size() > k) order.resize(k);
    std::vector<UserId> ids(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) ids[i] = g.vertex_id(order[i]);
    return ids;
}

}  // namespace mfs
