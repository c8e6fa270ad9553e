#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfscast/exec.hpp"
#include "mfscast/graph.hpp"

namespace mfs {

struct PageRankParams {
    double alpha = 0.85;
    // uniform personalization constant; unset means (1 - alpha) / n
    std::optional<double> beta;
    double tolerance = 1e-10;
    int max_iterations = 10000;
    // accepted upper bound on alpha when the graph is acyclic (rho = 0)
    double alpha_cap = 100.0;
    // divide by retweet-weighted out-degree instead of edge counts
    bool weighted = false;
};

struct CentralityScores {
    std::vector<double> values;  // by vertex index
    int iterations_used = 0;
    double residual = 0.0;

    double of(const InteractionGraph& g, UserId id) const {
        auto i = g.index_of(id);
        return i < 0 ? 0.0 : values[i];
    }
};

// Fixed point of x = alpha * x * D^-1 A + beta by power iteration, max-norm
// stopping rule. Dangling vertices propagate nothing (their row of D^-1 A is
// zero); beta replenishes the mass. Throws ParameterError when alpha falls
// outside [0, 1/rho), ConvergenceError when max_iterations is exhausted.
CentralityScores pagerank(const InteractionGraph& g, const PageRankParams& params,
                          ExecMode mode = ExecMode::parallel);

// Largest eigenvalue modulus of D^-1 A, estimated by power iteration on the
// nonnegative matrix (1-norm growth ratios, geometric-mean smoothing for
// periodic cases). Exact 0 for acyclic graphs.
double spectral_radius(const InteractionGraph& g, bool weighted = false);

// Top k vertices by score, ties broken by ascending user id.
std::vector<UserId> top_k_by_centrality(const InteractionGraph& g, const CentralityScores& scores,
                                        std::size_t k);

}  // namespace mfs
