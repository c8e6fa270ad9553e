#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mfscast/exec.hpp"
#include "mfscast/graph.hpp"

namespace mfs {

struct PathLengthStats {
    // unset when no ordered pair is reachable
    std::optional<double> mean;
    std::int64_t reachable_pairs = 0;
};

// Mean shortest-path length over all reachable ordered pairs (i, j), i != j,
// in the directed graph. Unreachable pairs are excluded from both the sum and
// the pair count.
PathLengthStats average_path_length(const InteractionGraph& g, ExecMode mode = ExecMode::parallel);

// Transitivity of the undirected projection: 3 * triangles / triplets, where
// triplets = sum over vertices of C(degree, 2). Zero when there is no triplet.
double global_clustering(const InteractionGraph& g);

// Brandes betweenness on the directed graph, endpoints excluded, by vertex
// index. Pairs with no connecting path contribute nothing (0/0 -> 0).
std::vector<double> vertex_betweenness(const InteractionGraph& g,
                                       ExecMode mode = ExecMode::parallel);

}  // namespace mfs
