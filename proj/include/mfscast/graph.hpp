#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mfscast/record.hpp"

namespace mfs {

// Directed, unweighted user-interaction graph in CSR form (both directions
// kept: PageRank pulls over in-edges, traversals walk out-edges). Parallel
// interactions collapse to one edge; self-loops are dropped.
//
// An optional retweet-weight per collapsed edge is kept for the weighted
// PageRank variant; the unweighted path ignores it.
class InteractionGraph {
public:
    using Index = std::int32_t;

    static InteractionGraph from_records(std::span<const TweetRecord> records);
    static InteractionGraph from_edges(std::vector<std::pair<UserId, UserId>> edges,
                                       std::vector<UserId> extra_vertices = {});

    Index n_vertices() const { return static_cast<Index>(vertex_ids_.size()); }
    std::int64_t n_edges() const { return static_cast<std::int64_t>(out_targets_.size()); }

    UserId vertex_id(Index i) const { return vertex_ids_[i]; }
    const std::vector<UserId>& vertex_ids() const { return vertex_ids_; }
    Index index_of(UserId id) const;  // -1 when absent

    std::span<const Index> out_neighbors(Index i) const {
        return {out_targets_.data() + out_offsets_[i],
                static_cast<std::size_t>(out_offsets_[i + 1] - out_offsets_[i])};
    }
    std::span<const Index> in_neighbors(Index i) const {
        return {in_sources_.data() + in_offsets_[i],
                static_cast<std::size_t>(in_offsets_[i + 1] - in_offsets_[i])};
    }
    Index out_degree(Index i) const { return out_offsets_[i + 1] - out_offsets_[i]; }
    Index in_degree(Index i) const { return in_offsets_[i + 1] - in_offsets_[i]; }

    // retweet weight of the k-th out-edge slot (parallel to out_neighbors)
    std::span<const double> out_weights(Index i) const {
        return {out_weight_.data() + out_offsets_[i],
                static_cast<std::size_t>(out_offsets_[i + 1] - out_offsets_[i])};
    }
    // same weights viewed from the receiving side (parallel to in_neighbors)
    std::span<const double> in_weights(Index i) const {
        return {in_weight_.data() + in_offsets_[i],
                static_cast<std::size_t>(in_offsets_[i + 1] - in_offsets_[i])};
    }

    bool has_edge(Index from, Index to) const;

    // Undirected projection as sorted neighbor lists (u~v iff u->v or v->u).
    std::vector<std::vector<Index>> undirected_adjacency() const;

    // edge-list text file, one "from<TAB>to" per line
    void save_edge_list(const std::string& path) const;
    static InteractionGraph load_edge_list(const std::string& path);

private:
    struct WeightedEdge {
        UserId from, to;
        double weight;
    };
    static InteractionGraph build(std::vector<WeightedEdge> edges,
                                  std::vector<UserId> extra_vertices);

    std::vector<UserId> vertex_ids_;  // ascending
    std::unordered_map<UserId, Index> index_of_;
    std::vector<Index> out_offsets_, out_targets_;
    std::vector<Index> in_offsets_, in_sources_;
    std::vector<double> out_weight_;  // summed retweet counts per collapsed edge
    std::vector<double> in_weight_;
};

inline InteractionGraph build_graph(std::span<const TweetRecord> records) {
    return InteractionGraph::from_records(records);
}

}  // namespace mfs
