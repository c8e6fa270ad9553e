#include "mfscast/graph.hpp"

#include <algorithm>
#include <fstream>

#include "mfscast/errors.hpp"

namespace mfs {

InteractionGraph InteractionGraph::build(std::vector<WeightedEdge> edges,
                                         std::vector<UserId> extra_vertices) {
    InteractionGraph g;

    // vertex set: every endpoint plus senders with no interactions
    std::vector<UserId> ids = std::move(extra_vertices);
    for (const auto& e : edges) {
        ids.push_back(e.from);
        ids.push_back(e.to);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    g.vertex_ids_ = std::move(ids);
    g.index_of_.reserve(g.vertex_ids_.size());
    for (Index i = 0; i < g.n_vertices(); ++i) g.index_of_[g.vertex_ids_[i]] = i;

    // collapse parallel edges, drop self-loops, sum weights
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    std::vector<WeightedEdge> collapsed;
    collapsed.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.from == e.to) continue;
        if (!collapsed.empty() && collapsed.back().from == e.from && collapsed.back().to == e.to)
            collapsed.back().weight += e.weight;
        else
            collapsed.push_back(e);
    }

    const Index n = g.n_vertices();
    g.out_offsets_.assign(n + 1, 0);
    g.in_offsets_.assign(n + 1, 0);
    for (const auto& e : collapsed) {
        ++g.out_offsets_[g.index_of_[e.from] + 1];
        ++g.in_offsets_[g.index_of_[e.to] + 1];
    }
    for (Index i = 0; i < n; ++i) {
        g.out_offsets_[i + 1] += g.out_offsets_[i];
        g.in_offsets_[i + 1] += g.in_offsets_[i];
    }
    g.out_targets_.resize(collapsed.size());
    g.out_weight_.resize(collapsed.size());
    g.in_sources_.resize(collapsed.size());
    g.in_weight_.resize(collapsed.size());
    std::vector<Index> out_pos(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
    std::vector<Index> in_pos(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
    // collapsed list is sorted by (from, to), so both the per-vertex target
    // lists and the per-vertex source lists come out sorted ascending
    for (const auto& e : collapsed) {
        const Index u = g.index_of_[e.from], v = g.index_of_[e.to];
        g.out_targets_[out_pos[u]] = v;
        g.out_weight_[out_pos[u]] = e.weight;
        ++out_pos[u];
        g.in_sources_[in_pos[v]] = u;
        g.in_weight_[in_pos[v]] = e.weight;
        ++in_pos[v];
    }
    return g;
}

InteractionGraph InteractionGraph::from_records(std::span<const TweetRecord> records) {
    std::vector<WeightedEdge> edges;
    std::vector<UserId> senders;
    for (const auto& r : records) {
        senders.push_back(r.from_user_id);
        if (r.to_user_id >= 1 && r.to_user_id != r.from_user_id)
            edges.push_back({r.from_user_id, r.to_user_id,
                             static_cast<double>(r.retweet_count)});
    }
    return build(std::move(edges), std::move(senders));
}

InteractionGraph InteractionGraph::from_edges(std::vector<std::pair<UserId, UserId>> edges,
                                              std::vector<UserId> extra_vertices) {
    std::vector<WeightedEdge> wedges;
    wedges.reserve(edges.size());
    for (const auto& [u, v] : edges) wedges.push_back({u, v, 1.0});
    return build(std::move(wedges), std::move(extra_vertices));
}

InteractionGraph::Index InteractionGraph::index_of(UserId id) const {
    auto it = index_of_.find(id);
    return it == index_of_.end() ? Index{-1} : it->second;
}

bool InteractionGraph::has_edge(Index from, Index to) const {
    auto nb = out_neighbors(from);
    return std::binary_search(nb.begin(), nb.end(), to);
}

std::vector<std::vector<InteractionGraph::Index>> InteractionGraph::undirected_adjacency() const {
    const Index n = n_vertices();
    std::vector<std::vector<Index>> adj(n);
    for (Index u = 0; u < n; ++u)
        for (Index v : out_neighbors(u)) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
    for (auto& nb : adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return adj;
}

void InteractionGraph::save_edge_list(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write edge list: " + path);
    for (Index u = 0; u < n_vertices(); ++u)
        for (Index v : out_neighbors(u))
            out << vertex_ids_[u] << '\t' << vertex_ids_[v] << '\n';
    if (!out) throw IoError("failed writing edge list: " + path);
}

InteractionGraph InteractionGraph::load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open edge list: " + path);
    std::vector<std::pair<UserId, UserId>> edges;
    UserId u, v;
    while (in >> u >> v) edges.emplace_back(u, v);
    return from_edges(std::move(edges));
}

}  // namespace mfs
