#pragma once

#include "strandbench/design.hpp"
#include "strandbench/errors.hpp"
#include "strandbench/oligo_pool.hpp"
#include "strandbench/random.hpp"
#include "strandbench/sequence.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace strandbench::adleman {

using NodeId = std::int64_t;
using Edge = std::pair<NodeId, NodeId>;
using Path = std::vector<NodeId>;

/// Directed graph without self-loops or duplicate edges.
class DiGraph {
  public:
    DiGraph(std::vector<NodeId> nodes, const std::vector<Edge>& edges) : nodes_(std::move(nodes)) {
        if (nodes_.empty()) {
            throw argument_error("graph needs at least one node");
        }
        std::sort(nodes_.begin(), nodes_.end());
        if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end()) {
            throw argument_error("duplicate node id");
        }
        for (const auto& e : edges) {
            if (!has_node(e.first) || !has_node(e.second)) {
                throw argument_error("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                     ") references an unknown node");
            }
            if (e.first == e.second) {
                throw argument_error("self-loop on node " + std::to_string(e.first));
            }
            if (!edges_.insert(e).second) {
                throw argument_error("duplicate edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                     ")");
            }
        }
        for (const auto& [u, v] : edges_) {
            out_[u].push_back(v);
        }
    }

    const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
    const std::set<Edge>& edges() const noexcept { return edges_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    bool has_node(NodeId v) const { return std::binary_search(nodes_.begin(), nodes_.end(), v); }
    bool has_edge(NodeId u, NodeId v) const { return edges_.contains({u, v}); }

    /// Out-neighbours in ascending id order.
    const std::vector<NodeId>& successors(NodeId v) const {
        static const std::vector<NodeId> none;
        auto it = out_.find(v);
        return it == out_.end() ? none : it->second;
    }

  private:
    std::vector<NodeId> nodes_;
    std::set<Edge> edges_;
    std::map<NodeId, std::vector<NodeId>> out_;
};

/// Node, splint and edge sequences for one graph.
struct Encoding {
    std::map<NodeId, Sequence> node_seq;
    std::map<NodeId, Sequence> splint_seq;
    std::map<Edge, Sequence> edge_seq;

    std::size_t node_length() const { return node_seq.empty() ? 0 : node_seq.begin()->second.size(); }
};

/// Assigns each node a designed sequence; splints are reverse complements
/// and each edge joins the source's second half to the target's first half.
inline Encoding encode_graph(const DiGraph& g, const DesignConstraints& c, std::uint64_t seed) {
    if (c.length < 2 || c.length % 2 != 0) {
        throw argument_error("node sequence length must be even and >= 2");
    }
    const auto seqs = design_library(c, g.size(), seed);
    Encoding enc;
    for (std::size_t i = 0; i < g.size(); ++i) {
        enc.node_seq.emplace(g.nodes()[i], seqs[i]);
        enc.splint_seq.emplace(g.nodes()[i], reverse_complement(seqs[i]));
    }
    const std::size_t half = c.length / 2;
    for (const auto& e : g.edges()) {
        enc.edge_seq.emplace(e, enc.node_seq.at(e.first).substr(half) + enc.node_seq.at(e.second).substr(0, half));
    }
    return enc;
}

using PathPool = std::map<Path, std::uint64_t>;

inline bool is_walk(const DiGraph& g, const Path& p) {
    if (p.empty()) {
        return false;
    }
    if (!g.has_node(p.front())) {
        return false;
    }
    for (std::size_t i = 1; i < p.size(); ++i) {
        if (!g.has_edge(p[i - 1], p[i])) {
            return false;
        }
    }
    return true;
}

/// O(|V|) check: valid walk from start to end visiting every node exactly once.
inline bool is_hamiltonian_path(const DiGraph& g, const Path& p, NodeId start, NodeId end) {
    if (p.size() != g.size() || p.front() != start || p.back() != end || !is_walk(g, p)) {
        return false;
    }
    std::set<NodeId> seen(p.begin(), p.end());
    return seen.size() == g.size();
}

/// Every walk with 1..max_nodes nodes, each exactly once.
struct Exhaustive {
    std::size_t max_nodes;
};

/// Random ligation growth: uniform start node, uniform out-edge choice,
/// stopping at a dead end or with probability `stop_probability` per step.
struct Stochastic {
    std::size_t samples;
    std::uint64_t seed;
    double stop_probability = 0.1;
};

using AssemblyMode = std::variant<Exhaustive, Stochastic>;

namespace detail {

inline void extend_walks(const DiGraph& g, Path& walk, std::size_t max_nodes, PathPool& pool) {
    pool.emplace(walk, 1);
    if (walk.size() == max_nodes) {
        return;
    }
    for (NodeId next : g.successors(walk.back())) {
        walk.push_back(next);
        extend_walks(g, walk, max_nodes, pool);
        walk.pop_back();
    }
}

}  // namespace detail

inline PathPool assemble(const DiGraph& g, const AssemblyMode& mode) {
    PathPool pool;
    if (const auto* ex = std::get_if<Exhaustive>(&mode)) {
        if (ex->max_nodes < 1) {
            throw argument_error("exhaustive assembly needs max_nodes >= 1");
        }
        for (NodeId v : g.nodes()) {
            Path walk{v};
            detail::extend_walks(g, walk, ex->max_nodes, pool);
        }
        return pool;
    }
    const auto& st = std::get<Stochastic>(mode);
    if (st.samples < 1) {
        throw argument_error("stochastic assembly needs samples >= 1");
    }
    if (!(st.stop_probability > 0.0 && st.stop_probability <= 1.0)) {
        throw argument_error("stop probability must lie in (0, 1]");
    }
    Rng rng(st.seed);
    for (std::size_t s = 0; s < st.samples; ++s) {
        Path walk{g.nodes()[rng.below(g.size())]};
        while (true) {
            const auto& next = g.successors(walk.back());
            if (next.empty() || rng.bernoulli(st.stop_probability)) {
                break;
            }
            walk.push_back(next[rng.below(next.size())]);
        }
        ++pool[walk];
    }
    return pool;
}

/// Pool entries that are Hamiltonian paths from start to end, in pool order.
inline std::vector<Path> select_hamiltonian(const PathPool& pool, const DiGraph& g, NodeId start, NodeId end) {
    if (!g.has_node(start) || !g.has_node(end)) {
        throw argument_error("start and end must be graph nodes");
    }
    std::vector<Path> out;
    for (const auto& [path, count] : pool) {
        if (is_hamiltonian_path(g, path, start, end)) {
            out.push_back(path);
        }
    }
    return out;
}

inline std::string describe(const Path& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += (i ? "-" : "") + std::to_string(p[i]);
    }
    return s;
}

/// Renders each path as the concatenation of its node sequences.
inline Sequence render_path(const Path& p, const Encoding& e) {
    Sequence s;
    for (NodeId v : p) {
        auto it = e.node_seq.find(v);
        if (it == e.node_seq.end()) {
            throw argument_error("path " + describe(p) + " uses node " + std::to_string(v) +
                                 " which has no sequence in the encoding");
        }
        s = s + it->second;
    }
    return s;
}

inline OligoPool to_strands(const PathPool& pool, const Encoding& e) {
    OligoPool out;
    for (const auto& [path, count] : pool) {
        out.add(render_path(path, e), count);
    }
    return out;
}

/// Splits a strand back into node ids; nullopt if any chunk is not a node sequence.
inline std::optional<Path> decode_strand(const Sequence& s, const Encoding& e) {
    const std::size_t len = e.node_length();
    if (len == 0 || s.size() % len != 0 || s.empty()) {
        return std::nullopt;
    }
    std::map<Sequence, NodeId> lookup;
    for (const auto& [v, seq] : e.node_seq) {
        lookup.emplace(seq, v);
    }
    Path p;
    for (std::size_t at = 0; at < s.size(); at += len) {
        auto it = lookup.find(s.substr(at, len));
        if (it == lookup.end()) {
            return std::nullopt;
        }
        p.push_back(it->second);
    }
    return p;
}

/// The wet-lab selection cascade on rendered strands: PCR with the start and
/// end node sequences as primers, a gel window at exactly |V| node lengths,
/// then one affinity purification per node.
inline OligoPool molecular_select(const OligoPool& strands, const DiGraph& g, const Encoding& e, NodeId start,
                                  NodeId end, std::uint64_t pcr_gain = 1) {
    OligoPool p = pcr_select(strands, e.node_seq.at(start), e.node_seq.at(end), pcr_gain);
    const std::size_t want = g.size() * e.node_length();
    p = filter_by_length(p, want, want);
    for (NodeId v : g.nodes()) {
        p = affinity_select(p, e.node_seq.at(v));
    }
    return p;
}

}  // namespace strandbench::adleman
