#pragma once

#include "strandbench/adleman.hpp"
#include "strandbench/oligo_pool.hpp"
#include "strandbench/random.hpp"
#include "strandbench/sequence.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace testing_support {

using namespace strandbench;

inline Sequence random_sequence(Rng& rng, std::size_t len, const char* alphabet = "ACGT") {
    const std::string a(alphabet);
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s += a[rng.below(a.size())];
    return Sequence(s);
}

inline OligoPool random_pool(Rng& rng, std::size_t entries, std::size_t max_len, const char* alphabet = "ACGT") {
    OligoPool p;
    for (std::size_t i = 0; i < entries; ++i) {
        p.add(random_sequence(rng, 1 + rng.below(max_len), alphabet), 1 + rng.below(5));
    }
    return p;
}

/// Erdos-Renyi digraph on nodes 0..n-1 without self-loops.
inline adleman::DiGraph random_digraph(Rng& rng, std::size_t n, double p) {
    std::vector<adleman::NodeId> nodes;
    std::vector<adleman::Edge> edges;
    for (std::size_t i = 0; i < n; ++i) nodes.push_back(static_cast<adleman::NodeId>(i));
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (u != v && rng.bernoulli(p)) edges.emplace_back(u, v);
        }
    }
    return adleman::DiGraph(nodes, edges);
}

/// Every ordering of the nodes, kept when it starts and ends right and follows edges.
inline std::set<adleman::Path> brute_force_hamiltonian(const adleman::DiGraph& g, adleman::NodeId start,
                                                       adleman::NodeId end) {
    std::vector<adleman::NodeId> order = g.nodes();
    std::sort(order.begin(), order.end());
    std::set<adleman::Path> out;
    do {
        if (order.front() != start || order.back() != end) continue;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < order.size() && ok; ++i) ok = g.has_edge(order[i], order[i + 1]);
        if (ok) out.insert(order);
    } while (std::next_permutation(order.begin(), order.end()));
    return out;
}

/// Splits at each leftmost non-overlapping site occurrence, cutting after the site.
inline std::vector<std::string> split_after(const std::string& s, const std::string& site) {
    std::vector<std::string> parts;
    std::string cur;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s.compare(i, site.size(), site) == 0) {
            cur += site;
            parts.push_back(cur);
            cur.clear();
            i += site.size();
        } else {
            cur += s[i++];
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
}

}  // namespace testing_support
