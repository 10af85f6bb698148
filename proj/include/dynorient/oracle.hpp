#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynorient/graph.hpp"

// Independent ground truth used by the test suite and the CLI `oracle`
// subcommand. Everything here is deliberately brute force and shares no code
// with the search routines it is meant to check.

namespace dynorient {

struct TooLargeError : std::runtime_error {
    explicit TooLargeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PseudoarboricityCertificate {
    std::uint32_t optimal_delta = 0;
    std::vector<VertexId> witness;     // subset maximizing ceil(|E(S)|/|S|)
    std::uint64_t witness_edges = 0;   // |E(S)|; density is witness_edges / witness.size()
    double density() const {
        return witness.empty() ? 0.0
                               : static_cast<double>(witness_edges) /
                                     static_cast<double>(witness.size());
    }
};

namespace detail {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

// Exact pseudoarboricity (== optimal maximum out-degree) of the graph on
// vertices 0..n-1 by enumerating vertex subsets: the maximizer of
// ceil(|E(S)|/|S|) always lies inside one connected component, so enumeration
// runs per component. Ties go to the smallest vertex-set bitmask (over
// vertices ordered by id) so results are reproducible. Guard: n <= 24.
inline PseudoarboricityCertificate pseudoarboricity_bruteforce(
    std::span<const UndirectedEdge> edges, std::size_t n) {
    if (n > 24)
        throw TooLargeError("pseudoarboricity_bruteforce: n = " + std::to_string(n) +
                            " exceeds the enumeration guard (24)");
    PseudoarboricityCertificate best;
    if (edges.empty()) return best;

    detail::UnionFind uf(n);
    for (const auto& [u, v] : edges) uf.unite(u, v);

    // Component members in ascending id order, so local bit i < local bit j
    // implies global id order and mask comparisons carry over.
    std::vector<std::vector<VertexId>> comp_members(n);
    for (VertexId v = 0; v < n; ++v) comp_members[uf.find(v)].push_back(v);

    std::vector<std::uint32_t> local_index(n);
    // The witness is a raw-density maximizer (optimal_delta is its ceiling);
    // densities compare exactly as cross-multiplied rationals.
    std::uint64_t best_num = 0, best_den = 1;
    std::uint64_t best_global_mask = 0;  // among subsets achieving best density

    for (const auto& members : comp_members) {
        if (members.size() < 2) continue;  // no edges possible
        const std::size_t c = members.size();
        for (std::size_t i = 0; i < c; ++i) local_index[members[i]] = static_cast<std::uint32_t>(i);

        // Local adjacency bitmasks, then edges_in[mask] by peeling the lowest
        // set bit: edges inside mask = edges inside (mask minus lsb) plus the
        // lsb vertex's neighbours within the rest.
        std::vector<std::uint32_t> adj(c, 0);
        bool any_edge = false;
        for (const auto& [u, v] : edges) {
            if (uf.find(u) != uf.find(members[0])) continue;
            adj[local_index[u]] |= 1u << local_index[v];
            adj[local_index[v]] |= 1u << local_index[u];
            any_edge = true;
        }
        if (!any_edge) continue;

        const std::uint32_t full = (c == 32) ? 0xffffffffu : ((1u << c) - 1);
        std::vector<std::uint32_t> edges_in(static_cast<std::size_t>(full) + 1, 0);
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            const std::uint32_t low = mask & (mask - 1u);  // mask minus lsb
            const int lsb = std::countr_zero(mask);
            edges_in[mask] = edges_in[low] +
                             static_cast<std::uint32_t>(std::popcount(adj[lsb] & low));
            if (edges_in[mask] == 0) continue;
            const std::uint64_t num = edges_in[mask];
            const std::uint64_t den = static_cast<std::uint32_t>(std::popcount(mask));
            const bool denser = num * best_den > best_num * den;
            const bool tied = num * best_den == best_num * den;
            std::uint64_t gmask = 0;
            if (denser || tied) {
                for (std::size_t i = 0; i < c; ++i)
                    if (mask & (1u << i)) gmask |= std::uint64_t{1} << members[i];
            }
            if (denser || (tied && gmask < best_global_mask)) {
                best_num = num;
                best_den = den;
                best_global_mask = gmask;
                best.witness_edges = num;
                best.witness.clear();
                for (std::size_t i = 0; i < c; ++i)
                    if (mask & (1u << i)) best.witness.push_back(members[i]);
            }
        }
    }
    if (best_num > 0) best.optimal_delta = static_cast<std::uint32_t>((best_num + best_den - 1) / best_den);
    return best;
}

// Second, fully independent oracle: minimum over all 2^m orientations of the
// maximum out-degree. Guard: m <= 20.
inline std::uint32_t exhaustive_orientation_delta(std::span<const UndirectedEdge> edges,
                                                  std::size_t n) {
    const std::size_t m = edges.size();
    if (m > 20)
        throw TooLargeError("exhaustive_orientation_delta: m = " + std::to_string(m) +
                            " exceeds the enumeration guard (20)");
    if (m == 0) return 0;
    std::vector<std::uint32_t> deg(n, 0);
    std::uint32_t best = 0xffffffffu;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::fill(deg.begin(), deg.end(), 0u);
        std::uint32_t worst = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const VertexId out = (mask >> i) & 1 ? edges[i].second : edges[i].first;
            worst = std::max(worst, ++deg[out]);
            if (worst >= best) break;  // cannot beat the incumbent
        }
        best = std::min(best, worst);
        if (best == 1) break;  // 1 is the floor for any non-empty graph
    }
    return best;
}

// Unrestricted improving-path scan: plain BFS over out-edges from every
// vertex (or every peak), no degree pruning, looking for any endpoint w with
// odeg(w) < odeg(start) - 1. Returns one such path as a vertex sequence, or
// nullopt if none exists. Read-only.
inline std::optional<std::vector<VertexId>> scan_improving_paths(const DynOrientedGraph& g,
                                                                 bool from_peaks_only) {
    const std::size_t n = g.vertex_count();
    std::vector<VertexId> starts;
    if (from_peaks_only) {
        auto p = g.peaks();
        starts.assign(p.begin(), p.end());
        std::sort(starts.begin(), starts.end());
    } else {
        starts.resize(n);
        std::iota(starts.begin(), starts.end(), 0u);
    }

    std::vector<VertexId> parent(n), queue;
    std::vector<char> seen(n);
    for (VertexId s : starts) {
        const std::uint32_t d = g.out_degree(s);
        if (d < 2) continue;  // no endpoint can sit two below
        std::fill(seen.begin(), seen.end(), 0);
        queue.clear();
        queue.push_back(s);
        seen[s] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const VertexId x = queue[head];
            for (const auto& e : g.out_edges(x)) {
                if (seen[e.to]) continue;
                seen[e.to] = 1;
                parent[e.to] = x;
                if (g.out_degree(e.to) + 1 < d) {
                    std::vector<VertexId> path{e.to};
                    for (VertexId cur = e.to; cur != s; cur = parent[cur])
                        path.push_back(parent[cur]);
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                queue.push_back(e.to);
            }
        }
    }
    return std::nullopt;
}

struct ValidationReport {
    bool valid = true;
    std::vector<UndirectedEdge> missing;     // expected but not in the orientation
    std::vector<UndirectedEdge> unexpected;  // oriented but not expected
    std::string detail;                      // structural problems (mirrors, buckets)
};

// Checks that the orientation covers exactly the given undirected edge set,
// once each, and that the internal mirrors and degree buckets are coherent.
inline ValidationReport validate_orientation(const DynOrientedGraph& g,
                                             std::span<const UndirectedEdge> original_edges) {
    ValidationReport rep;

    // Mirror coherence: every out-entry's mirror must point straight back.
    std::uint32_t max_degree = 0;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        const auto outs = g.out_edges(u);
        for (std::uint32_t i = 0; i < outs.size(); ++i) {
            const auto& oe = outs[i];
            const auto ins = g.in_edges(oe.to);
            if (oe.in_slot >= ins.size() || ins[oe.in_slot].from != u ||
                ins[oe.in_slot].out_slot != i) {
                rep.valid = false;
                rep.detail = "mirror mismatch on edge " + std::to_string(u) + "->" +
                             std::to_string(oe.to);
                return rep;
            }
        }
        max_degree = std::max(max_degree, g.out_degree(u));
    }
    if (max_degree != g.delta()) {
        rep.valid = false;
        rep.detail = "delta() = " + std::to_string(g.delta()) +
                     " but the recounted maximum out-degree is " + std::to_string(max_degree);
        return rep;
    }

    auto norm = [](UndirectedEdge e) {
        return e.first < e.second ? e : UndirectedEdge{e.second, e.first};
    };
    std::vector<UndirectedEdge> have;
    for (const auto& [u, v] : g.directed_edges()) have.push_back(norm({u, v}));
    std::vector<UndirectedEdge> want(original_edges.begin(), original_edges.end());
    for (auto& e : want) e = norm(e);
    std::sort(have.begin(), have.end());
    std::sort(want.begin(), want.end());

    std::set_difference(want.begin(), want.end(), have.begin(), have.end(),
                        std::back_inserter(rep.missing));
    std::set_difference(have.begin(), have.end(), want.begin(), want.end(),
                        std::back_inserter(rep.unexpected));
    // A doctored duplicate in either list shows up as a self-difference.
    if (std::adjacent_find(have.begin(), have.end()) != have.end()) {
        rep.valid = false;
        rep.detail = "orientation stores an undirected edge twice";
    }
    if (std::adjacent_find(want.begin(), want.end()) != want.end()) {
        rep.valid = false;
        if (rep.detail.empty()) rep.detail = "expected edge list contains a duplicate";
    }
    if (!rep.missing.empty() || !rep.unexpected.empty()) rep.valid = false;
    return rep;
}

}  // namespace dynorient
