#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dynorient/graph.hpp"
#include "dynorient/pathfind.hpp"

// Static exact solver: start from an arbitrary orientation with maximum
// out-degree k, then repeatedly flip paths from S = {odeg == k} to
// T = {odeg <= k-2}; whenever S empties, k drops and both sets are rebuilt.
// The first failed search certifies that k is optimal.

namespace dynorient {

struct MalformedInputError : std::runtime_error {
    explicit MalformedInputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Arbitrary starting orientation: every edge away from its lower-id endpoint.
inline DynOrientedGraph initial_orientation(std::span<const UndirectedEdge> edges) {
    DynOrientedGraph g;
    for (const auto& [u, v] : edges) {
        try {
            g.insert_oriented(std::min(u, v), std::max(u, v));
        } catch (const GraphError& e) {
            throw MalformedInputError(e.what());
        }
    }
    return g;
}

struct StaticResult {
    DynOrientedGraph orientation;
    std::uint32_t k;
};

inline StaticResult venkateswaran_solve(std::span<const UndirectedEdge> edges) {
    DynOrientedGraph g = initial_orientation(edges);
    std::uint32_t k = g.delta();
    if (k == 0) return {std::move(g), 0};

    SearchWorkspace ws;
    SearchStats stats;
    std::vector<VertexId> sources;
    std::vector<char> in_s(g.vertex_count(), 0);

    auto rebuild_s = [&] {
        sources.clear();
        for (VertexId v : g.vertices_with_out_degree(k)) {
            sources.push_back(v);
            in_s[v] = 1;
        }
        std::sort(sources.begin(), sources.end());
    };
    rebuild_s();

    for (;;) {
        // S shrinks in place; T is the degree predicate odeg <= k-2, which
        // needs no explicit bookkeeping (a target that rises to k-1 simply
        // stops matching).
        std::erase_if(sources, [&](VertexId v) { return !in_s[v]; });
        ws.marker.new_epoch();
        const auto res =
            bfs_find_and_flip(g, ws, stats, sources,
                              [k](std::uint32_t deg) { return deg + 2 <= k; },
                              /*restrict_intermediates=*/false);
        if (!res) return {std::move(g), k};
        in_s[res->source] = 0;
        if (sources.size() == 1) {  // the erased source was the last of S
            --k;
            rebuild_s();
        }
    }
}

}  // namespace dynorient
