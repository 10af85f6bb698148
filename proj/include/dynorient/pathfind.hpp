#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynorient/graph.hpp"

// Improving-path search and flip. An improving path <u,...,w> is a directed
// path with odeg(u) > odeg(w) + 1; reversing every edge on it lowers odeg(u)
// by one, raises odeg(w) by one and leaves everything in between unchanged.
//
// All searches fix d = odeg(anchor) at entry. Forward searches walk out-edges
// looking for a target with odeg < d-1; reverse searches walk in-edges
// looking for a source with odeg > d+1. Intermediate vertices are restricted
// to out-degree exactly d-1 (forward) or d+1 (reverse): under the maintainers'
// invariants any improving path can be truncated to one of that shape, so the
// pruned search is still complete. The oracle module keeps an unrestricted
// scan for auditing exactly this.
//
// Flips are applied from the far end of the path back toward the anchor, the
// order in which a recursive unwind would apply them; each flip only touches
// out-lists that later flips in the sequence have not yet read slots from, so
// the EdgeRefs collected during the search stay valid as they are consumed.

namespace dynorient {

struct SearchError : std::runtime_error {
    explicit SearchError(const std::string& msg) : std::runtime_error(msg) {}
};
struct MixedSourceDegreesError : SearchError {
    MixedSourceDegreesError(VertexId a, std::uint32_t da, VertexId b, std::uint32_t db)
        : SearchError("multi-source search requires equal out-degrees, got odeg(" +
                      std::to_string(a) + ")=" + std::to_string(da) + " and odeg(" +
                      std::to_string(b) + ")=" + std::to_string(db)) {}
};

struct SearchStats {
    std::uint64_t searches_started = 0;
    std::uint64_t searches_succeeded = 0;
    std::uint64_t vertices_scanned = 0;
    std::uint64_t edges_flipped = 0;  // sum of flipped path lengths
};

// O(1)-reset visited set: visited(v) iff stamp[v] equals the current epoch.
// Callers control when the epoch advances; sharing an epoch across several
// searches deliberately lets later searches see earlier (failed) exploration.
// Stamps are 32-bit to keep the array cache-dense; the one wraparound in 4
// billion epochs pays a linear refill.
class VisitMarker {
public:
    void ensure(std::size_t n) {
        if (stamp_.size() < n) stamp_.resize(n, 0);
    }
    bool visited(VertexId v) const { return stamp_[v] == epoch_; }
    void mark(VertexId v) { stamp_[v] = epoch_; }
    void new_epoch() {
        if (++epoch_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0u);
            epoch_ = 1;
        }
    }

private:
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 1;
};

// Reusable per-search scratch. parent[v] is only meaningful while
// marker.visited(v) holds for the epoch that wrote it.
struct SearchWorkspace {
    VisitMarker marker;
    std::vector<EdgeRef> parent;
    std::vector<VertexId> queue;
    struct DfsFrame {
        VertexId v;
        std::uint32_t next;   // next out/in slot of v to examine
        EdgeRef entered_via;  // edge flipped when the subtree below v succeeds
    };
    std::vector<DfsFrame> stack;

    void ensure(std::size_t n) {
        marker.ensure(n);
        if (parent.size() < n) parent.resize(n);
    }
};

struct PathEnds {
    VertexId source;       // vertex whose out-degree dropped
    VertexId target;       // vertex whose out-degree rose
    std::uint32_t length;  // edges flipped
};

namespace detail {

// Core of the depth-first search: runs the pre-seeded ws.stack to exhaustion.
// Frames below the top may include an already-exhausted root (next past its
// list) so that resumed searches can reuse the machinery.
inline bool dfs_walk(DynOrientedGraph& g, SearchWorkspace& ws, SearchStats& st,
                     std::uint32_t d) {
    VisitMarker& marker = ws.marker;
    auto& stack = ws.stack;
    while (!stack.empty()) {
        auto& top = stack.back();
        const auto outs = g.out_ids(top.v);
        if (top.next >= outs.size()) {
            stack.pop_back();
            continue;
        }
        const std::uint32_t slot = top.next++;
        const VertexId w = outs[slot];
        if (g.out_degree(w) + 1 != d || marker.visited(w)) continue;

        // Entering w: early check of all its out-neighbours first.
        ++st.vertices_scanned;
        const VertexId parent_v = top.v;
        const auto wouts = g.out_ids(w);
        for (std::uint32_t j = 0; j < wouts.size(); ++j) {
            if (g.out_degree(wouts[j]) + 1 < d) {
                g.flip({w, wouts[j], j});
                g.flip({parent_v, w, slot});
                st.edges_flipped += 2;
                for (std::size_t k = stack.size(); k-- > 1;) {
                    g.flip(stack[k].entered_via);
                    ++st.edges_flipped;
                }
                ++st.searches_succeeded;
                return true;
            }
        }
        marker.mark(w);
        stack.push_back({w, 0, EdgeRef{parent_v, w, slot}});
    }
    return false;
}

}  // namespace detail

// Depth-first forward search from u with the early check: at every entered
// vertex, all out-neighbours are first tested as targets (odeg < d-1) before
// any of them is entered as a d-1 intermediate. On success exactly one path
// is flipped; on failure the orientation is untouched.
inline bool find_and_flip_path(DynOrientedGraph& g, SearchWorkspace& ws, SearchStats& st,
                               VertexId u) {
    ++st.searches_started;
    const std::uint32_t d = g.out_degree(u);
    if (d < 2) return false;  // no target below d-1 can exist
    ws.ensure(g.vertex_count());
    VisitMarker& marker = ws.marker;
    if (marker.visited(u)) return false;  // shared-epoch mode: already exhausted

    ++st.vertices_scanned;
    {
        const auto outs = g.out_ids(u);
        for (std::uint32_t i = 0; i < outs.size(); ++i) {
            if (g.out_degree(outs[i]) + 1 < d) {
                g.flip({u, outs[i], i});
                ++st.searches_succeeded;
                ++st.edges_flipped;
                return true;
            }
        }
    }
    marker.mark(u);

    auto& stack = ws.stack;
    stack.clear();
    stack.push_back({u, 0, {}});
    return detail::dfs_walk(g, ws, st, d);
}

// Continuation of a shared visited epoch across one edge insertion: u is
// already marked at this level, meaning some failed search explored its whole
// out-list back when it had one edge less. Only the appended last slot can
// lead anywhere new, so the search reduces to probing that one edge and, if
// its endpoint is a fresh intermediate, walking on from there. Equivalent to
// a full search from u in both outcome and flipped path.
inline bool dfs_resume_last_edge(DynOrientedGraph& g, SearchWorkspace& ws, SearchStats& st,
                                 VertexId u) {
    ++st.searches_started;
    ws.ensure(g.vertex_count());
    const std::uint32_t d = g.out_degree(u);
    const std::uint32_t slot = d - 1;
    const VertexId v = g.out_ids(u)[slot];
    const std::uint32_t dv = g.out_degree(v);
    if (dv + 1 < d) {
        g.flip({u, v, slot});
        ++st.searches_succeeded;
        ++st.edges_flipped;
        return true;
    }
    VisitMarker& marker = ws.marker;
    if (dv + 1 != d || marker.visited(v)) return false;

    ++st.vertices_scanned;
    const auto vouts = g.out_ids(v);
    for (std::uint32_t j = 0; j < vouts.size(); ++j) {
        if (g.out_degree(vouts[j]) + 1 < d) {
            g.flip({v, vouts[j], j});
            g.flip({u, v, slot});
            st.edges_flipped += 2;
            ++st.searches_succeeded;
            return true;
        }
    }
    marker.mark(v);
    auto& stack = ws.stack;
    stack.clear();
    stack.push_back({u, d, {}});  // root frame, older slots already exhausted
    stack.push_back({v, 0, EdgeRef{u, v, slot}});
    return detail::dfs_walk(g, ws, st, d);
}

// Reverse analogue: depth-first over in-edges from u, looking for a source
// with odeg > d+1 through intermediates of out-degree exactly d+1.
inline bool find_and_flip_path_rev(DynOrientedGraph& g, SearchWorkspace& ws, SearchStats& st,
                                   VertexId u) {
    ++st.searches_started;
    if (u >= g.vertex_count()) return false;
    const std::uint32_t d = g.out_degree(u);
    ws.ensure(g.vertex_count());
    VisitMarker& marker = ws.marker;
    if (marker.visited(u)) return false;

    ++st.vertices_scanned;
    {
        const auto ins = g.in_edges(u);
        for (const auto& ie : ins) {
            if (g.out_degree(ie.from) > d + 1) {
                g.flip({ie.from, u, ie.out_slot});
                ++st.searches_succeeded;
                ++st.edges_flipped;
                return true;
            }
        }
    }
    marker.mark(u);

    auto& stack = ws.stack;
    stack.clear();
    stack.push_back({u, 0, {}});
    while (!stack.empty()) {
        auto& top = stack.back();
        const auto ins = g.in_edges(top.v);
        if (top.next >= ins.size()) {
            stack.pop_back();
            continue;
        }
        const auto ie = ins[top.next++];
        const VertexId v = ie.from;
        if (g.out_degree(v) != d + 1 || marker.visited(v)) continue;

        ++st.vertices_scanned;
        const VertexId child = top.v;
        const auto vins = g.in_edges(v);
        for (const auto& wie : vins) {
            if (g.out_degree(wie.from) > d + 1) {
                g.flip({wie.from, v, wie.out_slot});
                g.flip({v, child, ie.out_slot});
                st.edges_flipped += 2;
                for (std::size_t k = stack.size(); k-- > 1;) {
                    g.flip(stack[k].entered_via);
                    ++st.edges_flipped;
                }
                ++st.searches_succeeded;
                return true;
            }
        }
        marker.mark(v);
        stack.push_back({v, 0, EdgeRef{v, child, ie.out_slot}});
    }
    return false;
}

namespace detail {

// Core of the breadth-first search: runs the pre-seeded ws.queue (marked,
// parents set) to exhaustion. The id lists live in per-vertex heap blocks, so
// each dequeue costs a dependent header load plus a line miss; fetching the
// next vertex's span one step ahead keeps those misses off the critical path.
// `fetched` tracks which queue index `outs` belongs to: the vertex after the
// current one may only get enqueued mid-scan, in which case the next
// iteration reloads for itself.
template <class TargetPred>
inline std::optional<PathEnds> bfs_walk(DynOrientedGraph& g, SearchWorkspace& ws,
                                        SearchStats& st, std::uint32_t d,
                                        TargetPred&& is_target, bool restrict_intermediates) {
    VisitMarker& marker = ws.marker;
    auto& queue = ws.queue;
    if (queue.empty()) return std::nullopt;
    auto outs = g.out_ids(queue.front());
    std::size_t fetched = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        if (fetched != head) outs = g.out_ids(queue[head]);
        const auto cur = outs;
        if (head + 1 < queue.size()) {
            outs = g.out_ids(queue[head + 1]);
            fetched = head + 1;
#if defined(__GNUC__) || defined(__clang__)
            __builtin_prefetch(outs.data());
            if (outs.size() > 16) __builtin_prefetch(outs.data() + 16);
#endif
        }
        const VertexId x = queue[head];
        ++st.vertices_scanned;
        for (std::uint32_t i = 0; i < cur.size(); ++i) {
            const VertexId w = cur[i];
            // Marker before degree: in the exhausting (failing) searches that
            // dominate, most neighbours are already visited, and the stamp
            // probe alone rejects them.
            if (marker.visited(w)) continue;
            const std::uint32_t dw = g.out_degree(w);
            if (is_target(dw)) {
                // Flip the found edge first, then parent edges back to a root.
                EdgeRef e{x, w, i};
                std::uint32_t len = 0;
                VertexId root = x;
                for (;;) {
                    g.flip(e);
                    ++len;
                    const EdgeRef up = ws.parent[root];
                    if (up.slot == kNoSlot) break;
                    e = EdgeRef{up.from, root, up.slot};
                    root = up.from;
                }
                ++st.searches_succeeded;
                st.edges_flipped += len;
                return PathEnds{root, w, len};
            }
            if (!restrict_intermediates || dw + 1 == d) {
                marker.mark(w);
                ws.parent[w] = EdgeRef{x, w, i};
                queue.push_back(w);
            }
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Multi-source breadth-first forward search. All sources must share one
// out-degree d. Intermediates are restricted to out-degree d-1 unless
// restrict_intermediates is off (the static solver searches unrestricted).
// The first vertex satisfying is_target(odeg) ends the search; the path to it
// is rebuilt from parent EdgeRefs and flipped. Returns the path's endpoints,
// or nullopt when no target is reachable (orientation untouched).
template <class TargetPred>
inline std::optional<PathEnds> bfs_find_and_flip(DynOrientedGraph& g, SearchWorkspace& ws,
                                                 SearchStats& st,
                                                 std::span<const VertexId> sources,
                                                 TargetPred&& is_target,
                                                 bool restrict_intermediates = true) {
    assert(!sources.empty());
    ++st.searches_started;
    ws.ensure(g.vertex_count());
    VisitMarker& marker = ws.marker;
    const std::uint32_t d = g.out_degree(sources.front());
    for (VertexId s : sources)
        if (g.out_degree(s) != d)
            throw MixedSourceDegreesError(sources.front(), d, s, g.out_degree(s));

    auto& queue = ws.queue;
    queue.clear();
    for (VertexId s : sources) {
        if (marker.visited(s)) continue;
        marker.mark(s);
        ws.parent[s] = EdgeRef{s, s, kNoSlot};  // root sentinel
        queue.push_back(s);
    }
    return detail::bfs_walk(g, ws, st, d, is_target, restrict_intermediates);
}

// Breadth-first twin of dfs_resume_last_edge: continues the shared epoch over
// the one new out-edge of an already exhausted, still marked anchor.
inline bool bfs_resume_last_edge(DynOrientedGraph& g, SearchWorkspace& ws, SearchStats& st,
                                 VertexId u) {
    ++st.searches_started;
    ws.ensure(g.vertex_count());
    const std::uint32_t d = g.out_degree(u);
    const std::uint32_t slot = d - 1;
    const VertexId v = g.out_ids(u)[slot];
    const std::uint32_t dv = g.out_degree(v);
    if (dv + 1 < d) {
        g.flip({u, v, slot});
        ++st.searches_succeeded;
        ++st.edges_flipped;
        return true;
    }
    VisitMarker& marker = ws.marker;
    if (dv + 1 != d || marker.visited(v)) return false;

    ws.parent[u] = EdgeRef{u, u, kNoSlot};  // u roots the resumed walk
    marker.mark(v);
    ws.parent[v] = EdgeRef{u, v, slot};
    auto& queue = ws.queue;
    queue.clear();
    queue.push_back(v);
    return detail::bfs_walk(g, ws, st, d,
                            [d](std::uint32_t deg) { return deg + 1 < d; }, true)
        .has_value();
}

// Single-source BFS with the standard improving-path target, as the
// breadth-first drop-in for find_and_flip_path.
inline bool bfs_find_and_flip(DynOrientedGraph& g, SearchWorkspace& ws, SearchStats& st,
                              VertexId u) {
    const std::uint32_t d = g.out_degree(u);
    const VertexId src[1] = {u};
    return bfs_find_and_flip(g, ws, st, src,
                             [d](std::uint32_t deg) { return deg + 1 < d; })
        .has_value();
}

// Reverse breadth-first search from u over in-edges: finds a vertex w with
// odeg(w) > d+1 through intermediates of out-degree exactly d+1 and flips the
// path <w,...,u>. parent[v] stores the already-flippable edge from v toward u.
inline bool bfs_find_and_flip_rev(DynOrientedGraph& g, SearchWorkspace& ws, SearchStats& st,
                                  VertexId u) {
    ++st.searches_started;
    if (u >= g.vertex_count()) return false;
    ws.ensure(g.vertex_count());
    VisitMarker& marker = ws.marker;
    const std::uint32_t d = g.out_degree(u);

    auto& queue = ws.queue;
    queue.clear();
    if (!marker.visited(u)) {
        marker.mark(u);
        ws.parent[u] = EdgeRef{u, u, kNoSlot};
        queue.push_back(u);
    }

    for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId x = queue[head];
        ++st.vertices_scanned;
        const auto ins = g.in_edges(x);
        for (const auto& ie : ins) {
            const VertexId v = ie.from;
            if (marker.visited(v)) continue;
            const std::uint32_t dv = g.out_degree(v);
            if (dv > d + 1) {
                EdgeRef e{v, x, ie.out_slot};
                std::uint32_t len = 0;
                VertexId down = x;
                for (;;) {
                    g.flip(e);
                    ++len;
                    const EdgeRef next = ws.parent[down];
                    if (next.slot == kNoSlot) break;
                    e = next;
                    down = next.to;
                }
                ++st.searches_succeeded;
                st.edges_flipped += len;
                return true;
            }
            if (dv == d + 1) {
                marker.mark(v);
                ws.parent[v] = EdgeRef{v, x, ie.out_slot};
                queue.push_back(v);
            }
        }
    }
    return false;
}

}  // namespace dynorient
