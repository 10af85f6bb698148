#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dynorient {

using VertexId = std::uint32_t;
using UndirectedEdge = std::pair<VertexId, VertexId>;

inline constexpr std::uint32_t kNoSlot = 0xffffffffu;

struct GraphError : std::runtime_error {
    explicit GraphError(const std::string& msg) : std::runtime_error(msg) {}
};
struct SelfLoopError : GraphError {
    explicit SelfLoopError(VertexId v)
        : GraphError("self-loop at vertex " + std::to_string(v)) {}
};
struct DuplicateEdgeError : GraphError {
    DuplicateEdgeError(VertexId u, VertexId v)
        : GraphError("edge {" + std::to_string(u) + "," + std::to_string(v) +
                     "} already present") {}
};
struct EdgeNotFoundError : GraphError {
    EdgeNotFoundError(VertexId u, VertexId v)
        : GraphError("no edge " + std::to_string(u) + "->" + std::to_string(v) +
                     " (if the undirected edge exists it is stored at the other "
                     "endpoint; resolve with orientation_of first)") {}
};
struct StaleEdgeRefError : GraphError {
    StaleEdgeRefError() : GraphError("stale EdgeRef: slot no longer holds this edge") {}
};

// Handle to one directed edge: out_edges(from)[slot] points at `to`.
// Slots are positions in a swap-remove array, so any removal or flip touching
// `from` may relocate other edges; refs must be re-validated (flip does) or
// re-acquired via orientation_of after unrelated mutations.
struct EdgeRef {
    VertexId from = 0;
    VertexId to = 0;
    std::uint32_t slot = kNoSlot;
};

// Adjacency structure for an oriented simple graph under edge insertion,
// deletion and flip, all O(degree) or O(1).
//
// Every directed edge (u,v) is stored twice: as an OutEntry in out_[u] and as
// an InEntry in in_[v]. The two entries carry each other's array positions
// (in_slot / out_slot) so either side can be removed in O(1) once located.
// Removal is swap-remove; the entry moved into the hole has its mirror's
// stored slot patched.
//
// Vertices are additionally kept in buckets by out-degree (swap-remove with a
// position index), which makes delta(), peak_count() and peak enumeration
// cheap. Degrees change by exactly 1 per mutation, so the max-degree tracker
// only ever moves a single step.
class DynOrientedGraph {
public:
    struct OutEntry {
        VertexId to;
        std::uint32_t in_slot;  // position of the mirror entry in in_[to]
    };
    struct InEntry {
        VertexId from;
        std::uint32_t out_slot;  // position of the mirror entry in out_[from]
    };

    explicit DynOrientedGraph(std::size_t n_hint = 0) { grow(n_hint); }

    std::size_t vertex_count() const { return out_.size(); }
    std::size_t edge_count() const { return edges_; }

    // Ids the graph has not grown to yet count as isolated. Degrees live in a
    // flat side array: searches probe them at random millions of times, and a
    // 4-byte load beats sizing the adjacency vector header.
    std::uint32_t out_degree(VertexId v) const { return v < deg_.size() ? deg_[v] : 0; }
    std::uint32_t in_degree(VertexId v) const {
        return v < in_.size() ? static_cast<std::uint32_t>(in_[v].size()) : 0;
    }

    // Maximum out-degree; 0 for an edgeless graph.
    std::uint32_t delta() const { return delta_; }

    // Number of vertices attaining delta().
    std::uint32_t peak_count() const {
        if (bucket_.empty()) return 0;
        return static_cast<std::uint32_t>(bucket_[delta_].size());
    }

    // Vertices with the given out-degree, in no particular order. The view is
    // invalidated by any mutation; callers that flip while iterating must
    // snapshot it first.
    std::span<const VertexId> vertices_with_out_degree(std::uint32_t d) const {
        if (d >= bucket_.size()) return {};
        return bucket_[d];
    }
    std::span<const VertexId> peaks() const { return vertices_with_out_degree(delta_); }

    std::span<const OutEntry> out_edges(VertexId v) const { return out_[v]; }
    std::span<const InEntry> in_edges(VertexId v) const { return in_[v]; }

    // Out-neighbour ids alone, parallel to out_edges(v) slot for slot. Hot
    // searches scan only ids: sixteen to a cache line instead of eight
    // entries, which about halves the lines a scan touches.
    std::span<const VertexId> out_ids(VertexId v) const { return out_ids_[v]; }

    // Inserts the directed edge u->v, growing the vertex set to max(u,v)+1 if
    // needed. Self-loops and edges already present (in either direction) are
    // hard errors and leave the graph untouched.
    EdgeRef insert_oriented(VertexId u, VertexId v) {
        if (u == v) throw SelfLoopError(u);
        if (adjacent(u, v)) throw DuplicateEdgeError(u, v);
        grow(static_cast<std::size_t>(std::max(u, v)) + 1);
        EdgeRef e = link(u, v);
        raise_degree(u);
        ++edges_;
        return e;
    }

    // Removes the directed edge u->v. Throws EdgeNotFound if it is absent,
    // including when the undirected edge exists but is oriented v->u.
    void remove_oriented(VertexId u, VertexId v) {
        const std::uint32_t slot = find_out_slot(u, v);
        if (slot == kNoSlot) throw EdgeNotFoundError(u, v);
        unlink(u, slot);
        lower_degree(u);
        --edges_;
    }

    // Reverses one directed edge in O(1) and returns the ref of the reversed
    // edge. The ref is validated against the current slot contents first.
    EdgeRef flip(EdgeRef e) {
        if (!valid(e)) throw StaleEdgeRefError();
        unlink(e.from, e.slot);
        lower_degree(e.from);
        EdgeRef r = link(e.to, e.from);
        raise_degree(e.to);
        return r;
    }

    bool valid(EdgeRef e) const {
        return e.from < out_.size() && e.slot < out_[e.from].size() &&
               out_[e.from][e.slot].to == e.to;
    }

    // Current orientation of the undirected edge {u,v}, or nullopt if absent.
    // Scans both endpoint lists, so the cost is bounded by the two degrees.
    std::optional<EdgeRef> orientation_of(VertexId u, VertexId v) const {
        if (std::uint32_t s = find_out_slot(u, v); s != kNoSlot) return EdgeRef{u, v, s};
        if (std::uint32_t s = find_out_slot(v, u); s != kNoSlot) return EdgeRef{v, u, s};
        return std::nullopt;
    }

    bool adjacent(VertexId u, VertexId v) const { return orientation_of(u, v).has_value(); }

    // Directed edges as (from, to) pairs, for validation and serialization.
    std::vector<std::pair<VertexId, VertexId>> directed_edges() const {
        std::vector<std::pair<VertexId, VertexId>> out;
        out.reserve(edges_);
        for (VertexId u = 0; u < out_.size(); ++u)
            for (const OutEntry& e : out_[u]) out.emplace_back(u, e.to);
        return out;
    }

    void grow(std::size_t n) {
        if (n <= out_.size()) return;
        const std::size_t old = out_.size();
        out_.resize(n);
        out_ids_.resize(n);
        in_.resize(n);
        deg_.resize(n, 0);
        bucket_pos_.resize(n);
        if (bucket_.empty()) bucket_.emplace_back();
        for (std::size_t v = old; v < n; ++v) {
            bucket_pos_[v] = static_cast<std::uint32_t>(bucket_[0].size());
            bucket_[0].push_back(static_cast<VertexId>(v));
        }
    }

private:
    std::uint32_t find_out_slot(VertexId u, VertexId v) const {
        if (u >= out_.size()) return kNoSlot;
        const auto& lst = out_[u];
        for (std::uint32_t i = 0; i < lst.size(); ++i)
            if (lst[i].to == v) return i;
        return kNoSlot;
    }

    // Appends the directed edge, mirrors cross-linked. No checks.
    EdgeRef link(VertexId u, VertexId v) {
        const auto oslot = static_cast<std::uint32_t>(out_[u].size());
        const auto islot = static_cast<std::uint32_t>(in_[v].size());
        out_[u].push_back({v, islot});
        out_ids_[u].push_back(v);
        in_[v].push_back({u, oslot});
        return {u, v, oslot};
    }

    // Swap-removes out_[u][oslot] and its mirror. When a surviving entry is
    // moved into a hole, the slot stored on its mirror is patched; the moved
    // entry can never be the edge being removed itself (guarded), and it can
    // never belong to the same (u,v) pair since the graph is simple, so the
    // two patches cannot interfere.
    void unlink(VertexId u, std::uint32_t oslot) {
        const OutEntry ent = out_[u][oslot];
        auto& iv = in_[ent.to];
        const auto ilast = static_cast<std::uint32_t>(iv.size()) - 1;
        if (ent.in_slot != ilast) {
            iv[ent.in_slot] = iv[ilast];
            out_[iv[ent.in_slot].from][iv[ent.in_slot].out_slot].in_slot = ent.in_slot;
        }
        iv.pop_back();
        auto& ou = out_[u];
        auto& oi = out_ids_[u];
        const auto olast = static_cast<std::uint32_t>(ou.size()) - 1;
        if (oslot != olast) {
            ou[oslot] = ou[olast];
            oi[oslot] = oi[olast];
            in_[ou[oslot].to][ou[oslot].in_slot].out_slot = oslot;
        }
        ou.pop_back();
        oi.pop_back();
    }

    // Degree of u just went from d-1 to d (after the out_ push).
    void raise_degree(VertexId u) {
        const auto d = static_cast<std::uint32_t>(out_[u].size());
        deg_[u] = d;
        move_bucket(u, d - 1, d);
        if (d > delta_) delta_ = d;
    }

    // Degree of u just went from d+1 to d (after the out_ pop). If that
    // emptied the top bucket, delta_ drops exactly one step: bucket d is
    // non-empty because u just landed there.
    void lower_degree(VertexId u) {
        const auto d = static_cast<std::uint32_t>(out_[u].size());
        deg_[u] = d;
        move_bucket(u, d + 1, d);
        if (delta_ == d + 1 && bucket_[d + 1].empty()) delta_ = d;
    }

    void move_bucket(VertexId v, std::uint32_t from, std::uint32_t to) {
        auto& b = bucket_[from];
        const std::uint32_t pos = bucket_pos_[v];
        if (pos + 1 != b.size()) {
            b[pos] = b.back();
            bucket_pos_[b[pos]] = pos;
        }
        b.pop_back();
        if (to >= bucket_.size()) bucket_.resize(to + 1);
        bucket_pos_[v] = static_cast<std::uint32_t>(bucket_[to].size());
        bucket_[to].push_back(v);
    }

    std::vector<std::vector<OutEntry>> out_;
    std::vector<std::vector<VertexId>> out_ids_;  // out_[v] targets, ids only
    std::vector<std::vector<InEntry>> in_;
    std::vector<std::uint32_t> deg_;             // out_[v].size(), packed
    std::vector<std::vector<VertexId>> bucket_;  // vertices by out-degree
    std::vector<std::uint32_t> bucket_pos_;      // v's index inside its bucket
    std::uint32_t delta_ = 0;
    std::size_t edges_ = 0;
};

}  // namespace dynorient
