#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynorient/graph.hpp"
#include "dynorient/pathfind.hpp"

// The three exact fully dynamic maintainers. Each one keeps delta() equal to
// the optimal maximum out-degree of the current graph after every update.

namespace dynorient {

enum class PathBackend { kDepthFirst, kBreadthFirst };
enum class Algorithm { kNaive, kStrong, kImproved };

inline const char* to_string(PathBackend b) {
    return b == PathBackend::kDepthFirst ? "dfs" : "bfs";
}
inline const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::kNaive: return "naive";
        case Algorithm::kStrong: return "strong";
        case Algorithm::kImproved: return "improved";
    }
    return "?";
}

class Maintainer {
public:
    virtual ~Maintainer() = default;
    virtual void insert(VertexId u, VertexId v) = 0;
    virtual void remove(VertexId u, VertexId v) = 0;
    virtual std::uint32_t delta() const = 0;
    const SearchStats& stats() const { return stats_; }
    const DynOrientedGraph& orientation() const { return g_; }
    PathBackend backend() const { return backend_; }

protected:
    explicit Maintainer(std::size_t n_hint, PathBackend backend)
        : g_(n_hint), backend_(backend) {}

    // Orients the new edge away from the endpoint of smaller out-degree,
    // ties toward the smaller id. Returns the storing endpoint.
    VertexId orient_and_insert(VertexId u, VertexId v) {
        const std::uint32_t du = g_.out_degree(u), dv = g_.out_degree(v);
        if (dv < du || (dv == du && v < u)) std::swap(u, v);
        g_.insert_oriented(u, v);
        return u;
    }

    // Removes {u,v} from whichever endpoint stores it; returns that endpoint.
    VertexId resolve_and_remove(VertexId u, VertexId v) {
        const auto e = g_.orientation_of(u, v);
        if (!e) throw EdgeNotFoundError(u, v);
        g_.remove_oriented(e->from, e->to);
        shared_level_ = kNoSharedLevel;  // deletions invalidate failure marks
        return e->from;
    }

    // Forward search for the insert path; callers invoke it right after
    // storing a new out-edge at u, which therefore sits in u's last slot.
    //
    // Consecutive failing insert searches at one degree level share a visited
    // epoch: a failed search leaves marks on a region that is closed under
    // eligible steps and target-free, and the only mutation between two
    // insert searches is the new edge itself. An unmarked anchor starts a
    // full search that just skips the dead region; a marked anchor was
    // already exhausted at this level minus its new last edge, so the search
    // resumes across that one edge alone. Either way outcomes and flipped
    // paths are identical to fresh searches, only re-scanning is saved. A
    // success (it flips), a different level or any deletion breaks the
    // sharing. Same idea as the shared marks inside the tightening sweep,
    // stretched across updates.
    bool search_forward(VertexId u) {
        ws_.ensure(g_.vertex_count());
        const std::uint32_t d = g_.out_degree(u);
        bool ok;
        if (shared_level_ == d && ws_.marker.visited(u)) {
            ok = backend_ == PathBackend::kDepthFirst
                     ? dfs_resume_last_edge(g_, ws_, stats_, u)
                     : bfs_resume_last_edge(g_, ws_, stats_, u);
        } else {
            if (shared_level_ != d) ws_.marker.new_epoch();
            ok = backend_ == PathBackend::kDepthFirst
                     ? find_and_flip_path(g_, ws_, stats_, u)
                     : bfs_find_and_flip(g_, ws_, stats_, u);
        }
        shared_level_ = ok ? kNoSharedLevel : d;
        return ok;
    }

    bool search_reverse(VertexId u) {
        shared_level_ = kNoSharedLevel;
        ws_.marker.new_epoch();
        return backend_ == PathBackend::kDepthFirst
                   ? find_and_flip_path_rev(g_, ws_, stats_, u)
                   : bfs_find_and_flip_rev(g_, ws_, stats_, u);
    }

    DynOrientedGraph g_;
    SearchWorkspace ws_;
    SearchStats stats_{};
    PathBackend backend_;

private:
    static constexpr std::uint64_t kNoSharedLevel = ~0ull;
    std::uint64_t shared_level_ = kNoSharedLevel;
};

// Baseline: after every update, re-run the static improvement loop from the
// current orientation, flipping peak-to-sink paths until a search fails.
class NaiveDynOpt : public Maintainer {
public:
    explicit NaiveDynOpt(std::size_t n_hint = 0,
                         PathBackend backend = PathBackend::kBreadthFirst)
        : Maintainer(n_hint, backend) {}

    void insert(VertexId u, VertexId v) override {
        orient_and_insert(u, v);
        improve_until_stuck();
    }
    void remove(VertexId u, VertexId v) override {
        resolve_and_remove(u, v);
        improve_until_stuck();
    }
    std::uint32_t delta() const override { return g_.delta(); }

private:
    void improve_until_stuck() {
        for (;;) {
            const std::uint32_t d = g_.delta();
            if (d == 0) return;  // nothing can improve an edgeless orientation
            const auto view = g_.peaks();
            peaks_.assign(view.begin(), view.end());
            std::sort(peaks_.begin(), peaks_.end());
            bool improved = false;
            ws_.marker.new_epoch();
            if (backend_ == PathBackend::kBreadthFirst) {
                improved = bfs_find_and_flip(g_, ws_, stats_, peaks_,
                                             [d](std::uint32_t deg) { return deg + 1 < d; })
                               .has_value();
            } else {
                // Failed probes share the epoch; the graph has not changed
                // between them, so their dead ends stay dead.
                for (VertexId v : peaks_) {
                    if (find_and_flip_path(g_, ws_, stats_, v)) {
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) return;
        }
    }

    std::vector<VertexId> peaks_;
};

// One search per update: a forward search from the endpoint that stored an
// inserted edge, a reverse search from the endpoint that lost a deleted one.
// Maintains the strong invariant that no improving path exists at all.
class StrongDynOpt : public Maintainer {
public:
    explicit StrongDynOpt(std::size_t n_hint = 0,
                          PathBackend backend = PathBackend::kBreadthFirst)
        : Maintainer(n_hint, backend) {}

    void insert(VertexId u, VertexId v) override { search_forward(orient_and_insert(u, v)); }
    void remove(VertexId u, VertexId v) override { search_reverse(resolve_and_remove(u, v)); }
    std::uint32_t delta() const override { return g_.delta(); }
};

// Relaxed invariant: only peak vertices are guaranteed free of improving
// paths. Tracks delta and the number of peaks itself and only searches when
// an update touches the top of the degree spectrum; a deletion that empties
// the peak set triggers the tightening sweep.
class ImprovedDynOpt : public Maintainer {
public:
    explicit ImprovedDynOpt(std::size_t n_hint = 0,
                            PathBackend backend = PathBackend::kBreadthFirst)
        : Maintainer(n_hint, backend) {}

    void insert(VertexId u, VertexId v) override {
        const VertexId s = orient_and_insert(u, v);
        const std::uint32_t d = g_.out_degree(s);
        if (d == delta_) {
            if (!search_forward(s)) ++peak_cnt_;
        } else if (d == delta_ + 1) {
            if (search_forward(s)) {
                ++peak_cnt_;  // the path's endpoint rose to delta
            } else {
                ++delta_;
                peak_cnt_ = 1;
            }
        }
        // d < delta_: s was a sink, nothing to restore.
    }

    void remove(VertexId u, VertexId v) override {
        const VertexId s = resolve_and_remove(u, v);
        const std::uint32_t d = g_.out_degree(s);
        if (d + 1 == delta_) {
            assert(peak_cnt_ > 0);
            --peak_cnt_;  // s was a peak
        } else if (d + 2 == delta_) {
            if (search_reverse(s)) {
                assert(peak_cnt_ > 0);
                --peak_cnt_;  // some peak paid for the fix
            }
        }
        if (peak_cnt_ == 0) {
            assert(delta_ > 0);
            --delta_;
            tighten_outdegree();
        }
    }

    std::uint32_t delta() const override { return delta_; }
    std::uint32_t tracked_peaks() const { return peak_cnt_; }

private:
    // Sweeps all vertices sitting at the (just decremented) delta, trying to
    // push each below it. A sweep where every search succeeds means delta can
    // drop again; the first sweep that improves nothing ends the loop, and its
    // failure count is the new number of peaks.
    void tighten_outdegree() {
        if (delta_ == 0) {
            peak_cnt_ = g_.peak_count();  // everyone is an (edgeless) peak
            return;
        }
        ws_.marker.new_epoch();
        bool one = true;
        while (one) {
            one = false;
            bool all = true;
            peak_cnt_ = 0;
            const auto view = g_.vertices_with_out_degree(delta_);
            sweep_.assign(view.begin(), view.end());
            std::sort(sweep_.begin(), sweep_.end());
            assert(!sweep_.empty());  // the level below an emptied peak set is populated
            for (VertexId v : sweep_) {
                if (g_.out_degree(v) != delta_) continue;  // re-classified
                const bool ok = backend_ == PathBackend::kDepthFirst
                                    ? find_and_flip_path(g_, ws_, stats_, v)
                                    : bfs_find_and_flip(g_, ws_, stats_, v);
                if (ok) {
                    one = true;
                    // The flip changed the graph; earlier dead ends may have
                    // come alive, so stale marks must go.
                    ws_.marker.new_epoch();
                } else {
                    all = false;
                    ++peak_cnt_;
                }
            }
            if (all) {
                assert(delta_ > 0);
                --delta_;
                if (delta_ == 0) {
                    peak_cnt_ = g_.peak_count();
                    return;
                }
            }
        }
    }

    std::uint32_t delta_ = 0;
    std::uint32_t peak_cnt_ = 0;
    std::vector<VertexId> sweep_;
};

inline std::unique_ptr<Maintainer> make_maintainer(Algorithm alg, PathBackend backend,
                                                   std::size_t n_hint = 0) {
    switch (alg) {
        case Algorithm::kNaive: return std::make_unique<NaiveDynOpt>(n_hint, backend);
        case Algorithm::kStrong: return std::make_unique<StrongDynOpt>(n_hint, backend);
        case Algorithm::kImproved: return std::make_unique<ImprovedDynOpt>(n_hint, backend);
    }
    throw std::invalid_argument("unknown algorithm");
}

}  // namespace dynorient
