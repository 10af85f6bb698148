#include "dynorient/graph.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "dynorient/rng.hpp"

using namespace dynorient;

TEST(DynOrientedGraph, StartsEmpty) {
    DynOrientedGraph g;
    EXPECT_EQ(g.vertex_count(), 0u);
    EXPECT_EQ(g.edge_count(), 0u);
    EXPECT_EQ(g.delta(), 0u);
    EXPECT_EQ(g.peak_count(), 0u);
    EXPECT_EQ(g.out_degree(42), 0u);  // unknown ids are isolated
}

TEST(DynOrientedGraph, InsertTracksDegreesAndBuckets) {
    DynOrientedGraph g(4);
    g.insert_oriented(0, 1);
    EXPECT_EQ(g.out_degree(0), 1u);
    EXPECT_EQ(g.in_degree(1), 1u);
    EXPECT_EQ(g.delta(), 1u);
    EXPECT_EQ(g.peak_count(), 1u);

    g.insert_oriented(0, 2);
    EXPECT_EQ(g.delta(), 2u);
    const auto peaks = g.peaks();
    ASSERT_EQ(peaks.size(), 1u);
    EXPECT_EQ(peaks[0], 0u);
    EXPECT_EQ(g.vertices_with_out_degree(0).size(), 3u);  // 1, 2, 3
}

TEST(DynOrientedGraph, GrowsToCoverInsertedIds) {
    DynOrientedGraph g;
    g.insert_oriented(5, 9);
    EXPECT_EQ(g.vertex_count(), 10u);
    EXPECT_EQ(g.out_degree(5), 1u);
    EXPECT_EQ(g.peak_count(), 1u);
}

TEST(DynOrientedGraph, RejectsSelfLoopsAndDuplicates) {
    DynOrientedGraph g;
    g.insert_oriented(0, 1);
    EXPECT_THROW(g.insert_oriented(2, 2), SelfLoopError);
    EXPECT_THROW(g.insert_oriented(0, 1), DuplicateEdgeError);
    EXPECT_THROW(g.insert_oriented(1, 0), DuplicateEdgeError);  // either direction
    EXPECT_EQ(g.edge_count(), 1u);
}

TEST(DynOrientedGraph, RemoveRequiresExactDirection) {
    DynOrientedGraph g;
    g.insert_oriented(0, 1);
    EXPECT_THROW(g.remove_oriented(1, 0), EdgeNotFoundError);
    g.remove_oriented(0, 1);
    EXPECT_EQ(g.edge_count(), 0u);
    EXPECT_EQ(g.delta(), 0u);
    EXPECT_THROW(g.remove_oriented(0, 1), EdgeNotFoundError);
}

TEST(DynOrientedGraph, FlipReversesOneEdge) {
    DynOrientedGraph g;
    g.insert_oriented(0, 1);
    g.insert_oriented(1, 2);
    g.insert_oriented(2, 0);
    EXPECT_EQ(g.delta(), 1u);  // oriented triangle

    const auto e = g.orientation_of(0, 1);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->from, 0u);
    const auto r = g.flip(*e);
    EXPECT_EQ(r.from, 1u);
    EXPECT_EQ(r.to, 0u);
    EXPECT_EQ(g.out_degree(0), 0u);
    EXPECT_EQ(g.out_degree(1), 2u);
    EXPECT_EQ(g.delta(), 2u);

    g.flip(r);  // and back
    EXPECT_EQ(g.delta(), 1u);
    EXPECT_EQ(g.out_degree(0), 1u);
}

TEST(DynOrientedGraph, StaleRefsAreRejected) {
    DynOrientedGraph g;
    const auto e01 = g.insert_oriented(0, 1);
    g.insert_oriented(0, 2);
    g.remove_oriented(0, 1);  // swap-remove moves 0->2 into slot 0
    EXPECT_FALSE(g.valid(e01));
    EXPECT_THROW(g.flip(e01), StaleEdgeRefError);

    const auto e02 = g.orientation_of(0, 2);
    ASSERT_TRUE(e02.has_value());
    EXPECT_EQ(e02->slot, 0u);
    EXPECT_TRUE(g.valid(*e02));
}

TEST(DynOrientedGraph, OrientationOfFindsEitherDirection) {
    DynOrientedGraph g;
    g.insert_oriented(3, 1);
    const auto a = g.orientation_of(1, 3);
    const auto b = g.orientation_of(3, 1);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(a->from, 3u);
    EXPECT_EQ(b->from, 3u);
    EXPECT_FALSE(g.orientation_of(1, 2).has_value());
    EXPECT_TRUE(g.adjacent(1, 3));
    EXPECT_FALSE(g.adjacent(0, 1));
}

TEST(DynOrientedGraph, DirectedEdgesListsEverything) {
    DynOrientedGraph g;
    g.insert_oriented(2, 0);
    g.insert_oriented(0, 1);
    auto edges = g.directed_edges();
    std::sort(edges.begin(), edges.end());
    EXPECT_EQ(edges, (std::vector<std::pair<VertexId, VertexId>>{{0, 1}, {2, 0}}));
}

TEST(DynOrientedGraph, MirrorsSurviveChurn) {
    // Differential test against a trivial shadow model: after every mutation
    // the adjacency mirrors, the degree buckets and delta() must agree with a
    // from-scratch recount.
    DynOrientedGraph g(10);
    std::set<std::pair<VertexId, VertexId>> shadow;  // directed
    SplitMix64 rng(0xDECADEu);

    auto recount_check = [&] {
        ASSERT_EQ(g.edge_count(), shadow.size());
        std::uint32_t max_deg = 0;
        std::vector<std::uint32_t> deg(10, 0), indeg(10, 0);
        for (const auto& [u, v] : shadow) {
            ++deg[u];
            ++indeg[v];
        }
        for (VertexId v = 0; v < 10; ++v) {
            ASSERT_EQ(g.out_degree(v), deg[v]) << "vertex " << v;
            ASSERT_EQ(g.in_degree(v), indeg[v]) << "vertex " << v;
            max_deg = std::max(max_deg, deg[v]);
            // v must sit in exactly its degree bucket
            const auto bucket = g.vertices_with_out_degree(deg[v]);
            ASSERT_NE(std::find(bucket.begin(), bucket.end(), v), bucket.end());
        }
        ASSERT_EQ(g.delta(), max_deg);
        std::uint32_t peak_cnt = 0;
        for (VertexId v = 0; v < 10; ++v)
            if (deg[v] == max_deg) ++peak_cnt;
        ASSERT_EQ(g.peak_count(), peak_cnt);
        // mirror coherence via in_edges
        for (VertexId v = 0; v < 10; ++v)
            for (const auto& ie : g.in_edges(v)) {
                const auto outs = g.out_edges(ie.from);
                ASSERT_LT(ie.out_slot, outs.size());
                ASSERT_EQ(outs[ie.out_slot].to, v);
            }
    };

    for (int step = 0; step < 400; ++step) {
        const VertexId u = static_cast<VertexId>(rng.below(10));
        const VertexId v = static_cast<VertexId>(rng.below(10));
        if (u == v) continue;
        const auto cur = g.orientation_of(u, v);
        const std::uint64_t action = rng.below(3);
        if (!cur) {
            g.insert_oriented(u, v);
            shadow.insert({u, v});
        } else if (action == 0) {
            g.remove_oriented(cur->from, cur->to);
            shadow.erase({cur->from, cur->to});
        } else {
            const auto r = g.flip(*cur);
            shadow.erase({cur->from, cur->to});
            shadow.insert({r.from, r.to});
        }
        recount_check();
    }
}
