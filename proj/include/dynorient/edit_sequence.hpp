#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dynorient/graph.hpp"
#include "dynorient/rng.hpp"

// Instance formats: the edit-sequence grammar and the METIS adjacency format,
// plus the static-to-dynamic converter.
//
// Edit-sequence grammar, one op per line:
//   % anything        comment
//   # dyn <n>         optional header declaring a vertex count
//   + u v             insert undirected edge {u,v}
//   - u v             delete undirected edge {u,v}
// Ids are whitespace-separated decimal, 0-based, and may be sparse; they are
// densified in first-seen order and the mapping is kept.

namespace dynorient {

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
    std::size_t line;
};
struct InvalidOpError : std::runtime_error {
    InvalidOpError(std::size_t line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
    std::size_t line;
};
struct AsymmetricAdjacencyError : std::runtime_error {
    AsymmetricAdjacencyError(VertexId u, VertexId v)
        : std::runtime_error("vertex " + std::to_string(v + 1) + " lists " +
                             std::to_string(u + 1) + " but not vice versa") {}
};
struct CountMismatchError : std::runtime_error {
    CountMismatchError(std::size_t declared, std::size_t actual)
        : std::runtime_error("header declares " + std::to_string(declared) +
                             " edges, adjacency contains " + std::to_string(actual)) {}
};

enum class EditKind { kInsert, kDelete };

struct EditOp {
    EditKind kind;
    VertexId u, v;
};

struct EditSequence {
    std::vector<EditOp> ops;
    std::optional<std::uint32_t> declared_n;
    std::vector<std::uint64_t> external_ids;  // dense id -> original id; empty means identity

    // Vertex count to size maintainers for.
    std::uint32_t vertex_span() const {
        std::uint32_t n = declared_n.value_or(0);
        if (!external_ids.empty())
            n = std::max(n, static_cast<std::uint32_t>(external_ids.size()));
        for (const EditOp& op : ops) n = std::max({n, op.u + 1, op.v + 1});
        return n;
    }
};

inline EditSequence parse_edit_sequence(std::istream& in) {
    EditSequence seq;
    std::unordered_map<std::uint64_t, VertexId> dense;
    auto densify = [&](std::uint64_t ext) {
        auto [it, fresh] = dense.try_emplace(ext, static_cast<VertexId>(dense.size()));
        if (fresh) seq.external_ids.push_back(ext);
        return it->second;
    };

    // Live edge set for load-time validation, keyed on the dense id pair.
    std::unordered_set<std::uint64_t> present;
    auto key = [](VertexId a, VertexId b) {
        if (a > b) std::swap(a, b);
        return (std::uint64_t{a} << 32) | b;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;  // blank line
        if (head[0] == '%') continue;
        if (head == "#") {
            std::string word;
            std::uint64_t n;
            if (!(ls >> word >> n) || word != "dyn")
                throw ParseError(lineno, "unrecognized header, expected '# dyn <n>'");
            seq.declared_n = static_cast<std::uint32_t>(n);
            continue;
        }
        if (head != "+" && head != "-")
            throw ParseError(lineno, "expected '+', '-', '%' or '# dyn', got '" + head + "'");
        std::uint64_t eu, ev;
        if (!(ls >> eu >> ev)) throw ParseError(lineno, "expected two vertex ids");
        std::string extra;
        if (ls >> extra) throw ParseError(lineno, "trailing tokens after edge");
        if (eu == ev) throw InvalidOpError(lineno, "self-loop");
        const VertexId u = densify(eu), v = densify(ev);
        if (head == "+") {
            if (!present.insert(key(u, v)).second)
                throw InvalidOpError(lineno, "inserting an edge that is already present");
            seq.ops.push_back({EditKind::kInsert, u, v});
        } else {
            if (present.erase(key(u, v)) == 0)
                throw InvalidOpError(lineno, "deleting an absent edge");
            seq.ops.push_back({EditKind::kDelete, u, v});
        }
    }
    return seq;
}

inline void serialize_edit_sequence(std::ostream& out, const EditSequence& seq) {
    if (seq.declared_n) out << "# dyn " << *seq.declared_n << "\n";
    for (const EditOp& op : seq.ops)
        out << (op.kind == EditKind::kInsert ? "+ " : "- ") << op.u << " " << op.v << "\n";
}

// METIS adjacency format: header "n m", then n 1-based adjacency lines (an
// empty line is an isolated vertex); every edge must be listed at both
// endpoints. Comment lines start with '%'. Returns the deduplicated 0-based
// edge list, which must contain exactly m edges.
inline std::vector<UndirectedEdge> parse_metis(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    auto next_content_line = [&](bool required) -> std::optional<std::string> {
        while (std::getline(in, line)) {
            ++lineno;
            const auto first = line.find_first_not_of(" \t\r");
            if (first != std::string::npos && line[first] == '%') continue;
            return line;
        }
        if (required) throw ParseError(lineno + 1, "unexpected end of file");
        return std::nullopt;
    };

    const auto header = next_content_line(true);
    std::istringstream hs(*header);
    std::uint64_t n, m;
    if (!(hs >> n >> m)) throw ParseError(lineno, "header must be 'n m'");
    std::string extra;
    if (hs >> extra) throw ParseError(lineno, "header must be exactly 'n m'");
    if (n > 0xffffffffull) throw ParseError(lineno, "vertex count exceeds 32-bit range");

    std::vector<std::vector<VertexId>> adj(n);
    for (std::uint64_t v = 0; v < n; ++v) {
        const auto content = next_content_line(false);
        if (!content) break;  // missing trailing lines read as isolated vertices
        std::istringstream ls(*content);
        std::uint64_t nb;
        while (ls >> nb) {
            if (nb < 1 || nb > n)
                throw ParseError(lineno, "neighbour id " + std::to_string(nb) +
                                             " out of range 1.." + std::to_string(n));
            if (nb == v + 1) throw ParseError(lineno, "self-loop");
            adj[v].push_back(static_cast<VertexId>(nb - 1));
        }
        if (ls.bad()) throw ParseError(lineno, "malformed adjacency line");
    }

    for (VertexId v = 0; v < n; ++v) {
        std::sort(adj[v].begin(), adj[v].end());
        if (std::adjacent_find(adj[v].begin(), adj[v].end()) != adj[v].end())
            throw ParseError(lineno, "vertex " + std::to_string(v + 1) +
                                         " lists a neighbour twice");
    }
    std::vector<UndirectedEdge> edges;
    for (VertexId v = 0; v < n; ++v) {
        for (VertexId w : adj[v]) {
            if (!std::binary_search(adj[w].begin(), adj[w].end(), v))
                throw AsymmetricAdjacencyError(w, v);
            if (v < w) edges.emplace_back(v, w);
        }
    }
    if (edges.size() != m) throw CountMismatchError(m, edges.size());
    return edges;
}

enum class ConvertMode { kInsertOnly, kInsertThenDelete };

// Static graph to dynamic instance: inserts all edges in a seeded random
// order; kInsertThenDelete then deletes all edges in a second, independently
// shuffled order drawn from the same PRNG stream (an artifact extension for
// exercising deletions; the insertion part is the standard conversion).
inline EditSequence static_to_sequence(std::span<const UndirectedEdge> edges,
                                       std::uint64_t seed, ConvertMode mode) {
    SplitMix64 rng(seed);
    std::vector<UndirectedEdge> order(edges.begin(), edges.end());
    shuffle(order, rng);

    EditSequence seq;
    std::uint32_t n = 0;
    for (const auto& [u, v] : order) {
        seq.ops.push_back({EditKind::kInsert, u, v});
        n = std::max({n, u + 1, v + 1});
    }
    if (mode == ConvertMode::kInsertThenDelete) {
        std::vector<UndirectedEdge> order2(edges.begin(), edges.end());
        shuffle(order2, rng);
        for (const auto& [u, v] : order2) seq.ops.push_back({EditKind::kDelete, u, v});
    }
    seq.declared_n = n;
    return seq;
}

}  // namespace dynorient
