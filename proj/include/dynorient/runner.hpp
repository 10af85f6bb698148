#pragma once

#include <chrono>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynorient/edit_sequence.hpp"
#include "dynorient/maintainer.hpp"
#include "dynorient/oracle.hpp"
#include "dynorient/static_solver.hpp"

// Benchmark runner: replays an edit sequence on fresh maintainers, timing
// only the update loop. Verification (invariant audits per update, or a final
// cross-check against the static solver and oracle) runs off the clock.

namespace dynorient {

enum class VerifyMode { kNone, kFinal, kEvery };

inline const char* to_string(VerifyMode v) {
    switch (v) {
        case VerifyMode::kNone: return "none";
        case VerifyMode::kFinal: return "final";
        case VerifyMode::kEvery: return "every";
    }
    return "?";
}

struct VerificationFailure : std::runtime_error {
    VerificationFailure(std::string msg, std::uint64_t op_index)
        : std::runtime_error(std::move(msg)), op_index(op_index) {}
    std::uint64_t op_index;  // index of the update after which the check failed
};

struct RunRecord {
    std::string instance;
    Algorithm algorithm;
    PathBackend backend;
    std::uint64_t seed = 0;
    std::uint32_t repetition = 0;
    std::uint64_t op_count = 0;
    std::uint64_t total_ns = 0;
    std::uint32_t final_delta = 0;
    SearchStats stats;
    VerifyMode verified = VerifyMode::kNone;
    std::vector<std::uint32_t> trajectory;  // per-update delta, when recorded
};

namespace detail {

inline std::string repro_header(const std::string& instance, Algorithm alg, PathBackend backend,
                                const EditSequence& seq, std::uint64_t op_index) {
    const EditOp& op = seq.ops[op_index];
    std::ostringstream os;
    os << "instance=" << (instance.empty() ? "<anon>" : instance) << " alg=" << to_string(alg)
       << "+" << to_string(backend) << " n=" << seq.vertex_span() << " failing update #"
       << op_index << " (" << (op.kind == EditKind::kInsert ? "+ " : "- ") << op.u << " "
       << op.v << ")";
    return os.str();
}

inline void audit_invariant(Algorithm alg, const Maintainer& m, const std::string& instance,
                            PathBackend backend, const EditSequence& seq,
                            std::uint64_t op_index) {
    // Strong promises no improving path anywhere; naive and improved promise
    // none from any peak.
    const bool peaks_only = alg != Algorithm::kStrong;
    if (auto path = scan_improving_paths(m.orientation(), peaks_only)) {
        std::ostringstream os;
        os << "invariant audit found an improving path of length " << path->size() - 1
           << " from vertex " << path->front() << ": "
           << repro_header(instance, alg, backend, seq, op_index);
        throw VerificationFailure(os.str(), op_index);
    }
}

}  // namespace detail

inline std::vector<RunRecord> run(const EditSequence& seq, Algorithm alg, PathBackend backend,
                                  std::uint32_t repetitions, VerifyMode verify,
                                  const std::string& instance = "", std::uint64_t seed = 0,
                                  bool record_trajectory = false) {
    using Clock = std::chrono::steady_clock;
    std::vector<RunRecord> records;
    records.reserve(repetitions);

    for (std::uint32_t rep = 0; rep < repetitions; ++rep) {
        auto m = make_maintainer(alg, backend, seq.vertex_span());
        RunRecord rec;
        rec.instance = instance;
        rec.algorithm = alg;
        rec.backend = backend;
        rec.seed = seed;
        rec.repetition = rep;
        rec.op_count = seq.ops.size();
        rec.verified = verify;

        std::uint64_t elapsed = 0;
        if (verify == VerifyMode::kEvery || record_trajectory) {
            for (std::uint64_t i = 0; i < seq.ops.size(); ++i) {
                const EditOp& op = seq.ops[i];
                const auto t0 = Clock::now();
                if (op.kind == EditKind::kInsert)
                    m->insert(op.u, op.v);
                else
                    m->remove(op.u, op.v);
                elapsed += std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0)
                               .count();
                if (record_trajectory) rec.trajectory.push_back(m->delta());
                if (verify == VerifyMode::kEvery)
                    detail::audit_invariant(alg, *m, instance, backend, seq, i);
            }
        } else {
            const auto t0 = Clock::now();
            for (const EditOp& op : seq.ops) {
                if (op.kind == EditKind::kInsert)
                    m->insert(op.u, op.v);
                else
                    m->remove(op.u, op.v);
            }
            elapsed =
                std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count();
        }

        rec.total_ns = elapsed;
        rec.final_delta = m->delta();
        rec.stats = m->stats();

        if (verify == VerifyMode::kFinal && !seq.ops.empty()) {
            // Reconstruct the surviving edge set and cross-check the final
            // delta against the static solver (and the subset-enumeration
            // oracle when the instance is small enough for its guard).
            std::vector<UndirectedEdge> live;
            {
                std::unordered_set<std::uint64_t> present;
                auto key = [](VertexId a, VertexId b) {
                    if (a > b) std::swap(a, b);
                    return (std::uint64_t{a} << 32) | b;
                };
                for (const EditOp& op : seq.ops) {
                    if (op.kind == EditKind::kInsert)
                        present.insert(key(op.u, op.v));
                    else
                        present.erase(key(op.u, op.v));
                }
                for (std::uint64_t k : present)
                    live.emplace_back(static_cast<VertexId>(k >> 32),
                                      static_cast<VertexId>(k & 0xffffffffu));
            }
            const std::uint32_t want = venkateswaran_solve(live).k;
            if (want != rec.final_delta)
                throw VerificationFailure(
                    "final delta " + std::to_string(rec.final_delta) +
                        " != static solver's " + std::to_string(want) + ": " +
                        detail::repro_header(instance, alg, backend, seq, seq.ops.size() - 1),
                    seq.ops.size() - 1);
            if (seq.vertex_span() <= 24) {
                const auto cert = pseudoarboricity_bruteforce(live, seq.vertex_span());
                if (cert.optimal_delta != rec.final_delta)
                    throw VerificationFailure(
                        "final delta " + std::to_string(rec.final_delta) + " != oracle's " +
                            std::to_string(cert.optimal_delta) + ": " +
                            detail::repro_header(instance, alg, backend, seq,
                                                 seq.ops.size() - 1),
                        seq.ops.size() - 1);
            }
        }
        records.push_back(std::move(rec));
    }
    return records;
}

inline constexpr const char* kCsvHeader =
    "instance,algorithm,backend,seed,repetition,ops,total_ns,final_delta,searches,flips,"
    "verified";

inline void write_csv(std::ostream& out, std::span<const RunRecord> records) {
    out << kCsvHeader << "\n";
    for (const RunRecord& r : records) {
        out << r.instance << "," << to_string(r.algorithm) << "," << to_string(r.backend) << ","
            << r.seed << "," << r.repetition << "," << r.op_count << "," << r.total_ns << ","
            << r.final_delta << "," << r.stats.searches_started << "," << r.stats.edges_flipped
            << "," << to_string(r.verified) << "\n";
    }
}

// Reads rows written by write_csv; only the CSV-visible fields are restored.
inline std::vector<RunRecord> parse_results_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "empty results file");
    if (line != kCsvHeader) throw ParseError(1, "unrecognized results header");
    std::vector<RunRecord> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != 11) throw ParseError(lineno, "expected 11 columns");
        RunRecord r;
        try {
            r.instance = cells[0];
            if (cells[1] == "naive")
                r.algorithm = Algorithm::kNaive;
            else if (cells[1] == "strong")
                r.algorithm = Algorithm::kStrong;
            else if (cells[1] == "improved")
                r.algorithm = Algorithm::kImproved;
            else
                throw std::invalid_argument("algorithm");
            if (cells[2] == "dfs")
                r.backend = PathBackend::kDepthFirst;
            else if (cells[2] == "bfs")
                r.backend = PathBackend::kBreadthFirst;
            else
                throw std::invalid_argument("backend");
            r.seed = std::stoull(cells[3]);
            r.repetition = static_cast<std::uint32_t>(std::stoul(cells[4]));
            r.op_count = std::stoull(cells[5]);
            r.total_ns = std::stoull(cells[6]);
            r.final_delta = static_cast<std::uint32_t>(std::stoul(cells[7]));
            r.stats.searches_started = std::stoull(cells[8]);
            r.stats.edges_flipped = std::stoull(cells[9]);
            if (cells[10] == "none")
                r.verified = VerifyMode::kNone;
            else if (cells[10] == "final")
                r.verified = VerifyMode::kFinal;
            else if (cells[10] == "every")
                r.verified = VerifyMode::kEvery;
            else
                throw std::invalid_argument("verified");
        } catch (const std::exception&) {
            throw ParseError(lineno, "malformed cell in results row");
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace dynorient
