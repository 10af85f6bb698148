// Command-line front end: replay and benchmark edit sequences, convert METIS
// graphs to dynamic instances, query the brute-force oracle, and turn result
// CSVs into performance profiles.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dynorient/edit_sequence.hpp"
#include "dynorient/maintainer.hpp"
#include "dynorient/metrics.hpp"
#include "dynorient/oracle.hpp"
#include "dynorient/runner.hpp"
#include "dynorient/static_solver.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitVerification = 3;
constexpr int kExitOracleGuard = 4;

dynorient::EditSequence load_sequence(const std::string& path, const std::string& format,
                                      std::uint64_t seed, const std::string& mode) {
    std::ifstream in(path);
    if (!in) throw dynorient::ParseError(0, "cannot open " + path);
    if (format == "metis") {
        const auto edges = dynorient::parse_metis(in);
        const auto m = mode == "insert_then_delete"
                           ? dynorient::ConvertMode::kInsertThenDelete
                           : dynorient::ConvertMode::kInsertOnly;
        return dynorient::static_to_sequence(edges, seed, m);
    }
    return dynorient::parse_edit_sequence(in);
}

std::string instance_name(const std::string& path) {
    return std::filesystem::path(path).filename().string();
}

int cmd_run(const std::string& input, const std::string& format, const std::string& alg_name,
            const std::string& backend_name, std::uint64_t seed, const std::string& mode,
            std::uint32_t reps, const std::string& verify_name, const std::string& csv_path,
            const std::string& trajectory_path) {
    const auto seq = load_sequence(input, format, seed, mode);

    dynorient::Algorithm alg = dynorient::Algorithm::kImproved;
    if (alg_name == "naive") alg = dynorient::Algorithm::kNaive;
    if (alg_name == "strong") alg = dynorient::Algorithm::kStrong;
    const auto backend = backend_name == "dfs" ? dynorient::PathBackend::kDepthFirst
                                               : dynorient::PathBackend::kBreadthFirst;
    auto verify = dynorient::VerifyMode::kNone;
    if (verify_name == "final") verify = dynorient::VerifyMode::kFinal;
    if (verify_name == "every") verify = dynorient::VerifyMode::kEvery;

    const auto records = dynorient::run(seq, alg, backend, reps, verify, instance_name(input),
                                        seed, !trajectory_path.empty());

    for (const auto& r : records) {
        std::cout << r.instance << " " << to_string(r.algorithm) << "+" << to_string(r.backend)
                  << " rep " << r.repetition << ": ops=" << r.op_count
                  << " final_delta=" << r.final_delta << " total_ns=" << r.total_ns
                  << " searches=" << r.stats.searches_started
                  << " flips=" << r.stats.edges_flipped << " verified=" << to_string(r.verified)
                  << "\n";
    }
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot write " + csv_path);
        dynorient::write_csv(out, records);
    }
    if (!trajectory_path.empty()) {
        std::ofstream out(trajectory_path);
        if (!out) throw std::runtime_error("cannot write " + trajectory_path);
        for (std::uint32_t d : records.front().trajectory) out << d << "\n";
    }
    return 0;
}

int cmd_convert(const std::string& input, std::uint64_t seed, const std::string& mode,
                const std::string& output) {
    std::ifstream in(input);
    if (!in) throw dynorient::ParseError(0, "cannot open " + input);
    const auto edges = dynorient::parse_metis(in);
    const auto m = mode == "insert_then_delete" ? dynorient::ConvertMode::kInsertThenDelete
                                                : dynorient::ConvertMode::kInsertOnly;
    const auto seq = dynorient::static_to_sequence(edges, seed, m);
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot write " + output);
    dynorient::serialize_edit_sequence(out, seq);
    std::cout << "wrote " << seq.ops.size() << " ops to " << output << "\n";
    return 0;
}

int cmd_oracle(const std::string& input, const std::string& format) {
    std::ifstream in(input);
    if (!in) throw dynorient::ParseError(0, "cannot open " + input);

    std::vector<dynorient::UndirectedEdge> edges;
    std::size_t n = 0;
    if (format == "metis") {
        edges = dynorient::parse_metis(in);
        for (const auto& [u, v] : edges) n = std::max({n, std::size_t{u} + 1, std::size_t{v} + 1});
    } else {
        const auto seq = dynorient::parse_edit_sequence(in);
        std::map<std::pair<dynorient::VertexId, dynorient::VertexId>, bool> present;
        for (const auto& op : seq.ops) {
            auto key = std::minmax(op.u, op.v);
            present[{key.first, key.second}] = op.kind == dynorient::EditKind::kInsert;
        }
        for (const auto& [e, alive] : present)
            if (alive) edges.emplace_back(e.first, e.second);
        n = seq.vertex_span();
    }

    const auto cert = dynorient::pseudoarboricity_bruteforce(edges, n);
    std::cout << "optimal_delta " << cert.optimal_delta << "\n";
    std::cout << "witness_density " << cert.witness_edges << "/" << cert.witness.size() << "\n";
    std::cout << "witness";
    for (auto v : cert.witness) std::cout << " " << v;
    std::cout << "\n";
    return 0;
}

int cmd_profile(const std::string& metric_name, const std::string& input,
                const std::string& output) {
    std::ifstream in(input);
    if (!in) throw dynorient::ParseError(0, "cannot open " + input);
    const auto rows = dynorient::parse_results_csv(in);
    if (rows.empty()) throw dynorient::ParseError(0, "no data rows in " + input);

    // Average repetitions arithmetically for time; delta is replay-invariant.
    std::map<std::string, std::map<std::string, std::pair<double, std::uint64_t>>> acc;
    for (const auto& r : rows) {
        const std::string label =
            std::string(to_string(r.algorithm)) + "+" + to_string(r.backend);
        auto& cell = acc[label][r.instance];
        cell.first += metric_name == "delta" ? static_cast<double>(r.final_delta)
                                             : static_cast<double>(r.total_ns);
        cell.second += 1;
    }
    std::map<std::string, std::map<std::string, double>> metric;
    for (const auto& [label, row] : acc)
        for (const auto& [inst, cell] : row)
            metric[label][inst] = cell.first / static_cast<double>(cell.second);

    const auto profile = dynorient::performance_profile(metric);
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot write " + output);
    out << "algorithm,tau,fraction\n";
    for (const auto& [label, points] : profile)
        for (const auto& p : points)
            out << label << "," << p.tau << "," << p.fraction << "\n";
    std::cout << "wrote profile for " << profile.size() << " algorithm labels to " << output
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact dynamic minimum out-degree orientation toolkit"};
    app.require_subcommand(1);

    std::string input, output, format = "seq", alg = "improved", backend = "bfs";
    std::string mode = "insert_only", verify = "none", csv_path, trajectory_path;
    std::string metric = "time";
    std::uint64_t seed = 0;
    std::uint32_t reps = 1;

    auto* run_cmd = app.add_subcommand("run", "replay an instance and report timings");
    run_cmd->add_option("--input", input, "instance file")->required();
    run_cmd->add_option("--format", format, "input format")
        ->check(CLI::IsMember({"seq", "metis"}));
    run_cmd->add_option("--alg", alg, "maintainer")
        ->check(CLI::IsMember({"naive", "strong", "improved"}));
    run_cmd->add_option("--backend", backend, "path search backend")
        ->check(CLI::IsMember({"bfs", "dfs"}));
    run_cmd->add_option("--seed", seed, "shuffle seed for metis conversion");
    run_cmd->add_option("--mode", mode, "metis conversion mode")
        ->check(CLI::IsMember({"insert_only", "insert_then_delete"}));
    run_cmd->add_option("--reps", reps, "repetitions");
    run_cmd->add_option("--verify", verify, "verification level")
        ->check(CLI::IsMember({"none", "final", "every"}));
    run_cmd->add_option("--csv", csv_path, "append-style CSV output file");
    run_cmd->add_option("--trajectory", trajectory_path, "write per-update delta here");

    auto* convert_cmd = app.add_subcommand("convert", "METIS graph to edit sequence");
    convert_cmd->add_option("--input", input, "METIS graph")->required();
    convert_cmd->add_option("--seed", seed, "shuffle seed");
    convert_cmd->add_option("--mode", mode, "conversion mode")
        ->check(CLI::IsMember({"insert_only", "insert_then_delete"}));
    convert_cmd->add_option("--output", output, "edit sequence file")->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "print the exact optimal delta");
    oracle_cmd->add_option("--input", input, "instance file")->required();
    oracle_cmd->add_option("--format", format, "input format")
        ->check(CLI::IsMember({"seq", "metis"}));

    auto* profile_cmd = app.add_subcommand("profile", "performance profile from results CSV");
    profile_cmd->add_option("--metric", metric, "metric column")
        ->check(CLI::IsMember({"time", "delta"}));
    profile_cmd->add_option("--input", input, "results CSV")->required();
    profile_cmd->add_option("--output", output, "profile CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (run_cmd->parsed())
            return cmd_run(input, format, alg, backend, seed, mode, reps, verify, csv_path,
                           trajectory_path);
        if (convert_cmd->parsed()) return cmd_convert(input, seed, mode, output);
        if (oracle_cmd->parsed()) return cmd_oracle(input, format);
        if (profile_cmd->parsed()) return cmd_profile(metric, input, output);
    } catch (const dynorient::TooLargeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOracleGuard;
    } catch (const dynorient::VerificationFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    } catch (const dynorient::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const dynorient::InvalidOpError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return 0;
}
