// Replays an edit-sequence file through one maintainer with full per-update
// verification, then prints the run record the benchmark harness would log.
//
//   ./replay_file ../samples/data/wheel.seq

#include <fstream>
#include <iostream>

#include "dynorient/edit_sequence.hpp"
#include "dynorient/runner.hpp"

int main(int argc, char** argv) {
    const char* path = argc > 1 ? argv[1] : "../samples/data/wheel.seq";
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        return 1;
    }

    dynorient::EditSequence seq;
    try {
        seq = dynorient::parse_edit_sequence(in);
    } catch (const dynorient::ParseError& e) {
        std::cerr << "parse error on line " << e.line << ": " << e.what() << "\n";
        return 1;
    }

    // VerifyMode::kEvery cross-checks delta against the static solver after
    // every single update (and against the brute-force oracle on graphs small
    // enough for it), so a passing run is a strong exactness witness.
    const auto records =
        dynorient::run(seq, dynorient::Algorithm::kImproved,
                       dynorient::PathBackend::kBreadthFirst, 1,
                       dynorient::VerifyMode::kEvery, path, 0, true);

    const auto& r = records.front();
    std::cout << "ops " << r.op_count << ", final delta " << r.final_delta << ", "
              << r.total_ns << " ns, verified " << to_string(r.verified) << "\n";
    std::cout << "delta trajectory:";
    for (auto d : r.trajectory) std::cout << " " << d;
    std::cout << "\n";
    return 0;
}
