// Orients a whole METIS graph at once with the static solver and prints the
// result next to the brute-force optimum (the oracle refuses big inputs, so
// this sample sticks to small files).
//
//   ./static_orient ../samples/data/k4.graph

#include <fstream>
#include <iostream>

#include "dynorient/edit_sequence.hpp"
#include "dynorient/oracle.hpp"
#include "dynorient/static_solver.hpp"

int main(int argc, char** argv) {
    const char* path = argc > 1 ? argv[1] : "../samples/data/k4.graph";
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        return 1;
    }

    const auto edges = dynorient::parse_metis(in);
    auto result = dynorient::venkateswaran_solve(edges);
    std::cout << "m = " << edges.size() << ", max out-degree k = " << result.k << "\n";
    for (const auto& [from, to] : result.orientation.directed_edges())
        std::cout << "  " << from << " -> " << to << "\n";

    std::size_t n = 0;
    for (const auto& [u, v] : edges) n = std::max({n, std::size_t{u} + 1, std::size_t{v} + 1});
    const auto cert = dynorient::pseudoarboricity_bruteforce(edges, n);
    std::cout << "oracle optimum " << cert.optimal_delta << ", densest witness has "
              << cert.witness_edges << " edges over " << cert.witness.size()
              << " vertices\n";
    return 0;
}
