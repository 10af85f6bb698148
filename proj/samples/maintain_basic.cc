// Smallest possible tour: feed edges to a maintainer one at a time and watch
// the optimum move. Every delta() value below is exact, not an approximation.

#include <cstdio>

#include "dynorient/maintainer.hpp"

int main() {
    dynorient::ImprovedDynOpt m;

    // A triangle orients as a cycle, one edge out of each corner.
    m.insert(0, 1);
    m.insert(1, 2);
    m.insert(2, 0);
    std::printf("triangle: delta = %u\n", m.delta());

    // Completing K4 forces some vertex to own two edges.
    m.insert(0, 3);
    m.insert(1, 3);
    m.insert(2, 3);
    std::printf("K4:       delta = %u\n", m.delta());

    // Deleting enough edges lets the maintainer tighten back down to 1.
    m.remove(0, 1);
    m.remove(2, 3);
    std::printf("sparser:  delta = %u\n", m.delta());

    const auto& st = m.stats();
    std::printf("%llu searches, %llu succeeded, %llu edge flips\n",
                static_cast<unsigned long long>(st.searches_started),
                static_cast<unsigned long long>(st.searches_succeeded),
                static_cast<unsigned long long>(st.edges_flipped));
    return 0;
}
