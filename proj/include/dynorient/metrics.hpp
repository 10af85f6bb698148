#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Evaluation statistics: geometric mean and performance profiles.

namespace dynorient {

struct NonPositiveError : std::runtime_error {
    explicit NonPositiveError(const std::string& msg) : std::runtime_error(msg) {}
};
struct MissingCellError : std::runtime_error {
    explicit MissingCellError(const std::string& msg) : std::runtime_error(msg) {}
};

inline double geometric_mean(std::span<const double> values) {
    if (values.empty()) throw NonPositiveError("geometric mean of an empty set");
    double log_sum = 0.0;
    for (double v : values) {
        if (!(v > 0.0)) throw NonPositiveError("geometric mean requires positive values");
        log_sum += std::log(v);
    }
    return std::exp(log_sum / static_cast<double>(values.size()));
}

struct ProfilePoint {
    double tau;       // ratio to the per-instance best, >= 1
    double fraction;  // share of instances solved within that factor
};

// Performance profile over a full algorithm x instance matrix of positive
// metrics: for each algorithm, the step function tau -> fraction of instances
// whose metric is within factor tau of the per-instance best, evaluated at
// every realized ratio. Ratios equal to the evaluation point count as within
// (the comparison is exact: the grid points are the ratios themselves).
inline std::map<std::string, std::vector<ProfilePoint>> performance_profile(
    const std::map<std::string, std::map<std::string, double>>& metric) {
    if (metric.empty()) throw MissingCellError("no algorithms in profile input");

    // The instance set is the union; every algorithm must cover all of it.
    std::vector<std::string> instances;
    for (const auto& [alg, row] : metric)
        for (const auto& [inst, v] : row) {
            if (!(v > 0.0))
                throw NonPositiveError("metric for " + alg + " on " + inst +
                                       " is not positive");
            if (!std::binary_search(instances.begin(), instances.end(), inst)) {
                instances.insert(
                    std::lower_bound(instances.begin(), instances.end(), inst), inst);
            }
        }
    for (const auto& [alg, row] : metric)
        for (const std::string& inst : instances)
            if (!row.contains(inst))
                throw MissingCellError("algorithm " + alg + " has no metric for instance " +
                                       inst);

    std::map<std::string, double> best;
    for (const std::string& inst : instances) {
        double b = 0.0;
        bool first = true;
        for (const auto& [alg, row] : metric) {
            const double v = row.at(inst);
            if (first || v < b) b = v;
            first = false;
        }
        best[inst] = b;
    }

    std::map<std::string, std::vector<double>> ratios;  // per algorithm, per instance
    std::vector<double> grid;
    for (const auto& [alg, row] : metric) {
        auto& rs = ratios[alg];
        for (const std::string& inst : instances) {
            const double r = row.at(inst) / best[inst];
            rs.push_back(r);
            grid.push_back(r);
        }
        std::sort(rs.begin(), rs.end());
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::map<std::string, std::vector<ProfilePoint>> profile;
    for (const auto& [alg, rs] : ratios) {
        auto& points = profile[alg];
        for (double tau : grid) {
            const auto within =
                std::upper_bound(rs.begin(), rs.end(), tau) - rs.begin();
            points.push_back(
                {tau, static_cast<double>(within) / static_cast<double>(instances.size())});
        }
    }
    return profile;
}

}  // namespace dynorient
