#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "buddynet/graph.hpp"

namespace buddynet {

enum class DegreeSide {
    ProjectIn,  // every project, including those with no backing
    BackerOut,  // only users with at least one backing edge
};

const char* to_string(DegreeSide side);

struct DegreeSummary {
    DegreeSide side;
    std::size_t count = 0;       // number of nodes summarized
    double mean = 0.0;
    double std_dev = 0.0;        // population standard deviation
    std::uint64_t min = 0;
    std::uint64_t q25 = 0;       // nearest-rank quartiles
    std::uint64_t median = 0;
    std::uint64_t q75 = 0;
    std::uint64_t max = 0;
    std::uint64_t mode = 0;      // ties broken toward the smallest degree
    std::size_t zero_count = 0;
};

// Throws EmptyInputError when the requested side has no nodes.
DegreeSummary degree_summary(const TemporalBipartiteGraph& graph, DegreeSide side);

// (degree, count) pairs sorted ascending by degree; counts sum to the
// side's node count.
std::vector<std::pair<std::uint64_t, std::uint64_t>> degree_histogram(
    const TemporalBipartiteGraph& graph, DegreeSide side);

nlohmann::ordered_json to_json(const DegreeSummary& summary);
std::string to_csv(const DegreeSummary& summary);
std::string histogram_csv(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& histogram);

}  // namespace buddynet
