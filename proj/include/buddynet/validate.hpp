#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "buddynet/graph.hpp"

namespace buddynet {

struct Finding {
    std::string klass;
    std::uint64_t count = 0;
    std::vector<std::string> samples;  // up to max_samples illustrative items
};

struct ValidationReport {
    std::vector<Finding> findings;  // all classes present, count possibly 0
    bool ok = true;                 // no edge outside its target's lifespan
};

// Report-only consistency pass; never mutates the graph. Finding classes:
//   edge_outside_lifespan   backing time outside the target's [start, deadline]
//   zero_backing_project    projects with no backing at all
//   backer_is_founder       users appearing on both sides
//   start_after_deadline    projects whose (possibly derived) start exceeds the deadline
ValidationReport validate(const TemporalBipartiteGraph& graph, std::size_t max_samples = 10);

nlohmann::ordered_json to_json(const ValidationReport& report);

}  // namespace buddynet
