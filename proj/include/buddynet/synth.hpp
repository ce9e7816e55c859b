#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "buddynet/graph.hpp"

namespace buddynet {

// Synthetic dataset parameters. Base project attractiveness is drawn once
// per project from a Pareto law with shape popularity_exponent, matching the
// null model's notion of fixed popularity; buddy_boost is the probability
// that an event becomes a planted buddy completion instead of a popularity
// draw.
struct SynthConfig {
    std::uint32_t n_backers = 2000;
    std::uint32_t n_projects = 100;
    std::uint64_t n_events = 10000;
    Timestamp horizon = 15552000;            // 180 days
    Timestamp duration_min = 2592000;        // 30 days
    Timestamp duration_max = 5184000;        // 60 days
    double founder_backer_fraction = 1.0;    // fraction of founders who also back
    double popularity_exponent = 1.5;        // Pareto shape of base attractiveness
    double activity_exponent = 1.2;          // Pareto shape of backer activity
    double buddy_boost = 0.0;                // beta, planted-completion probability
    std::uint64_t seed = 0;

    void check() const;  // throws Error on out-of-range values
};

SynthConfig synth_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const SynthConfig& config);

// One planted completion: actor backed founder's project after co-backing
// witness_project with that founder.
struct PlantedCompletion {
    Timestamp time;
    UserIdx actor;
    UserIdx founder;
    ProjectIdx project;          // the founder's project the actor backed
    ProjectIdx witness_project;  // the project both had backed before
};

struct GroundTruthLog {
    std::vector<PlantedCompletion> planted;
    std::uint64_t skipped_events = 0;  // event times with no legal target
};

struct SynthResult {
    TemporalBipartiteGraph graph;
    GroundTruthLog truth;
};

// Deterministic for a fixed config (including seed). Every planted
// completion corresponds to a satisfied buddy case in the generated graph.
SynthResult generate(const SynthConfig& config);

nlohmann::ordered_json truth_to_json(const SynthConfig& config, const SynthResult& result);

}  // namespace buddynet
