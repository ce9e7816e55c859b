#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

#include "buddynet/graph.hpp"
#include "buddynet/motif.hpp"
#include "buddynet/rng.hpp"

namespace buddynet {

// Legal rewiring targets for one edge: every project whose lifespan contains
// the edge time, weighted by observed popularity. The edge's original target
// is force-included when its own lifespan does not contain the edge time, so
// the set is never empty and total_weight >= 1.
struct CandidateSet {
    Timestamp edge_time;
    ProjectIdx original_target;
    bool force_included;                  // original target not live at edge_time
    std::vector<ProjectIdx> members;      // sorted ascending by project index
    std::vector<std::uint32_t> weights;   // observed popularity per member
    std::uint64_t total_weight = 0;
};

CandidateSet candidate_set(const TemporalBipartiteGraph& graph, EdgeIdx edge);

struct ChoiceDistribution {
    std::vector<double> probabilities;  // weights[k] / total_weight, aligned with members
};

// Throws std::logic_error on a zero-total candidate set; that state is an
// internal invariant violation, not a recoverable input error.
ChoiceDistribution choice_distribution(const CandidateSet& cs);

// Exact integer cumulative-weight sampler: a uniform draw over
// [0, total_weight) inverted against the running sums, so member k is hit
// with probability weights[k] / total_weight exactly. Zero-weight members
// are never drawn.
class CumulativeSampler {
public:
    explicit CumulativeSampler(std::span<const std::uint32_t> weights);

    std::size_t draw(Xoshiro256pp& rng) const;
    std::uint64_t total_weight() const { return cumulative_.empty() ? 0 : cumulative_.back(); }

private:
    std::vector<std::uint64_t> cumulative_;
};

// One degree-preserving randomization pass: every edge keeps its backer and
// timestamp and is independently redirected to a draw from its candidate
// set. Weights always come from the observed graph.
TemporalBipartiteGraph rewire_graph(const TemporalBipartiteGraph& graph, Xoshiro256pp& rng);

struct CugOptions {
    int trials = 100;
    std::uint64_t master_seed = 0;
    RatioMode ratio_mode = RatioMode::Pooled;
    int parallel = 1;
    bool exclude_founder_w = false;
};

struct CugResult {
    double observed_ratio = 0.0;
    RatioMode ratio_mode = RatioMode::Pooled;
    int trials = 0;
    std::uint64_t master_seed = 0;
    std::vector<double> simulated_ratios;   // by trial index
    double mean_simulated = 0.0;
    double p_value = 1.0;                   // add-one estimator, never exactly 0
    std::vector<int> degenerate_trials;     // trials whose census had no cases
};

// Add-one Monte Carlo estimator: (1 + #{sim >= observed}) / (1 + n).
double add_one_p_value(std::span<const double> simulated, double observed);

// Monte Carlo conditional-uniform-graph test of the observed buddy ratio.
// Trial i runs on its own stream seeded from (master_seed, i), so results
// are bit-identical at any worker count. Throws UndefinedRatioError before
// any trial runs if the observed ratio is undefined.
CugResult cug_test(const TemporalBipartiteGraph& graph, const CugOptions& options);

nlohmann::ordered_json to_json(const CugResult& result);

// Fixed-width histogram of the simulated ratios (bin_lo,bin_hi,count CSV).
std::string simulated_ratio_histogram_csv(const CugResult& result, std::size_t bins = 20);

}  // namespace buddynet
