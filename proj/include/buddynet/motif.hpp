#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "buddynet/graph.hpp"

namespace buddynet {

// One co-backing triple (x, P_z, w): founder x and user w both backed P_z.
// satisfied marks w later backing one of x's own projects (the witness),
// strictly after both backings of P_z. Backing times are multi-edge
// collapsed: the earliest time per (user, project) pair.
struct BuddyCase {
    UserIdx founder_x;
    ProjectIdx shared_project;  // P_z
    UserIdx cobacker_w;
    Timestamp t_x;
    Timestamp t_w;
    bool satisfied;
    ProjectIdx witness_project;  // kInvalidIdx unless satisfied; earliest qualifying backing
    Timestamp t_back;            // meaningful only when satisfied
};

struct PairCount {
    UserIdx founder_x;
    ProjectIdx shared_project;
    std::uint32_t cobackers;
    std::uint32_t satisfied;
};

struct BuddyCensus {
    std::uint64_t denominator = 0;  // total co-backing cases
    std::uint64_t numerator = 0;    // cases with a qualifying witness backing
    std::vector<PairCount> per_pair;
    std::vector<BuddyCase> cases;   // populated only when collect_cases is set
};

struct CensusOptions {
    bool collect_cases = true;
    // Drop co-backers w who founded any project ("pure backers" variant,
    // for sensitivity analysis). Off by default: all w are counted.
    bool exclude_founder_w = false;
};

// Full census over all triples (x, P_z, w) with x a founder who backs,
// x != w, both backed P_z, and founder(P_z) != x. Deterministic iteration
// order: ascending x, then P_z, then w.
BuddyCensus enumerate_buddy_cases(const TemporalBipartiteGraph& graph,
                                  const CensusOptions& options = {});

enum class RatioMode { Pooled, PerPairMean };

const char* to_string(RatioMode mode);

// Pooled: numerator / denominator. PerPairMean: mean of per-pair ratios over
// pairs with at least one co-backer. Throws UndefinedRatioError when the
// respective denominator is empty.
double buddy_ratio(const BuddyCensus& census, RatioMode mode);

struct CobackerStats {
    double mean_cobackers;
    double mean_satisfied;
    std::size_t pairs;  // pairs with >= 1 co-backer
};

// Means over (x, P_z) pairs with at least one co-backer.
CobackerStats cobacker_stats(const BuddyCensus& census);

// The `buddy` report payload.
nlohmann::ordered_json buddy_report_json(const BuddyCensus& census);

// Per-case CSV dump (requires collect_cases).
void write_cases_csv(const TemporalBipartiteGraph& graph, const BuddyCensus& census,
                     std::ostream& out);

}  // namespace buddynet
