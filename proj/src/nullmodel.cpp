#include "buddynet/nullmodel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "buddynet/fenwick.hpp"

namespace buddynet {

CandidateSet candidate_set(const TemporalBipartiteGraph& graph, EdgeIdx edge) {
    const Backing& e = graph.edge(edge);
    CandidateSet cs;
    cs.edge_time = e.time;
    cs.original_target = e.project;
    cs.members = graph.live_projects_at(e.time);
    const auto at = std::lower_bound(cs.members.begin(), cs.members.end(), e.project);
    cs.force_included = at == cs.members.end() || *at != e.project;
    if (cs.force_included) cs.members.insert(at, e.project);
    cs.weights.reserve(cs.members.size());
    for (ProjectIdx p : cs.members) {
        const std::uint32_t w = graph.project(p).popularity;
        cs.weights.push_back(w);
        cs.total_weight += w;
    }
    return cs;
}

ChoiceDistribution choice_distribution(const CandidateSet& cs) {
    if (cs.total_weight == 0) {
        throw std::logic_error("choice_distribution: candidate set has zero total weight");
    }
    ChoiceDistribution dist;
    dist.probabilities.reserve(cs.weights.size());
    for (std::uint32_t w : cs.weights) {
        dist.probabilities.push_back(static_cast<double>(w) /
                                     static_cast<double>(cs.total_weight));
    }
    return dist;
}

CumulativeSampler::CumulativeSampler(std::span<const std::uint32_t> weights) {
    cumulative_.reserve(weights.size());
    std::uint64_t running = 0;
    for (std::uint32_t w : weights) {
        running += w;
        cumulative_.push_back(running);
    }
    if (running == 0) {
        throw std::logic_error("CumulativeSampler: all weights are zero");
    }
}

std::size_t CumulativeSampler::draw(Xoshiro256pp& rng) const {
    const std::uint64_t u = rng.below(cumulative_.back());
    return static_cast<std::size_t>(
        std::upper_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin());
}

TemporalBipartiteGraph rewire_graph(const TemporalBipartiteGraph& graph, Xoshiro256pp& rng) {
    const std::size_t n_projects = graph.n_projects();

    // Time sweep over the live set: projects enter at start and leave after
    // deadline; a Fenwick tree over popularity makes each draw an O(log P)
    // inversion of the cumulative weights. Projects with start > deadline are
    // never live and stay out of the sweep.
    std::vector<ProjectIdx> by_start, by_end;
    by_start.reserve(n_projects);
    for (ProjectIdx p = 0; p < n_projects; ++p) {
        if (graph.project(p).start <= graph.project(p).deadline) by_start.push_back(p);
    }
    by_end = by_start;
    std::sort(by_start.begin(), by_start.end(), [&](ProjectIdx a, ProjectIdx b) {
        return graph.project(a).start < graph.project(b).start;
    });
    std::sort(by_end.begin(), by_end.end(), [&](ProjectIdx a, ProjectIdx b) {
        return graph.project(a).deadline < graph.project(b).deadline;
    });

    FenwickTree live_weights(n_projects);
    std::vector<std::uint8_t> live(n_projects, 0);
    std::size_t next_start = 0, next_end = 0;

    std::vector<ProjectIdx> targets(graph.n_edges());
    const auto edges = graph.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Backing& e = edges[i];
        while (next_start < by_start.size() &&
               graph.project(by_start[next_start]).start <= e.time) {
            const ProjectIdx p = by_start[next_start++];
            live_weights.add(p, graph.project(p).popularity);
            live[p] = 1;
        }
        while (next_end < by_end.size() && graph.project(by_end[next_end]).deadline < e.time) {
            const ProjectIdx p = by_end[next_end++];
            live_weights.add(p, -static_cast<std::int64_t>(graph.project(p).popularity));
            live[p] = 0;
        }

        const std::int64_t live_total = live_weights.total();
        if (live[e.project]) {
            targets[i] = static_cast<ProjectIdx>(
                live_weights.find(static_cast<std::int64_t>(rng.below(live_total))));
        } else {
            // Original target force-included alongside the live set.
            const std::uint64_t own = graph.project(e.project).popularity;
            const std::uint64_t u = rng.below(static_cast<std::uint64_t>(live_total) + own);
            targets[i] = u >= static_cast<std::uint64_t>(live_total)
                             ? e.project
                             : static_cast<ProjectIdx>(
                                   live_weights.find(static_cast<std::int64_t>(u)));
        }
    }
    return graph.rewired_copy(targets);
}

namespace {

// Per-trial invariant checks: backers and out-degrees untouched, every
// rewired target live at the edge time unless the observed edge already sat
// outside its own target's lifespan.
void check_trial_invariants(const TemporalBipartiteGraph& observed,
                            const TemporalBipartiteGraph& simulated) {
    const auto obs = observed.edges();
    const auto sim = simulated.edges();
    if (obs.size() != sim.size()) throw std::logic_error("rewire changed the edge count");
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (sim[i].backer != obs[i].backer || sim[i].time != obs[i].time) {
            throw std::logic_error("rewire changed a backer or timestamp");
        }
        if (!simulated.project(sim[i].project).lifespan_contains(sim[i].time) &&
            !(sim[i].project == obs[i].project &&
              !observed.project(obs[i].project).lifespan_contains(obs[i].time))) {
            throw std::logic_error("rewired edge target not live at edge time");
        }
    }
}

double trial_ratio(const TemporalBipartiteGraph& simulated, RatioMode mode,
                   const CensusOptions& census_options, bool& degenerate) {
    const BuddyCensus census = enumerate_buddy_cases(simulated, census_options);
    try {
        degenerate = false;
        return buddy_ratio(census, mode);
    } catch (const UndefinedRatioError&) {
        degenerate = true;
        return 0.0;
    }
}

}  // namespace

CugResult cug_test(const TemporalBipartiteGraph& graph, const CugOptions& options) {
    if (options.trials < 1) throw Error("cug_test: trials must be >= 1");

    CensusOptions census_options;
    census_options.collect_cases = false;
    census_options.exclude_founder_w = options.exclude_founder_w;

    CugResult result;
    result.ratio_mode = options.ratio_mode;
    result.trials = options.trials;
    result.master_seed = options.master_seed;
    // Throws UndefinedRatioError before any trial runs.
    result.observed_ratio =
        buddy_ratio(enumerate_buddy_cases(graph, census_options), options.ratio_mode);

    const auto n_trials = static_cast<std::size_t>(options.trials);
    result.simulated_ratios.assign(n_trials, 0.0);
    std::vector<std::uint8_t> degenerate(n_trials, 0);

    auto run_trial = [&](std::size_t i) {
        Xoshiro256pp rng(trial_seed(options.master_seed, i));
        const TemporalBipartiteGraph simulated = rewire_graph(graph, rng);
        check_trial_invariants(graph, simulated);
        bool is_degenerate = false;
        result.simulated_ratios[i] =
            trial_ratio(simulated, options.ratio_mode, census_options, is_degenerate);
        degenerate[i] = is_degenerate ? 1 : 0;
    };

    const int workers = std::max(1, options.parallel);
    if (workers == 1 || n_trials == 1) {
        for (std::size_t i = 0; i < n_trials; ++i) run_trial(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const int n_workers = static_cast<int>(std::min<std::size_t>(workers, n_trials));
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= n_trials) return;
                    run_trial(i);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    double sum = 0.0;
    for (std::size_t i = 0; i < n_trials; ++i) {
        sum += result.simulated_ratios[i];
        if (degenerate[i]) result.degenerate_trials.push_back(static_cast<int>(i));
    }
    result.mean_simulated = sum / static_cast<double>(n_trials);
    result.p_value = add_one_p_value(result.simulated_ratios, result.observed_ratio);
    return result;
}

double add_one_p_value(std::span<const double> simulated, double observed) {
    std::size_t at_least_observed = 0;
    for (double r : simulated) {
        if (r >= observed) ++at_least_observed;
    }
    return static_cast<double>(1 + at_least_observed) /
           static_cast<double>(1 + simulated.size());
}

nlohmann::ordered_json to_json(const CugResult& r) {
    return {{"observed_ratio", r.observed_ratio},
            {"ratio_mode", to_string(r.ratio_mode)},
            {"trials", r.trials},
            {"master_seed", r.master_seed},
            {"simulated_ratios", r.simulated_ratios},
            {"mean_simulated", r.mean_simulated},
            {"p_value", r.p_value},
            {"degenerate_trials", r.degenerate_trials.size()}};
}

std::string simulated_ratio_histogram_csv(const CugResult& result, std::size_t bins) {
    if (bins == 0) bins = 1;
    const auto [lo_it, hi_it] =
        std::minmax_element(result.simulated_ratios.begin(), result.simulated_ratios.end());
    const double lo = *lo_it;
    const double width = std::max((*hi_it - lo) / static_cast<double>(bins), 1e-12);

    std::vector<std::uint64_t> counts(bins, 0);
    for (double r : result.simulated_ratios) {
        auto b = static_cast<std::size_t>((r - lo) / width);
        if (b >= bins) b = bins - 1;
        ++counts[b];
    }
    std::ostringstream out;
    out << "bin_lo,bin_hi,count\n";
    for (std::size_t b = 0; b < bins; ++b) {
        out << (lo + width * static_cast<double>(b)) << ','
            << (lo + width * static_cast<double>(b + 1)) << ',' << counts[b] << '\n';
    }
    return out.str();
}

}  // namespace buddynet
