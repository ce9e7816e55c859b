#include "buddynet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "buddynet/fenwick.hpp"
#include "buddynet/rng.hpp"

namespace buddynet {

void SynthConfig::check() const {
    if (n_backers < 1 || n_projects < 1 || n_events < 1) {
        throw Error("synth config: n_backers, n_projects, n_events must be >= 1");
    }
    if (horizon < 1) throw Error("synth config: horizon must be >= 1");
    if (duration_min < 0 || duration_max < duration_min) {
        throw Error("synth config: need 0 <= duration_min <= duration_max");
    }
    if (founder_backer_fraction < 0.0 || founder_backer_fraction > 1.0) {
        throw Error("synth config: founder_backer_fraction must be in [0, 1]");
    }
    if (buddy_boost < 0.0 || buddy_boost > 1.0) {
        throw Error("synth config: buddy_boost must be in [0, 1]");
    }
    if (popularity_exponent <= 1.0) {
        throw Error("synth config: popularity_exponent must be > 1");
    }
    if (activity_exponent <= 1.0) {
        throw Error("synth config: activity_exponent must be > 1");
    }
}

SynthConfig synth_config_from_json(const nlohmann::json& j) {
    SynthConfig c;
    c.n_backers = j.value("n_backers", c.n_backers);
    c.n_projects = j.value("n_projects", c.n_projects);
    c.n_events = j.value("n_events", c.n_events);
    c.horizon = j.value("horizon", c.horizon);
    if (j.contains("project_duration")) {
        const auto& d = j.at("project_duration");
        if (d.is_array()) {
            if (d.size() != 2) throw Error("synth config: project_duration array needs 2 entries");
            c.duration_min = d[0].get<Timestamp>();
            c.duration_max = d[1].get<Timestamp>();
        } else {
            c.duration_min = c.duration_max = d.get<Timestamp>();
        }
    }
    c.founder_backer_fraction = j.value("founder_backer_fraction", c.founder_backer_fraction);
    c.popularity_exponent = j.value("popularity_exponent", c.popularity_exponent);
    c.activity_exponent = j.value("activity_exponent", c.activity_exponent);
    c.buddy_boost = j.value("buddy_boost", c.buddy_boost);
    c.seed = j.value("seed", c.seed);
    c.check();
    return c;
}

nlohmann::ordered_json to_json(const SynthConfig& c) {
    return {{"n_backers", c.n_backers},
            {"n_projects", c.n_projects},
            {"n_events", c.n_events},
            {"horizon", c.horizon},
            {"project_duration", {c.duration_min, c.duration_max}},
            {"founder_backer_fraction", c.founder_backer_fraction},
            {"popularity_exponent", c.popularity_exponent},
            {"activity_exponent", c.activity_exponent},
            {"buddy_boost", c.buddy_boost},
            {"seed", c.seed}};
}

namespace {

std::string user_name(std::uint32_t u) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "b%06u", u);
    return buf;
}

std::string project_name(std::uint32_t p) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "p%05u", p);
    return buf;
}

// Pareto(1, shape) sample scaled to an integer weight. Integer weights keep
// the event-time sampler on the exact cumulative-draw path.
std::int64_t pareto_weight(Xoshiro256pp& rng, double shape) {
    const double u = rng.uniform01();
    const double x = std::pow(1.0 - u, -1.0 / shape);
    const double scaled = std::min(x * 1000.0, 1e12);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(scaled)));
}

inline std::uint64_t edge_key(std::uint32_t user, std::uint32_t project) {
    return (static_cast<std::uint64_t>(user) << 32) | project;
}

}  // namespace

SynthResult generate(const SynthConfig& config) {
    config.check();
    Xoshiro256pp rng(config.seed);

    const std::uint32_t n_users = config.n_backers;
    const std::uint32_t n_projects = config.n_projects;

    // Projects: founder, lifespan, base attractiveness.
    std::vector<std::uint32_t> founder_of(n_projects);
    std::vector<Timestamp> start(n_projects), deadline(n_projects);
    std::vector<std::int64_t> attractiveness(n_projects);
    std::vector<std::vector<std::uint32_t>> founded(n_users);
    for (std::uint32_t p = 0; p < n_projects; ++p) {
        const auto f = static_cast<std::uint32_t>(rng.below(n_users));
        founder_of[p] = f;
        founded[f].push_back(p);
        const Timestamp duration =
            config.duration_min +
            (config.duration_max > config.duration_min
                 ? static_cast<Timestamp>(rng.below(
                       static_cast<std::uint64_t>(config.duration_max - config.duration_min + 1)))
                 : 0);
        const Timestamp latest_start = std::max<Timestamp>(1, config.horizon - duration);
        start[p] = static_cast<Timestamp>(rng.below(static_cast<std::uint64_t>(latest_start)));
        deadline[p] = start[p] + duration;
        attractiveness[p] = pareto_weight(rng, config.popularity_exponent);
    }

    // Backer activity: heavy-tailed weights; founders who do not back get
    // weight zero. The coin is per founder, drawn in project order.
    std::vector<std::int8_t> founder_backs(n_users, -1);
    for (std::uint32_t p = 0; p < n_projects; ++p) {
        const std::uint32_t f = founder_of[p];
        if (founder_backs[f] == -1) {
            founder_backs[f] = rng.uniform01() < config.founder_backer_fraction ? 1 : 0;
        }
    }
    std::vector<std::uint32_t> activity(n_users);
    std::uint64_t total_activity = 0;
    for (std::uint32_t u = 0; u < n_users; ++u) {
        if (founder_backs[u] == 0) {
            activity[u] = 0;
        } else {
            activity[u] = static_cast<std::uint32_t>(
                std::min<std::int64_t>(pareto_weight(rng, config.activity_exponent), 0x7fffffff));
        }
        total_activity += activity[u];
    }

    // Event times: strictly increasing so that every planted completion
    // happens strictly after the co-backings it depends on.
    std::vector<Timestamp> event_times(config.n_events);
    for (auto& t : event_times) {
        t = static_cast<Timestamp>(rng.below(static_cast<std::uint64_t>(config.horizon)));
    }
    std::sort(event_times.begin(), event_times.end());
    for (std::size_t i = 1; i < event_times.size(); ++i) {
        event_times[i] = std::max(event_times[i], event_times[i - 1] + 1);
    }

    // Live-project sweep over attractiveness, same machinery as rewiring.
    std::vector<ProjectIdx> by_start(n_projects), by_end(n_projects);
    for (std::uint32_t p = 0; p < n_projects; ++p) by_start[p] = by_end[p] = p;
    std::sort(by_start.begin(), by_start.end(),
              [&](ProjectIdx a, ProjectIdx b) { return start[a] < start[b]; });
    std::sort(by_end.begin(), by_end.end(),
              [&](ProjectIdx a, ProjectIdx b) { return deadline[a] < deadline[b]; });
    FenwickTree live_weights(n_projects);
    std::vector<std::uint8_t> live(n_projects, 0);
    std::size_t next_start = 0, next_end = 0;

    FenwickTree actor_weights(n_users);
    for (std::uint32_t u = 0; u < n_users; ++u) {
        if (activity[u] > 0) actor_weights.add(u, activity[u]);
    }

    // Incremental co-backing state for the planted branch.
    std::unordered_set<std::uint64_t> backed;  // (user, project) pairs seen
    std::vector<std::vector<std::uint32_t>> project_backers(n_projects);
    std::vector<std::vector<std::uint32_t>> project_founder_backers(n_projects);
    // Per user: founders x they co-backed with, plus the first shared project.
    std::vector<std::vector<std::pair<std::uint32_t, ProjectIdx>>> buddy_candidates(n_users);

    auto add_candidate = [&](std::uint32_t user, std::uint32_t founder, ProjectIdx shared) {
        auto& list = buddy_candidates[user];
        for (const auto& [f, p] : list) {
            if (f == founder) return;
        }
        list.emplace_back(founder, shared);
    };

    GroundTruthLog truth;
    std::vector<RawBacking> backings;
    backings.reserve(config.n_events);

    struct Eligible {
        std::uint32_t founder;
        ProjectIdx project;
        ProjectIdx witness;
    };
    std::vector<Eligible> eligible;

    for (const Timestamp t : event_times) {
        while (next_start < by_start.size() && start[by_start[next_start]] <= t) {
            const ProjectIdx p = by_start[next_start++];
            live_weights.add(p, attractiveness[p]);
            live[p] = 1;
        }
        while (next_end < by_end.size() && deadline[by_end[next_end]] < t) {
            const ProjectIdx p = by_end[next_end++];
            live_weights.add(p, -attractiveness[p]);
            live[p] = 0;
        }

        if (actor_weights.total() == 0) {
            ++truth.skipped_events;
            continue;
        }
        const auto actor = static_cast<std::uint32_t>(
            actor_weights.find(static_cast<std::int64_t>(rng.below(actor_weights.total()))));

        ProjectIdx target = kInvalidIdx;
        bool planted = false;
        if (config.buddy_boost > 0.0 && rng.uniform01() < config.buddy_boost) {
            eligible.clear();
            for (const auto& [founder, shared] : buddy_candidates[actor]) {
                for (const ProjectIdx p : founded[founder]) {
                    if (live[p] && !backed.count(edge_key(actor, p))) {
                        eligible.push_back({founder, p, shared});
                    }
                }
            }
            if (!eligible.empty()) {
                const Eligible& pick =
                    eligible[static_cast<std::size_t>(rng.below(eligible.size()))];
                target = pick.project;
                planted = true;
                truth.planted.push_back({t, actor, pick.founder, pick.project, pick.witness});
            }
        }
        if (!planted) {
            // Popularity draw over live projects, own projects masked out.
            for (const ProjectIdx p : founded[actor]) {
                if (live[p]) live_weights.add(p, -attractiveness[p]);
            }
            const std::int64_t available = live_weights.total();
            if (available > 0) {
                target = static_cast<ProjectIdx>(
                    live_weights.find(static_cast<std::int64_t>(rng.below(available))));
            }
            for (const ProjectIdx p : founded[actor]) {
                if (live[p]) live_weights.add(p, attractiveness[p]);
            }
            if (target == kInvalidIdx) {
                ++truth.skipped_events;
                continue;
            }
        }

        backings.push_back({user_name(actor), project_name(target), t});

        if (backed.insert(edge_key(actor, target)).second) {
            // First backing of target by actor: update co-backing state.
            // Direction 1: actor gains every earlier founder-backer of target.
            for (const std::uint32_t x : project_founder_backers[target]) {
                if (founder_of[target] != x) add_candidate(actor, x, target);
            }
            // Direction 2: if actor founded something, earlier backers gain actor.
            if (!founded[actor].empty() && founder_of[target] != actor) {
                for (const std::uint32_t w : project_backers[target]) {
                    add_candidate(w, actor, target);
                }
            }
            project_backers[target].push_back(actor);
            if (!founded[actor].empty()) project_founder_backers[target].push_back(actor);
        }
    }

    TemporalBipartiteGraph::Inputs inputs;
    inputs.backings = std::move(backings);
    inputs.projects.reserve(n_projects);
    for (std::uint32_t p = 0; p < n_projects; ++p) {
        inputs.projects.push_back({project_name(p), user_name(founder_of[p]), deadline[p], start[p]});
    }
    inputs.projects_name = "synth.projects";
    inputs.backings_name = "synth.backings";
    TemporalBipartiteGraph graph = TemporalBipartiteGraph::build(std::move(inputs));

    // The builder interns identifiers in encounter order, so its indexes
    // differ from the generator's; remap the log into graph index space.
    for (PlantedCompletion& c : truth.planted) {
        c.actor = graph.find_user(user_name(c.actor)).value();
        c.founder = graph.find_user(user_name(c.founder)).value();
        c.project = graph.find_project(project_name(c.project)).value();
        c.witness_project = graph.find_project(project_name(c.witness_project)).value();
    }
    return SynthResult{std::move(graph), std::move(truth)};
}

nlohmann::ordered_json truth_to_json(const SynthConfig& config, const SynthResult& result) {
    const TemporalBipartiteGraph& g = result.graph;
    nlohmann::ordered_json planted = nlohmann::ordered_json::array();
    for (const PlantedCompletion& c : result.truth.planted) {
        planted.push_back({{"time", c.time},
                           {"actor", g.user_name(c.actor)},
                           {"founder", g.user_name(c.founder)},
                           {"project", g.project_name(c.project)},
                           {"witness_project", g.project_name(c.witness_project)}});
    }
    return {{"config", to_json(config)},
            {"counts",
             {{"backers", result.graph.n_backers()},
              {"projects", result.graph.n_projects()},
              {"edges", result.graph.n_edges()}}},
            {"skipped_events", result.truth.skipped_events},
            {"planted_count", result.truth.planted.size()},
            {"planted", std::move(planted)}};
}

}  // namespace buddynet
