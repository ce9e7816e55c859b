#include "buddynet/motif.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>

namespace buddynet {

namespace {

struct TimedUser {
    UserIdx user;
    Timestamp time;
};

struct TimedProject {
    ProjectIdx project;
    Timestamp time;
};

inline std::uint64_t pair_key(UserIdx w, UserIdx x) {
    return (static_cast<std::uint64_t>(w) << 32) | x;
}

// Collapsed backer lists per project: earliest backing time per (user,
// project) pair, sorted by user. in_lists is a CSR over projects.
struct CollapsedInLists {
    std::vector<std::uint32_t> offsets;
    std::vector<TimedUser> entries;

    std::span<const TimedUser> row(ProjectIdx p) const {
        return {entries.data() + offsets[p], offsets[p + 1] - offsets[p]};
    }
};

CollapsedInLists collapse_in_lists(const TemporalBipartiteGraph& graph) {
    CollapsedInLists lists;
    lists.offsets.assign(graph.n_projects() + 1, 0);
    lists.entries.reserve(graph.n_edges());
    std::vector<TimedUser> scratch;
    for (ProjectIdx p = 0; p < graph.n_projects(); ++p) {
        scratch.clear();
        for (std::uint32_t e : graph.project_edges(p)) {
            scratch.push_back({graph.edge(e).backer, graph.edge(e).time});
        }
        std::sort(scratch.begin(), scratch.end(), [](const TimedUser& a, const TimedUser& b) {
            return a.user < b.user || (a.user == b.user && a.time < b.time);
        });
        for (std::size_t i = 0; i < scratch.size(); ++i) {
            if (i == 0 || scratch[i].user != scratch[i - 1].user) {
                lists.entries.push_back(scratch[i]);
            }
        }
        lists.offsets[p + 1] = static_cast<std::uint32_t>(lists.entries.size());
    }
    return lists;
}

// Earliest backing per (user, project) for one user, sorted by project.
std::vector<TimedProject> collapse_out_list(const TemporalBipartiteGraph& graph, UserIdx u) {
    std::vector<TimedProject> out;
    out.reserve(graph.out_degree(u));
    for (std::uint32_t e : graph.backer_edges(u)) {
        out.push_back({graph.edge(e).project, graph.edge(e).time});
    }
    std::sort(out.begin(), out.end(), [](const TimedProject& a, const TimedProject& b) {
        return a.project < b.project || (a.project == b.project && a.time < b.time);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const TimedProject& a, const TimedProject& b) {
                              return a.project == b.project;
                          }),
              out.end());
    return out;
}

}  // namespace

BuddyCensus enumerate_buddy_cases(const TemporalBipartiteGraph& graph,
                                  const CensusOptions& options) {
    BuddyCensus census;
    const CollapsedInLists in_lists = collapse_in_lists(graph);

    std::vector<UserIdx> founder_backers;
    for (UserIdx u = 0; u < graph.n_users(); ++u) {
        if (graph.is_founder(u) && graph.is_backer(u)) founder_backers.push_back(u);
    }
    if (founder_backers.empty()) return census;

    // Witness lookup: for (w, x), the latest collapsed time at which w backed
    // any project founded by x — enough to decide satisfaction. The per-pair
    // detail lists are only materialized when cases are collected.
    std::unordered_map<std::uint64_t, Timestamp> latest_backing_of_founder;
    std::unordered_map<std::uint64_t, std::vector<std::pair<Timestamp, ProjectIdx>>> witness_detail;
    latest_backing_of_founder.reserve(graph.n_edges());
    for (UserIdx x : founder_backers) {
        for (ProjectIdx p : graph.founded_projects(x)) {
            for (const TimedUser& b : in_lists.row(p)) {
                const std::uint64_t key = pair_key(b.user, x);
                auto [it, inserted] = latest_backing_of_founder.emplace(key, b.time);
                if (!inserted && b.time > it->second) it->second = b.time;
                if (options.collect_cases) witness_detail[key].emplace_back(b.time, p);
            }
        }
    }
    if (options.collect_cases) {
        for (auto& [key, detail] : witness_detail) std::sort(detail.begin(), detail.end());
    }

    for (UserIdx x : founder_backers) {
        for (const TimedProject& backed : collapse_out_list(graph, x)) {
            const ProjectIdx pz = backed.project;
            if (graph.project(pz).founder == x) continue;
            const Timestamp t_x = backed.time;

            PairCount pair{x, pz, 0, 0};
            for (const TimedUser& co : in_lists.row(pz)) {
                const UserIdx w = co.user;
                if (w == x) continue;
                if (options.exclude_founder_w && graph.is_founder(w)) continue;
                ++pair.cobackers;

                const Timestamp threshold = std::max(t_x, co.time);
                auto it = latest_backing_of_founder.find(pair_key(w, x));
                const bool satisfied = it != latest_backing_of_founder.end() &&
                                       it->second > threshold;
                if (satisfied) ++pair.satisfied;

                if (options.collect_cases) {
                    BuddyCase c{x, pz, w, t_x, co.time, satisfied, kInvalidIdx, 0};
                    if (satisfied) {
                        const auto& detail = witness_detail.at(pair_key(w, x));
                        auto wit = std::upper_bound(
                            detail.begin(), detail.end(),
                            std::make_pair(threshold, ProjectIdx{kInvalidIdx}));
                        c.witness_project = wit->second;
                        c.t_back = wit->first;
                    }
                    census.cases.push_back(c);
                }
            }
            census.denominator += pair.cobackers;
            census.numerator += pair.satisfied;
            census.per_pair.push_back(pair);
        }
    }
    return census;
}

const char* to_string(RatioMode mode) {
    return mode == RatioMode::Pooled ? "pooled" : "mean";
}

double buddy_ratio(const BuddyCensus& census, RatioMode mode) {
    if (mode == RatioMode::Pooled) {
        if (census.denominator == 0) {
            throw UndefinedRatioError("buddy_ratio: no co-backing cases (denominator is 0)");
        }
        return static_cast<double>(census.numerator) / static_cast<double>(census.denominator);
    }
    double sum = 0.0;
    std::size_t pairs = 0;
    for (const PairCount& p : census.per_pair) {
        if (p.cobackers == 0) continue;
        sum += static_cast<double>(p.satisfied) / static_cast<double>(p.cobackers);
        ++pairs;
    }
    if (pairs == 0) {
        throw UndefinedRatioError("buddy_ratio: no (founder, project) pair with co-backers");
    }
    return sum / static_cast<double>(pairs);
}

CobackerStats cobacker_stats(const BuddyCensus& census) {
    double cobackers = 0.0, satisfied = 0.0;
    std::size_t pairs = 0;
    for (const PairCount& p : census.per_pair) {
        if (p.cobackers == 0) continue;
        cobackers += p.cobackers;
        satisfied += p.satisfied;
        ++pairs;
    }
    if (pairs == 0) {
        throw EmptyInputError("cobacker_stats: no (founder, project) pair with co-backers");
    }
    return {cobackers / static_cast<double>(pairs), satisfied / static_cast<double>(pairs), pairs};
}

nlohmann::ordered_json buddy_report_json(const BuddyCensus& census) {
    const double pooled = buddy_ratio(census, RatioMode::Pooled);
    const double per_pair_mean = buddy_ratio(census, RatioMode::PerPairMean);
    const CobackerStats stats = cobacker_stats(census);
    return {{"denominator", census.denominator},
            {"numerator", census.numerator},
            {"pooled_ratio", pooled},
            {"per_pair_mean", per_pair_mean},
            {"mean_cobackers", stats.mean_cobackers},
            {"mean_satisfied", stats.mean_satisfied}};
}

void write_cases_csv(const TemporalBipartiteGraph& graph, const BuddyCensus& census,
                     std::ostream& out) {
    out << "founder_x,shared_project,cobacker_w,t_x,t_w,satisfied,witness_project,t_back\n";
    for (const BuddyCase& c : census.cases) {
        out << graph.user_name(c.founder_x) << ',' << graph.project_name(c.shared_project) << ','
            << graph.user_name(c.cobacker_w) << ',' << c.t_x << ',' << c.t_w << ','
            << (c.satisfied ? 1 : 0) << ',';
        if (c.satisfied) {
            out << graph.project_name(c.witness_project) << ',' << c.t_back;
        } else {
            out << ',';
        }
        out << '\n';
    }
}

}  // namespace buddynet
