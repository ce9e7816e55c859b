#pragma once

// Shared test utilities: independent brute-force oracles for the census and
// the degree statistics, random dataset generators, and a chi-square helper.
// The oracles recompute everything from the raw edge list on purpose; they
// must never share code with the implementation paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <vector>

#include "buddynet/graph.hpp"
#include "buddynet/motif.hpp"

namespace testsupport {

using buddynet::ProjectIdx;
using buddynet::RawBacking;
using buddynet::RawProject;
using buddynet::TemporalBipartiteGraph;
using buddynet::Timestamp;
using buddynet::UserIdx;

// ---------------------------------------------------------------------------
// Brute-force buddy census oracle
// ---------------------------------------------------------------------------

struct OracleCase {
    UserIdx x;
    ProjectIdx pz;
    UserIdx w;
    Timestamp t_x;
    Timestamp t_w;
    bool satisfied;

    auto key() const { return std::make_tuple(x, pz, w, t_x, t_w, satisfied); }
};

struct OracleCensus {
    std::uint64_t denominator = 0;
    std::uint64_t numerator = 0;
    std::vector<OracleCase> cases;
};

// Enumerates every (x, P_z, w) triple directly from the edge list.
inline OracleCensus oracle_census(const TemporalBipartiteGraph& g) {
    // Earliest backing time per (user, project).
    std::map<std::pair<UserIdx, ProjectIdx>, Timestamp> earliest;
    for (const auto& e : g.edges()) {
        auto key = std::make_pair(e.backer, e.project);
        auto it = earliest.find(key);
        if (it == earliest.end() || e.time < it->second) earliest[key] = e.time;
    }

    std::vector<std::vector<ProjectIdx>> founded(g.n_users());
    for (ProjectIdx p = 0; p < g.n_projects(); ++p) {
        founded[g.project(p).founder].push_back(p);
    }

    OracleCensus census;
    for (UserIdx x = 0; x < g.n_users(); ++x) {
        if (founded[x].empty()) continue;
        for (ProjectIdx pz = 0; pz < g.n_projects(); ++pz) {
            if (g.project(pz).founder == x) continue;
            auto ex = earliest.find({x, pz});
            if (ex == earliest.end()) continue;
            for (UserIdx w = 0; w < g.n_users(); ++w) {
                if (w == x) continue;
                auto ew = earliest.find({w, pz});
                if (ew == earliest.end()) continue;

                const Timestamp threshold = std::max(ex->second, ew->second);
                bool satisfied = false;
                for (ProjectIdx px : founded[x]) {
                    if (px == pz) continue;
                    auto eb = earliest.find({w, px});
                    if (eb != earliest.end() && eb->second > threshold) {
                        satisfied = true;
                        break;
                    }
                }
                census.cases.push_back({x, pz, w, ex->second, ew->second, satisfied});
                ++census.denominator;
                if (satisfied) ++census.numerator;
            }
        }
    }
    return census;
}

// Sorted comparable keys from either census representation.
inline std::vector<std::tuple<UserIdx, ProjectIdx, UserIdx, Timestamp, Timestamp, bool>>
oracle_case_keys(const OracleCensus& census) {
    std::vector<std::tuple<UserIdx, ProjectIdx, UserIdx, Timestamp, Timestamp, bool>> keys;
    keys.reserve(census.cases.size());
    for (const auto& c : census.cases) keys.push_back(c.key());
    std::sort(keys.begin(), keys.end());
    return keys;
}

inline std::vector<std::tuple<UserIdx, ProjectIdx, UserIdx, Timestamp, Timestamp, bool>>
census_case_keys(const buddynet::BuddyCensus& census) {
    std::vector<std::tuple<UserIdx, ProjectIdx, UserIdx, Timestamp, Timestamp, bool>> keys;
    keys.reserve(census.cases.size());
    for (const auto& c : census.cases) {
        keys.emplace_back(c.founder_x, c.shared_project, c.cobacker_w, c.t_x, c.t_w, c.satisfied);
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

// ---------------------------------------------------------------------------
// Naive degree statistics oracle
// ---------------------------------------------------------------------------

struct OracleDegreeSummary {
    std::size_t count = 0;
    double mean = 0.0;
    double std_dev = 0.0;
    std::uint64_t min = 0, q25 = 0, median = 0, q75 = 0, max = 0, mode = 0;
    std::size_t zero_count = 0;
};

inline OracleDegreeSummary oracle_degree_summary(std::vector<std::uint64_t> degrees) {
    OracleDegreeSummary s;
    s.count = degrees.size();
    std::sort(degrees.begin(), degrees.end());

    long double sum = 0.0L;
    for (auto d : degrees) sum += static_cast<long double>(d);
    const long double mean = sum / static_cast<long double>(degrees.size());
    long double sq = 0.0L;
    for (auto d : degrees) {
        const long double delta = static_cast<long double>(d) - mean;
        sq += delta * delta;
    }
    s.mean = static_cast<double>(mean);
    s.std_dev = static_cast<double>(std::sqrt(sq / static_cast<long double>(degrees.size())));

    auto quantile = [&](double q) {
        auto rank = static_cast<std::size_t>(
            std::ceil(q * static_cast<double>(degrees.size())));
        if (rank < 1) rank = 1;
        return degrees[rank - 1];
    };
    s.min = degrees.front();
    s.max = degrees.back();
    s.q25 = quantile(0.25);
    s.median = quantile(0.5);
    s.q75 = quantile(0.75);

    std::map<std::uint64_t, std::size_t> freq;
    for (auto d : degrees) ++freq[d];
    std::size_t best = 0;
    for (const auto& [degree, count] : freq) {
        if (count > best) {  // map iterates ascending: smallest degree wins ties
            best = count;
            s.mode = degree;
        }
    }
    for (auto d : degrees) {
        if (d == 0) ++s.zero_count;
    }
    return s;
}

// Degree multisets recounted straight from the edge list.
inline std::vector<std::uint64_t> oracle_project_in_degrees(const TemporalBipartiteGraph& g) {
    std::vector<std::uint64_t> deg(g.n_projects(), 0);
    for (const auto& e : g.edges()) ++deg[e.project];
    return deg;
}

inline std::vector<std::uint64_t> oracle_backer_out_degrees(const TemporalBipartiteGraph& g) {
    std::map<UserIdx, std::uint64_t> deg;
    for (const auto& e : g.edges()) ++deg[e.backer];
    std::vector<std::uint64_t> out;
    out.reserve(deg.size());
    for (const auto& [user, d] : deg) out.push_back(d);
    return out;
}

// ---------------------------------------------------------------------------
// Random dataset generators (std::mt19937_64: independent of the library rng)
// ---------------------------------------------------------------------------

struct RandomGraphParams {
    std::uint32_t max_users = 12;
    std::uint32_t max_projects = 6;
    std::uint32_t max_edges = 40;
    Timestamp max_time = 120;
};

inline TemporalBipartiteGraph random_graph(std::mt19937_64& rng, const RandomGraphParams& params) {
    std::uniform_int_distribution<std::uint32_t> users_dist(1, params.max_users);
    std::uniform_int_distribution<std::uint32_t> projects_dist(1, params.max_projects);
    std::uniform_int_distribution<std::uint32_t> edges_dist(0, params.max_edges);

    const std::uint32_t n_users = users_dist(rng);
    const std::uint32_t n_projects = projects_dist(rng);
    const std::uint32_t n_edges = edges_dist(rng);

    std::uniform_int_distribution<std::uint32_t> user_pick(0, n_users - 1);
    std::uniform_int_distribution<std::uint32_t> project_pick(0, n_projects - 1);
    std::uniform_int_distribution<Timestamp> time_pick(0, params.max_time);
    std::uniform_int_distribution<Timestamp> span_pick(0, params.max_time / 2);

    TemporalBipartiteGraph::Inputs inputs;
    for (std::uint32_t p = 0; p < n_projects; ++p) {
        const Timestamp start = time_pick(rng);
        const Timestamp deadline = start + span_pick(rng);
        inputs.projects.push_back(
            {"p" + std::to_string(p), "u" + std::to_string(user_pick(rng)), deadline, start});
    }
    for (std::uint32_t e = 0; e < n_edges; ++e) {
        inputs.backings.push_back({"u" + std::to_string(user_pick(rng)),
                                   "p" + std::to_string(project_pick(rng)), time_pick(rng)});
    }
    // Users referenced by nothing never materialize; that is fine for the
    // properties these graphs feed.
    return TemporalBipartiteGraph::build(std::move(inputs));
}

// ---------------------------------------------------------------------------
// Chi-square goodness of fit
// ---------------------------------------------------------------------------

inline double chi_square_stat(const std::vector<std::uint64_t>& observed,
                              const std::vector<double>& probabilities, std::uint64_t draws) {
    double stat = 0.0;
    for (std::size_t k = 0; k < observed.size(); ++k) {
        const double expected = probabilities[k] * static_cast<double>(draws);
        const double delta = static_cast<double>(observed[k]) - expected;
        stat += delta * delta / expected;
    }
    return stat;
}

// Upper 0.001 critical value of chi-square with 3 degrees of freedom.
inline constexpr double kChi2Df3P001 = 16.2662;

}  // namespace testsupport
