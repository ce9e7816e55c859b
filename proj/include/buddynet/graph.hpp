#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "buddynet/common.hpp"
#include "buddynet/csv.hpp"
#include "buddynet/interval_index.hpp"

namespace buddynet {

enum class StartSource : std::uint8_t {
    Explicit,         // given in projects.csv
    FirstBacking,     // derived from the earliest backing into the project
    ImputedDeadline,  // no backing and no explicit start; start := deadline
};

struct ProjectInfo {
    UserIdx founder;
    Timestamp start;
    Timestamp deadline;
    std::uint32_t popularity;  // in-degree in the observed graph (s_k)
    StartSource start_source;

    bool lifespan_contains(Timestamp t) const { return start <= t && t <= deadline; }
};

struct Backing {
    UserIdx backer;
    ProjectIdx project;
    Timestamp time;
    std::uint32_t input_order;  // original row rank; stable tie-break for equal times
};

// CSR adjacency; row(i) is a list of indexes into some target array.
struct CsrIndex {
    std::vector<std::uint32_t> offsets;
    std::vector<std::uint32_t> items;

    std::span<const std::uint32_t> row(std::uint32_t i) const {
        return {items.data() + offsets[i], offsets[i + 1] - offsets[i]};
    }
};

// Start derivation for a single project: explicit value wins, otherwise the
// first backing time, otherwise the deadline (zero-length lifespan).
struct SpanDerivation {
    Timestamp start;
    StartSource source;
};
SpanDerivation derive_project_span(std::optional<Timestamp> explicit_start,
                                   std::optional<Timestamp> first_backing_time,
                                   Timestamp deadline);

// Immutable timestamped backer->project network. Construction resolves
// string identifiers to dense indexes, sorts edges by (time, input order),
// derives missing project starts, computes popularity, and builds the
// per-backer, per-project, and lifespan indexes. After construction the
// graph never changes, so concurrent readers need no synchronization.
class TemporalBipartiteGraph {
public:
    struct Inputs {
        std::vector<RawProject> projects;
        std::vector<RawBacking> backings;
        std::string projects_name = "projects";
        std::string backings_name = "backings";
    };

    static TemporalBipartiteGraph build(Inputs inputs);
    static TemporalBipartiteGraph load(std::istream& backings, std::istream& projects,
                                       const std::string& backings_name = "backings",
                                       const std::string& projects_name = "projects");
    static TemporalBipartiteGraph load_files(const std::string& backings_path,
                                             const std::string& projects_path);

    // Same structure with every edge retargeted; new_targets is aligned with
    // edges(). Backers, times, project records (including popularity), and
    // the lifespan index are shared with *this.
    TemporalBipartiteGraph rewired_copy(const std::vector<ProjectIdx>& new_targets) const;

    std::size_t n_users() const { return user_names_->size(); }
    std::size_t n_projects() const { return project_names_->size(); }
    std::size_t n_edges() const { return edges_.size(); }
    std::size_t n_backers() const { return n_backers_; }

    std::string_view user_name(UserIdx u) const { return (*user_names_)[u]; }
    std::string_view project_name(ProjectIdx p) const { return (*project_names_)[p]; }
    std::optional<UserIdx> find_user(std::string_view name) const;
    std::optional<ProjectIdx> find_project(std::string_view name) const;

    const ProjectInfo& project(ProjectIdx p) const { return (*projects_)[p]; }
    std::span<const Backing> edges() const { return edges_; }
    const Backing& edge(EdgeIdx e) const { return edges_[e]; }

    std::span<const std::uint32_t> backer_edges(UserIdx u) const { return by_backer_->row(u); }
    std::span<const std::uint32_t> project_edges(ProjectIdx p) const { return by_project_.row(p); }
    std::size_t out_degree(UserIdx u) const { return backer_edges(u).size(); }
    std::size_t in_degree(ProjectIdx p) const { return project_edges(p).size(); }

    std::span<const std::uint32_t> founded_projects(UserIdx u) const {
        return by_founder_->row(u);
    }
    bool is_founder(UserIdx u) const { return !founded_projects(u).empty(); }
    bool is_backer(UserIdx u) const { return out_degree(u) > 0; }

    // All projects whose lifespan contains t, sorted by project index.
    std::vector<ProjectIdx> live_projects_at(Timestamp t) const { return lifespan_->stab(t); }
    const IntervalIndex& lifespan_index() const { return *lifespan_; }

    // Canonical CSV serialization; load() of the result reproduces the same
    // node sets, edge multiset, and lifespans.
    void save(std::ostream& backings, std::ostream& projects) const;
    void save_files(const std::string& backings_path, const std::string& projects_path) const;

private:
    TemporalBipartiteGraph() = default;

    using NameTable = std::vector<std::string>;
    using NameLookup = std::unordered_map<std::string, std::uint32_t>;

    std::shared_ptr<const NameTable> user_names_;
    std::shared_ptr<const NameLookup> user_lookup_;
    std::shared_ptr<const NameTable> project_names_;
    std::shared_ptr<const NameLookup> project_lookup_;
    std::shared_ptr<const std::vector<ProjectInfo>> projects_;
    std::shared_ptr<const CsrIndex> by_founder_;   // user -> founded projects
    std::shared_ptr<const CsrIndex> by_backer_;    // user -> edge ids (stable under rewiring)
    std::shared_ptr<const IntervalIndex> lifespan_;

    std::vector<Backing> edges_;  // sorted by (time, input_order)
    CsrIndex by_project_;         // project -> edge ids
    std::size_t n_backers_ = 0;
};

}  // namespace buddynet
