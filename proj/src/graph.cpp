#include "buddynet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

namespace buddynet {

SpanDerivation derive_project_span(std::optional<Timestamp> explicit_start,
                                   std::optional<Timestamp> first_backing_time,
                                   Timestamp deadline) {
    if (explicit_start) return {*explicit_start, StartSource::Explicit};
    if (first_backing_time) return {*first_backing_time, StartSource::FirstBacking};
    return {deadline, StartSource::ImputedDeadline};
}

namespace {

CsrIndex build_csr(std::uint32_t n_rows, std::uint32_t n_items,
                   const std::vector<std::uint32_t>& row_of_item) {
    CsrIndex csr;
    csr.offsets.assign(n_rows + 1, 0);
    for (std::uint32_t i = 0; i < n_items; ++i) {
        ++csr.offsets[row_of_item[i] + 1];
    }
    for (std::uint32_t r = 0; r < n_rows; ++r) {
        csr.offsets[r + 1] += csr.offsets[r];
    }
    csr.items.resize(n_items);
    std::vector<std::uint32_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
    for (std::uint32_t i = 0; i < n_items; ++i) {
        csr.items[cursor[row_of_item[i]]++] = i;
    }
    return csr;
}

}  // namespace

TemporalBipartiteGraph TemporalBipartiteGraph::build(Inputs inputs) {
    TemporalBipartiteGraph g;

    auto user_names = std::make_shared<NameTable>();
    auto user_lookup = std::make_shared<NameLookup>();
    auto intern_user = [&](const std::string& name) -> UserIdx {
        auto [it, inserted] = user_lookup->emplace(name, static_cast<std::uint32_t>(user_names->size()));
        if (inserted) user_names->push_back(name);
        return it->second;
    };

    auto project_names = std::make_shared<NameTable>();
    auto project_lookup = std::make_shared<NameLookup>();
    auto projects = std::make_shared<std::vector<ProjectInfo>>();
    projects->reserve(inputs.projects.size());

    std::vector<std::optional<Timestamp>> explicit_starts;
    explicit_starts.reserve(inputs.projects.size());
    for (std::size_t i = 0; i < inputs.projects.size(); ++i) {
        const RawProject& raw = inputs.projects[i];
        auto [it, inserted] =
            project_lookup->emplace(raw.id, static_cast<std::uint32_t>(project_names->size()));
        if (!inserted) {
            throw ParseError(inputs.projects_name, raw.line ? raw.line : i + 2,
                             "duplicate project_id '" + raw.id + "'");
        }
        project_names->push_back(raw.id);
        ProjectInfo info{};
        info.founder = intern_user(raw.founder);
        info.deadline = raw.deadline;
        info.popularity = 0;
        projects->push_back(info);
        explicit_starts.push_back(raw.start);
    }

    g.edges_.reserve(inputs.backings.size());
    for (std::size_t i = 0; i < inputs.backings.size(); ++i) {
        const RawBacking& raw = inputs.backings[i];
        auto it = project_lookup->find(raw.project);
        if (it == project_lookup->end()) {
            throw ParseError(inputs.backings_name, raw.line ? raw.line : i + 2,
                             "backing references unknown project_id '" + raw.project + "'");
        }
        Backing e{};
        e.backer = intern_user(raw.backer);
        e.project = it->second;
        e.time = raw.time;
        e.input_order = static_cast<std::uint32_t>(i);
        g.edges_.push_back(e);
    }

    std::sort(g.edges_.begin(), g.edges_.end(), [](const Backing& a, const Backing& b) {
        return a.time < b.time || (a.time == b.time && a.input_order < b.input_order);
    });

    // Popularity and first backing time per project (edges are time-sorted).
    const auto n_projects = static_cast<std::uint32_t>(projects->size());
    std::vector<std::optional<Timestamp>> first_backing(n_projects);
    for (const Backing& e : g.edges_) {
        auto& info = (*projects)[e.project];
        ++info.popularity;
        if (!first_backing[e.project]) first_backing[e.project] = e.time;
    }
    for (std::uint32_t p = 0; p < n_projects; ++p) {
        auto& info = (*projects)[p];
        const SpanDerivation d =
            derive_project_span(explicit_starts[p], first_backing[p], info.deadline);
        info.start = d.start;
        info.start_source = d.source;
    }

    const auto n_users = static_cast<std::uint32_t>(user_names->size());
    const auto n_edges = static_cast<std::uint32_t>(g.edges_.size());
    std::vector<std::uint32_t> edge_backer(n_edges);
    std::vector<std::uint32_t> edge_project(n_edges);
    for (std::uint32_t i = 0; i < n_edges; ++i) {
        edge_backer[i] = g.edges_[i].backer;
        edge_project[i] = g.edges_[i].project;
    }
    auto by_backer = std::make_shared<CsrIndex>(build_csr(n_users, n_edges, edge_backer));
    g.by_project_ = build_csr(n_projects, n_edges, edge_project);

    std::vector<std::uint32_t> founder_of(n_projects);
    for (std::uint32_t p = 0; p < n_projects; ++p) founder_of[p] = (*projects)[p].founder;
    auto by_founder = std::make_shared<CsrIndex>(build_csr(n_users, n_projects, founder_of));

    std::vector<IntervalIndex::Interval> spans;
    spans.reserve(n_projects);
    for (std::uint32_t p = 0; p < n_projects; ++p) {
        spans.push_back({(*projects)[p].start, (*projects)[p].deadline, p});
    }

    g.user_names_ = std::move(user_names);
    g.user_lookup_ = std::move(user_lookup);
    g.project_names_ = std::move(project_names);
    g.project_lookup_ = std::move(project_lookup);
    g.projects_ = std::move(projects);
    g.by_backer_ = std::move(by_backer);
    g.by_founder_ = std::move(by_founder);
    g.lifespan_ = std::make_shared<IntervalIndex>(std::move(spans));

    g.n_backers_ = 0;
    for (std::uint32_t u = 0; u < n_users; ++u) {
        if (g.out_degree(u) > 0) ++g.n_backers_;
    }
    return g;
}

TemporalBipartiteGraph TemporalBipartiteGraph::load(std::istream& backings, std::istream& projects,
                                                    const std::string& backings_name,
                                                    const std::string& projects_name) {
    Inputs inputs;
    inputs.projects = read_projects_csv(projects, projects_name);
    inputs.backings = read_backings_csv(backings, backings_name);
    inputs.projects_name = projects_name;
    inputs.backings_name = backings_name;
    return build(std::move(inputs));
}

TemporalBipartiteGraph TemporalBipartiteGraph::load_files(const std::string& backings_path,
                                                          const std::string& projects_path) {
    std::ifstream backings(backings_path, std::ios::binary);
    if (!backings) throw Error("cannot open file: " + backings_path);
    std::ifstream projects(projects_path, std::ios::binary);
    if (!projects) throw Error("cannot open file: " + projects_path);
    return load(backings, projects, backings_path, projects_path);
}

TemporalBipartiteGraph TemporalBipartiteGraph::rewired_copy(
    const std::vector<ProjectIdx>& new_targets) const {
    if (new_targets.size() != edges_.size()) {
        throw Error("rewired_copy: target list size mismatch");
    }
    TemporalBipartiteGraph g;
    g.user_names_ = user_names_;
    g.user_lookup_ = user_lookup_;
    g.project_names_ = project_names_;
    g.project_lookup_ = project_lookup_;
    g.projects_ = projects_;
    g.by_founder_ = by_founder_;
    g.by_backer_ = by_backer_;  // backers and times are untouched
    g.lifespan_ = lifespan_;
    g.n_backers_ = n_backers_;

    g.edges_ = edges_;
    const auto n_edges = static_cast<std::uint32_t>(g.edges_.size());
    std::vector<std::uint32_t> edge_project(n_edges);
    for (std::uint32_t i = 0; i < n_edges; ++i) {
        g.edges_[i].project = new_targets[i];
        edge_project[i] = new_targets[i];
    }
    g.by_project_ = build_csr(static_cast<std::uint32_t>(n_projects()), n_edges, edge_project);
    return g;
}

std::optional<UserIdx> TemporalBipartiteGraph::find_user(std::string_view name) const {
    auto it = user_lookup_->find(std::string(name));
    if (it == user_lookup_->end()) return std::nullopt;
    return it->second;
}

std::optional<ProjectIdx> TemporalBipartiteGraph::find_project(std::string_view name) const {
    auto it = project_lookup_->find(std::string(name));
    if (it == project_lookup_->end()) return std::nullopt;
    return it->second;
}

void TemporalBipartiteGraph::save(std::ostream& backings, std::ostream& projects) const {
    backings << kBackingsHeader << '\n';
    for (const Backing& e : edges_) {
        backings << user_name(e.backer) << ',' << project_name(e.project) << ',' << e.time << '\n';
    }
    projects << kProjectsHeader << '\n';
    for (std::uint32_t p = 0; p < n_projects(); ++p) {
        const ProjectInfo& info = project(p);
        projects << project_name(p) << ',' << user_name(info.founder) << ',' << info.deadline
                 << ',' << info.start << '\n';
    }
}

void TemporalBipartiteGraph::save_files(const std::string& backings_path,
                                        const std::string& projects_path) const {
    std::ofstream backings(backings_path, std::ios::binary);
    if (!backings) throw Error("cannot open file for writing: " + backings_path);
    std::ofstream projects(projects_path, std::ios::binary);
    if (!projects) throw Error("cannot open file for writing: " + projects_path);
    save(backings, projects);
    if (!backings.flush() || !projects.flush()) {
        throw Error("write failed under " + backings_path);
    }
}

}  // namespace buddynet
