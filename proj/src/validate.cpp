#include "buddynet/validate.hpp"

namespace buddynet {

ValidationReport validate(const TemporalBipartiteGraph& graph, std::size_t max_samples) {
    Finding outside{"edge_outside_lifespan", 0, {}};
    Finding zero_backing{"zero_backing_project", 0, {}};
    Finding backer_founder{"backer_is_founder", 0, {}};
    Finding bad_span{"start_after_deadline", 0, {}};

    auto sample = [&](Finding& f, std::string text) {
        if (f.samples.size() < max_samples) f.samples.push_back(std::move(text));
    };

    for (const Backing& e : graph.edges()) {
        const ProjectInfo& p = graph.project(e.project);
        if (!p.lifespan_contains(e.time)) {
            ++outside.count;
            sample(outside, std::string(graph.user_name(e.backer)) + "->" +
                                std::string(graph.project_name(e.project)) + "@" +
                                std::to_string(e.time));
        }
    }

    for (ProjectIdx p = 0; p < graph.n_projects(); ++p) {
        const ProjectInfo& info = graph.project(p);
        if (graph.in_degree(p) == 0) {
            ++zero_backing.count;
            sample(zero_backing, std::string(graph.project_name(p)));
        }
        if (info.start > info.deadline) {
            ++bad_span.count;
            sample(bad_span, std::string(graph.project_name(p)));
        }
    }

    for (UserIdx u = 0; u < graph.n_users(); ++u) {
        if (graph.is_backer(u) && graph.is_founder(u)) {
            ++backer_founder.count;
            sample(backer_founder, std::string(graph.user_name(u)));
        }
    }

    ValidationReport report;
    report.ok = outside.count == 0 && bad_span.count == 0;
    report.findings.push_back(std::move(outside));
    report.findings.push_back(std::move(zero_backing));
    report.findings.push_back(std::move(backer_founder));
    report.findings.push_back(std::move(bad_span));
    return report;
}

nlohmann::ordered_json to_json(const ValidationReport& report) {
    nlohmann::ordered_json findings = nlohmann::ordered_json::array();
    for (const Finding& f : report.findings) {
        findings.push_back({{"class", f.klass}, {"count", f.count}, {"samples", f.samples}});
    }
    return {{"findings", std::move(findings)}, {"ok", report.ok}};
}

}  // namespace buddynet
