#include "buddynet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace buddynet {

const char* to_string(DegreeSide side) {
    return side == DegreeSide::ProjectIn ? "project-in" : "backer-out";
}

namespace {

std::vector<std::uint64_t> degrees_of(const TemporalBipartiteGraph& graph, DegreeSide side) {
    std::vector<std::uint64_t> degrees;
    if (side == DegreeSide::ProjectIn) {
        degrees.reserve(graph.n_projects());
        for (ProjectIdx p = 0; p < graph.n_projects(); ++p) {
            degrees.push_back(graph.in_degree(p));
        }
    } else {
        degrees.reserve(graph.n_backers());
        for (UserIdx u = 0; u < graph.n_users(); ++u) {
            if (graph.out_degree(u) > 0) degrees.push_back(graph.out_degree(u));
        }
    }
    return degrees;
}

// Nearest-rank quantile on sorted data: value at rank ceil(q * n).
std::uint64_t nearest_rank(const std::vector<std::uint64_t>& sorted, std::uint64_t num,
                           std::uint64_t den) {
    const std::uint64_t n = sorted.size();
    std::uint64_t rank = (num * n + den - 1) / den;
    if (rank < 1) rank = 1;
    return sorted[rank - 1];
}

}  // namespace

DegreeSummary degree_summary(const TemporalBipartiteGraph& graph, DegreeSide side) {
    std::vector<std::uint64_t> degrees = degrees_of(graph, side);
    if (degrees.empty()) {
        throw EmptyInputError(std::string("degree_summary: no nodes on side ") + to_string(side));
    }
    std::sort(degrees.begin(), degrees.end());

    DegreeSummary s;
    s.side = side;
    s.count = degrees.size();

    double sum = 0.0;
    for (std::uint64_t d : degrees) sum += static_cast<double>(d);
    s.mean = sum / static_cast<double>(degrees.size());

    double sq = 0.0;
    for (std::uint64_t d : degrees) {
        const double delta = static_cast<double>(d) - s.mean;
        sq += delta * delta;
    }
    s.std_dev = std::sqrt(sq / static_cast<double>(degrees.size()));

    s.min = degrees.front();
    s.max = degrees.back();
    s.q25 = nearest_rank(degrees, 1, 4);
    s.median = nearest_rank(degrees, 1, 2);
    s.q75 = nearest_rank(degrees, 3, 4);

    std::uint64_t best_degree = degrees[0];
    std::size_t best_run = 0, run = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        run = (i > 0 && degrees[i] == degrees[i - 1]) ? run + 1 : 1;
        if (run > best_run) {  // strict: first (smallest) degree wins ties
            best_run = run;
            best_degree = degrees[i];
        }
    }
    s.mode = best_degree;

    s.zero_count = static_cast<std::size_t>(
        std::upper_bound(degrees.begin(), degrees.end(), 0ull) - degrees.begin());
    return s;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> degree_histogram(
    const TemporalBipartiteGraph& graph, DegreeSide side) {
    std::vector<std::uint64_t> degrees = degrees_of(graph, side);
    if (degrees.empty()) {
        throw EmptyInputError(std::string("degree_histogram: no nodes on side ") + to_string(side));
    }
    std::sort(degrees.begin(), degrees.end());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> histogram;
    for (std::size_t i = 0; i < degrees.size();) {
        std::size_t j = i;
        while (j < degrees.size() && degrees[j] == degrees[i]) ++j;
        histogram.emplace_back(degrees[i], j - i);
        i = j;
    }
    return histogram;
}

nlohmann::ordered_json to_json(const DegreeSummary& s) {
    return {{"side", to_string(s.side)}, {"count", s.count},         {"mean", s.mean},
            {"std", s.std_dev},          {"min", s.min},             {"q25", s.q25},
            {"median", s.median},        {"q75", s.q75},             {"max", s.max},
            {"mode", s.mode},            {"zero_count", s.zero_count}};
}

std::string to_csv(const DegreeSummary& s) {
    std::ostringstream out;
    out << "side,count,mean,std,min,q25,median,q75,max,mode,zero_count\n";
    out << to_string(s.side) << ',' << s.count << ',' << s.mean << ',' << s.std_dev << ',' << s.min
        << ',' << s.q25 << ',' << s.median << ',' << s.q75 << ',' << s.max << ',' << s.mode << ','
        << s.zero_count << '\n';
    return out.str();
}

std::string histogram_csv(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& histogram) {
    std::ostringstream out;
    out << "degree,count\n";
    for (const auto& [degree, count] : histogram) {
        out << degree << ',' << count << '\n';
    }
    return out.str();
}

}  // namespace buddynet
