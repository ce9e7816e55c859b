#include <sstream>

#include "doctest.h"

#include "buddynet/stats.hpp"
#include "support.hpp"

using namespace buddynet;

namespace {

TemporalBipartiteGraph graph_with_in_degrees(const std::vector<int>& degrees) {
    TemporalBipartiteGraph::Inputs inputs;
    int backer = 0;
    for (std::size_t p = 0; p < degrees.size(); ++p) {
        inputs.projects.push_back({"p" + std::to_string(p), "f", 1000, Timestamp{0}});
        for (int i = 0; i < degrees[p]; ++i) {
            inputs.backings.push_back({"u" + std::to_string(backer++), "p" + std::to_string(p), 1});
        }
    }
    return TemporalBipartiteGraph::build(std::move(inputs));
}

}  // namespace

TEST_CASE("project in-degree summary over {0, 5, 21}") {
    const auto g = graph_with_in_degrees({0, 5, 21});
    const DegreeSummary s = degree_summary(g, DegreeSide::ProjectIn);
    CHECK(s.count == 3);
    CHECK(s.mean == doctest::Approx(26.0 / 3.0).epsilon(1e-12));
    CHECK(s.min == 0);
    CHECK(s.max == 21);
    CHECK(s.mode == 0);  // all counts tie; smallest degree wins
    CHECK(s.zero_count == 1);
}

TEST_CASE("single backer with 4 edges: degenerate distribution") {
    TemporalBipartiteGraph::Inputs inputs;
    inputs.projects.push_back({"p0", "f", 1000, Timestamp{0}});
    for (int i = 0; i < 4; ++i) inputs.backings.push_back({"solo", "p0", i});
    const auto g = TemporalBipartiteGraph::build(std::move(inputs));

    const DegreeSummary s = degree_summary(g, DegreeSide::BackerOut);
    CHECK(s.count == 1);
    CHECK(s.mean == 4.0);
    CHECK(s.std_dev == 0.0);
    CHECK(s.min == 4);
    CHECK(s.q25 == 4);
    CHECK(s.median == 4);
    CHECK(s.q75 == 4);
    CHECK(s.max == 4);
    CHECK(s.zero_count == 0);
}

TEST_CASE("empty sides raise EmptyInputError") {
    const auto g = graph_with_in_degrees({0});  // one project, no edges
    CHECK_THROWS_AS(degree_summary(g, DegreeSide::BackerOut), EmptyInputError);
    CHECK_THROWS_AS(degree_histogram(g, DegreeSide::BackerOut), EmptyInputError);
    CHECK_NOTHROW(degree_summary(g, DegreeSide::ProjectIn));
}

TEST_CASE("histogram counting") {
    SUBCASE("degrees {1,1,1,2}") {
        const auto g = graph_with_in_degrees({1, 1, 1, 2});
        const auto h = degree_histogram(g, DegreeSide::ProjectIn);
        REQUIRE(h.size() == 2);
        CHECK(h[0] == std::pair<std::uint64_t, std::uint64_t>{1, 3});
        CHECK(h[1] == std::pair<std::uint64_t, std::uint64_t>{2, 1});
    }
    SUBCASE("all distinct {1,2,3}") {
        const auto g = graph_with_in_degrees({1, 2, 3});
        const auto h = degree_histogram(g, DegreeSide::ProjectIn);
        REQUIRE(h.size() == 3);
        for (const auto& [degree, count] : h) CHECK(count == 1);
    }
}

TEST_CASE("summary and histogram match the naive oracle on random graphs") {
    std::mt19937_64 rng(101);
    testsupport::RandomGraphParams params;
    params.max_users = 60;
    params.max_projects = 50;
    params.max_edges = 300;
    for (int round = 0; round < 60; ++round) {
        const auto g = testsupport::random_graph(rng, params);

        for (const DegreeSide side : {DegreeSide::ProjectIn, DegreeSide::BackerOut}) {
            const auto degrees = side == DegreeSide::ProjectIn
                                     ? testsupport::oracle_project_in_degrees(g)
                                     : testsupport::oracle_backer_out_degrees(g);
            if (degrees.empty()) {
                CHECK_THROWS_AS(degree_summary(g, side), EmptyInputError);
                continue;
            }
            const auto expected = testsupport::oracle_degree_summary(degrees);
            const DegreeSummary got = degree_summary(g, side);
            CHECK(got.count == expected.count);
            CHECK(got.mean == doctest::Approx(expected.mean).epsilon(1e-9));
            CHECK(got.std_dev == doctest::Approx(expected.std_dev).epsilon(1e-9));
            CHECK(got.min == expected.min);
            CHECK(got.q25 == expected.q25);
            CHECK(got.median == expected.median);
            CHECK(got.q75 == expected.q75);
            CHECK(got.max == expected.max);
            CHECK(got.mode == expected.mode);
            CHECK(got.zero_count == expected.zero_count);

            // Histogram counts sum to the node count; mean * count = edges.
            const auto h = degree_histogram(g, side);
            std::uint64_t total = 0, mass = 0;
            for (const auto& [degree, count] : h) {
                total += count;
                mass += degree * count;
            }
            CHECK(total == got.count);
            CHECK(mass == g.n_edges());
            CHECK(std::is_sorted(h.begin(), h.end()));
        }
    }
}

TEST_CASE("summary serialization shapes") {
    const auto g = graph_with_in_degrees({2, 3});
    const DegreeSummary s = degree_summary(g, DegreeSide::ProjectIn);
    const auto j = to_json(s);
    CHECK(j.at("side") == "project-in");
    CHECK(j.at("count") == 2);
    const std::string csv = to_csv(s);
    CHECK(csv.find("side,count,mean") == 0);
    const std::string hist = histogram_csv(degree_histogram(g, DegreeSide::ProjectIn));
    CHECK(hist == "degree,count\n2,1\n3,1\n");
}
