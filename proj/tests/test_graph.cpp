#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_util.hpp"

using namespace ratenet;
using testutil::make_graph;

TEST_CASE("degree and neighbors") {
    auto g = make_graph(2, 2, {{0, 0}});
    CHECK(g.degree(NodeRef::user(0)) == 1);
    CHECK(g.degree(NodeRef::item(0)) == 1);
    CHECK(g.degree(NodeRef::user(1)) == 0);  // isolated imported node
    CHECK_THROWS_AS(g.degree(NodeRef::user(5)), DataError);

    auto g2 = make_graph(1, 3, {{0, 2}, {0, 0}, {0, 1}});
    auto nb = g2.neighbors(NodeRef::user(0));
    CHECK(std::vector<std::uint32_t>(nb.begin(), nb.end()) ==
          std::vector<std::uint32_t>{0, 1, 2});
}

TEST_CASE("windowed_view boundary semantics") {
    auto g = make_graph(3, 1, {{0, 0}, {1, 0}, {2, 0}}, {}, {1, 5, 9});
    CHECK(g.windowed_view({0, 100}).edge_count() == 3);
    CHECK(g.windowed_view({5, 5}).edge_count() == 0);
    auto view = g.windowed_view({2, 9});
    REQUIRE(view.edge_count() == 1);
    CHECK(view.edges()[0].timestamp == 5);
    // node set preserved so indexes stay stable
    CHECK(view.primary_count() == 3);
}

TEST_CASE("windowed_view composes by window intersection") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
        std::vector<std::int64_t> times;
        for (std::uint32_t u = 0; u < 4; ++u)
            for (std::uint32_t i = 0; i < 4; ++i)
                if (rng() % 2) {
                    pairs.emplace_back(u, i);
                    times.push_back(static_cast<std::int64_t>(rng() % 50));
                }
        auto g = make_graph(4, 4, pairs, {}, times);
        const std::int64_t a = static_cast<std::int64_t>(rng() % 50);
        const std::int64_t b = a + static_cast<std::int64_t>(rng() % 30);
        const std::int64_t c = static_cast<std::int64_t>(rng() % 50);
        const std::int64_t d = c + static_cast<std::int64_t>(rng() % 30);
        auto nested = g.windowed_view({a, b}).windowed_view({c, d});
        auto direct = g.windowed_view({std::max(a, c), std::max(std::max(a, c), std::min(b, d))});
        CHECK(nested.structurally_equal(direct));
    }
}

TEST_CASE("first_rating picks the earliest edge, ties by user index") {
    auto g = make_graph(2, 1, {{0, 0}, {1, 0}}, {4.0, 2.0}, {10, 3});
    auto first = g.first_rating(0);
    CHECK(first.user == 1);
    CHECK(first.rating == 2.0);
    CHECK(first.timestamp == 3);

    auto tie = make_graph(2, 1, {{1, 0}, {0, 0}}, {}, {3, 3});
    CHECK(tie.first_rating(0).user == 0);

    auto unrated = make_graph(1, 1, {});
    CHECK_THROWS_AS(unrated.first_rating(0), DataError);
}

TEST_CASE("bounded_bfs respects the depth bound") {
    auto g = testutil::path6();  // u0-i0-u1-i1-u2-i2
    auto d1 = g.bounded_bfs(NodeRef::user(0), 1);
    REQUIRE(d1.size() == 2);
    CHECK(d1[0] == std::pair{NodeRef::user(0), 0u});
    CHECK(d1[1] == std::pair{NodeRef::item(0), 1u});

    auto d3 = g.bounded_bfs(NodeRef::user(0), 3);
    CHECK(d3.size() == 4);

    auto iso = make_graph(2, 1, {{0, 0}});
    auto lone = iso.bounded_bfs(NodeRef::user(1), 3);
    REQUIRE(lone.size() == 1);
    CHECK(lone[0].second == 0);

    CHECK_THROWS_AS(g.bounded_bfs(NodeRef::user(9), 1), DataError);
}

TEST_CASE("bfs distance parity matches the partition") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = testutil::random_bipartite(rng, 6, 6, 0.3);
        for (auto [node, dist] : g.bounded_bfs(NodeRef::user(0), 6)) {
            if (node.side == Side::primary) CHECK(dist % 2 == 0);
            else CHECK(dist % 2 == 1);
        }
    }
}

TEST_CASE("item_window_stats") {
    auto g = make_graph(3, 1, {{0, 0}, {1, 0}, {2, 0}}, {4.0, 5.0, 1.0}, {10, 20, 99});
    auto [n, mu] = g.item_window_stats(0, {10, 21});
    CHECK(n == 2);
    CHECK(mu == doctest::Approx(4.5));

    auto [n0, mu0] = g.item_window_stats(0, {100, 200});
    CHECK(n0 == 0);
    CHECK(mu0 == 0.0);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::vector<std::int64_t> times;
    for (std::uint32_t u = 0; u < 6; ++u) {
        pairs.emplace_back(u, 0);
        times.push_back(static_cast<std::int64_t>(u));
    }
    auto implicit = make_graph(6, 1, pairs, {}, times);  // all ratings 5
    auto [n6, mu6] = implicit.item_window_stats(0, {0, 10});
    CHECK(n6 == 6);
    CHECK(mu6 == 5.0);
}

TEST_CASE("degree sums match the edge count on both sides") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = testutil::random_bipartite(rng, 7, 5, 0.4);
        std::uint64_t psum = 0, ssum = 0;
        for (std::uint32_t u = 0; u < g.primary_count(); ++u) psum += g.degree(NodeRef::user(u));
        for (std::uint32_t i = 0; i < g.secondary_count(); ++i) ssum += g.degree(NodeRef::item(i));
        CHECK(psum == g.edge_count());
        CHECK(ssum == g.edge_count());
    }
}

TEST_CASE("parallel edges are rejected") {
    CHECK_THROWS_AS(make_graph(1, 1, {{0, 0}, {0, 0}}), DataError);
}
