#include "doctest.h"
#include "oracles.hpp"

#include "tonnetz/bipartite.hpp"
#include "tonnetz/bottleneck.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace tonnetz;

namespace {

PersistenceDiagram random_diagram(std::mt19937_64& rng, int degree, std::size_t max_proper, std::size_t essentials)
{
    std::uniform_real_distribution<double> coord(0.0, 10.0);
    PersistenceDiagram d;
    d.degree = degree;
    const std::size_t n = rng() % (max_proper + 1);
    for (std::size_t i = 0; i < n; ++i) {
        double u = coord(rng), v = coord(rng);
        if (rng() % 4 == 0) {
            u = std::floor(u);
            v = std::floor(v);
        }
        if (u == v)
            v += 1.0;
        d.proper.push_back({std::min(u, v), std::max(u, v)});
    }
    for (std::size_t i = 0; i < essentials; ++i)
        d.essential.push_back(coord(rng));
    d.sort();
    return d;
}

} // namespace

TEST_CASE("point distance")
{
    CHECK(point_distance({0, 2}, {0, 2}) == 0.0);
    CHECK(point_distance({0, 2}, {1, 1}) == 1.0);
    CHECK(point_distance({1, 5}, {2, 5}) == 1.0);
    CHECK(point_distance({3, 3}, {7, 7}) == 0.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> c(0.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const double a = c(rng), b = a + c(rng), x = c(rng), y = x + c(rng);
        CHECK(point_distance({a, b}, {x, y}) == testing::formula_cost(a, b, x, y));
        CHECK(point_distance({a, b}, {x, y}) == point_distance({x, y}, {a, b}));
    }
}

TEST_CASE("bottleneck examples")
{
    PersistenceDiagram a, empty;
    a.proper = {{0.0, 2.0}};
    CHECK(bottleneck_distance(a, empty) == 1.0);
    CHECK(bottleneck_distance(a, a) == 0.0);
    CHECK(bottleneck_distance(empty, empty) == 0.0);

    PersistenceDiagram e1, e2;
    e1.essential = {0.0, 4.0};
    e2.essential = {1.0, 3.0};
    CHECK(bottleneck_distance(e1, e2) == 1.0);
    e2.essential = {1.0};
    CHECK(bottleneck_distance(e1, e2) == std::numeric_limits<double>::infinity());

    PersistenceDiagram other;
    other.degree = 1;
    CHECK_THROWS_AS(bottleneck_distance(a, other), std::invalid_argument);
}

TEST_CASE("essential and proper parts combine by max")
{
    PersistenceDiagram a, b;
    a.essential = {0.0};
    b.essential = {0.5};
    a.proper = {{0.0, 6.0}};
    CHECK(bottleneck_distance(a, b) == 3.0);
    b.essential = {4.0};
    CHECK(bottleneck_distance(a, b) == 4.0);
}

TEST_CASE("matching against brute force")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 400; ++trial) {
        const auto a = random_diagram(rng, 0, 4, 1), b = random_diagram(rng, 0, 4, 1);
        const double fast = proper_bottleneck(a.proper, b.proper);
        CHECK(fast == testing::brute_force_proper_bottleneck(a.proper, b.proper));

        const double total = bottleneck_distance(a, b);
        CHECK(total == std::max(fast, std::abs(a.essential[0] - b.essential[0])));
        const auto cands = candidate_costs(a, b);
        CHECK(std::find(cands.begin(), cands.end(), total) != cands.end());
        CHECK(std::is_sorted(cands.begin(), cands.end()));
        CHECK(std::adjacent_find(cands.begin(), cands.end()) == cands.end());
    }
}

TEST_CASE("metric axioms")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_diagram(rng, 1, 6, 2), b = random_diagram(rng, 1, 6, 2),
                   c = random_diagram(rng, 1, 6, 2);
        CHECK(bottleneck_distance(a, a) == 0.0);
        CHECK(bottleneck_distance(a, b) == bottleneck_distance(b, a));
        CHECK(bottleneck_distance(a, c) <= bottleneck_distance(a, b) + bottleneck_distance(b, c) + 1e-9);
    }
}

TEST_CASE("stability on profiles")
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> noise(-0.5, 0.5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto p = testing::random_profile(rng);
        auto q = p;
        double eps = 0.0;
        for (std::size_t v = 0; v < q.durations.size(); ++v) {
            q.durations[v] = std::max(0.0, q.durations[v] + noise(rng));
            eps = std::max(eps, std::abs(q.durations[v] - p.durations[v]));
        }
        const auto dp = profile_diagrams(p), dq = profile_diagrams(q);
        for (int k = 0; k <= 2; ++k)
            CHECK(bottleneck_distance(dp.at(k), dq.at(k)) <= eps + 1e-12);
    }
}

TEST_CASE("transposed profiles are at distance zero")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = testing::random_profile(rng);
        const auto d = profile_diagrams(p);
        for (int k = 0; k < 12; ++k) {
            const auto t = profile_diagrams(p.rotated(k));
            for (int deg = 0; deg <= 2; ++deg)
                CHECK(bottleneck_distance(d.at(deg), t.at(deg)) == 0.0);
        }
    }
}

TEST_CASE("distance matrix")
{
    std::mt19937_64 rng(31);
    std::vector<PersistenceDiagram> ds;
    for (int i = 0; i < 9; ++i)
        ds.push_back(random_diagram(rng, 1, 5, 2));

    CHECK(distance_matrix(std::span(ds).first(1))(0, 0) == 0.0);
    const auto m1 = distance_matrix(ds, 1);
    for (unsigned threads : {2u, 3u, 8u, 0u})
        CHECK(distance_matrix(ds, threads) == m1);
    for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = 0; j < ds.size(); ++j)
            CHECK(m1(i, j) == bottleneck_distance(ds[i], ds[j]));

    const auto p = testing::random_profile(rng);
    const std::vector<PersistenceDiagram> pair{profile_diagrams(p).at(1), profile_diagrams(p.rotated(4)).at(1)};
    CHECK(distance_matrix(pair) == DistanceMatrix(2));

    ds.push_back(random_diagram(rng, 0, 2, 1));
    CHECK_THROWS_AS(distance_matrix(ds), std::invalid_argument);
    CHECK(distance_matrix({}).size() == 0);
}

TEST_CASE("maximum bipartite matching")
{
    CHECK(max_bipartite_matching({}, 0) == 0);
    CHECK(max_bipartite_matching({{0}, {0}, {0}}, 1) == 1);
    CHECK(max_bipartite_matching({{0, 1}, {0}}, 2) == 2);
    CHECK(max_bipartite_matching({{1}, {0, 1}, {1, 2}}, 3) == 3);

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        std::vector<std::vector<std::size_t>> adj(n);
        for (auto& row : adj)
            for (std::size_t j = 0; j < n; ++j)
                if (rng() % 3 == 0)
                    row.push_back(j);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::size_t best = 0;
        for (std::size_t subset = 0; subset < (1u << n); ++subset) {
            std::vector<std::size_t> rows;
            for (std::size_t i = 0; i < n; ++i)
                if (subset >> i & 1u)
                    rows.push_back(i);
            std::sort(perm.begin(), perm.end());
            bool found = false;
            do {
                bool ok = true;
                for (std::size_t r = 0; r < rows.size() && ok; ++r)
                    ok = std::find(adj[rows[r]].begin(), adj[rows[r]].end(), perm[r]) != adj[rows[r]].end();
                found = ok;
            } while (!found && std::next_permutation(perm.begin(), perm.end()));
            if (found)
                best = std::max(best, rows.size());
        }
        CHECK(max_bipartite_matching(adj, n) == best);
    }
}
