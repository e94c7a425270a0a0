#include "doctest.h"
#include "oracles.hpp"

#include "tonnetz/cluster.hpp"

#include <algorithm>
#include <limits>
#include <random>

using namespace tonnetz;

namespace {

DistanceMatrix to_matrix(const std::vector<std::vector<double>>& rows)
{
    DistanceMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j)
            m(i, j) = rows[i][j];
    return m;
}

std::vector<std::string> names(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back("item" + std::to_string(i));
    return out;
}

std::vector<double> heights(const Dendrogram& d)
{
    std::vector<double> out;
    for (const auto& m : d.merges)
        out.push_back(m.height);
    return out;
}

} // namespace

TEST_CASE("three items")
{
    const auto m = to_matrix({{0, 1, 5}, {1, 0, 5}, {5, 5, 0}});
    for (Linkage l : {Linkage::single, Linkage::complete, Linkage::average}) {
        const auto d = hierarchical_cluster(m, {"A", "B", "C"}, l);
        REQUIRE(d.merges.size() == 2);
        CHECK(d.merges[0] == Merge{0, 1, 1.0, 2});
        CHECK(d.merges[1] == Merge{3, 2, 5.0, 3});
        CHECK(to_newick(d) == "((A:1,B:1):4,C:5);");
        CHECK(cophenetic_height(d, 0, 1) == 1.0);
        CHECK(cophenetic_height(d, 1, 2) == 5.0);
        CHECK(cophenetic_height(d, 2, 2) == 0.0);
    }
}

TEST_CASE("linkages differ")
{
    const auto m = to_matrix({{0, 1, 4, 6}, {1, 0, 2, 8}, {4, 2, 0, 3}, {6, 8, 3, 0}});
    CHECK(heights(hierarchical_cluster(m, names(4), Linkage::single)) == std::vector<double>{1, 2, 3});
    CHECK(heights(hierarchical_cluster(m, names(4), Linkage::complete)) == std::vector<double>{1, 3, 8});
    const auto avg = hierarchical_cluster(m, names(4), Linkage::average);
    CHECK(heights(avg) == std::vector<double>{1, 3, 17.0 / 3.0});
    CHECK(avg.merges[1] == Merge{4, 2, 3.0, 3});
}

TEST_CASE("single leaf and empty input")
{
    const auto d = hierarchical_cluster(DistanceMatrix(1), {"A"});
    CHECK(d.merges.empty());
    CHECK(to_newick(d) == "A;");
    CHECK(hierarchical_cluster(DistanceMatrix(0), {}).merges.empty());
}

TEST_CASE("zero-distance pair merges first")
{
    const auto m = to_matrix({{0, 3, 4, 3}, {3, 0, 2, 0}, {4, 2, 0, 2}, {3, 0, 2, 0}});
    const auto d = hierarchical_cluster(m, names(4));
    CHECK(d.merges[0] == Merge{1, 3, 0.0, 2});
}

TEST_CASE("ties use the smallest index pair")
{
    const auto m = to_matrix({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    const auto d = hierarchical_cluster(m, names(3));
    CHECK(d.merges[0] == Merge{0, 1, 1.0, 2});
    CHECK(d.merges[1] == Merge{3, 2, 1.0, 3});
}

TEST_CASE("single linkage equals minimum spanning tree")
{
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 15;
        const auto rows = testing::random_metric(rng, n);
        const auto d = hierarchical_cluster(to_matrix(rows), names(n), Linkage::single);
        CHECK(heights(d) == testing::mst_weights(rows));
    }
}

TEST_CASE("monotone heights and valid trees")
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 16;
        const auto m = to_matrix(testing::random_metric(rng, n));
        for (Linkage l : {Linkage::single, Linkage::complete, Linkage::average}) {
            const auto d = hierarchical_cluster(m, names(n), l);
            CHECK(d.merges.size() == n - 1);
            CHECK(std::is_sorted(d.merges.begin(), d.merges.end(),
                                 [](const Merge& a, const Merge& b) { return a.height < b.height; }));
            CHECK_NOTHROW(d.validate());
            if (n > 1)
                CHECK(d.merges.back().size == n);
        }
    }
}

TEST_CASE("permuting labels permutes leaves")
{
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng() % 10;
        const auto rows = testing::random_metric(rng, n);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::vector<double>> permuted(n, std::vector<double>(n));
        std::vector<std::string> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = "item" + std::to_string(perm[i]);
            for (std::size_t j = 0; j < n; ++j)
                permuted[i][j] = rows[perm[i]][perm[j]];
        }
        for (Linkage l : {Linkage::single, Linkage::complete, Linkage::average}) {
            const auto a = hierarchical_cluster(to_matrix(rows), names(n), l);
            const auto b = hierarchical_cluster(to_matrix(permuted), labels, l);
            CHECK(heights(a) == heights(b));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    CHECK(cophenetic_height(b, i, j) == cophenetic_height(a, perm[i], perm[j]));
        }
    }
}

TEST_CASE("invalid matrices")
{
    auto m = to_matrix({{0, 1}, {2, 0}});
    CHECK_THROWS_AS(hierarchical_cluster(m, names(2)), std::invalid_argument);
    m = to_matrix({{0, -1}, {-1, 0}});
    CHECK_THROWS_AS(hierarchical_cluster(m, names(2)), std::invalid_argument);
    m = to_matrix({{1, 1}, {1, 0}});
    CHECK_THROWS_AS(hierarchical_cluster(m, names(2)), std::invalid_argument);
    m = to_matrix({{0, std::nan("")}, {std::nan(""), 0}});
    CHECK_THROWS_AS(hierarchical_cluster(m, names(2)), std::invalid_argument);
    CHECK_THROWS_AS(hierarchical_cluster(DistanceMatrix(2), names(3)), std::invalid_argument);
    CHECK_THROWS_AS(parse_linkage("ward"), std::invalid_argument);
    CHECK(parse_linkage("single") == Linkage::single);
    CHECK(to_string(Linkage::average) == "average");
}

TEST_CASE("json round trip")
{
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        const auto d = hierarchical_cluster(to_matrix(testing::random_metric(rng, n)), names(n));
        const auto text = to_json(d);
        CHECK(dendrogram_from_json(text) == d);
        CHECK(to_json(dendrogram_from_json(text)) == text);
    }
    const auto inf = std::numeric_limits<double>::infinity();
    const auto d = hierarchical_cluster(to_matrix({{0, inf}, {inf, 0}}), {"a", "b"});
    CHECK(d.merges[0].height == inf);
    CHECK(dendrogram_from_json(to_json(d)) == d);
}

TEST_CASE("invalid dendrograms")
{
    Dendrogram d{{"a", "b", "c"}, {{0, 1, 1.0, 2}, {0, 2, 2.0, 2}}};
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
    d.merges = {{0, 1, 1.0, 2}};
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
    CHECK_THROWS(dendrogram_from_json(R"({"labels": ["a"], "merges": [[0, 0, 1, 2]]})"));
}

TEST_CASE("newick quoting")
{
    const auto d = hierarchical_cluster(to_matrix({{0, 0.5}, {0.5, 0}}), {"it's", "b c"});
    CHECK(to_newick(d) == "('it''s':0.5,'b c':0.5);");
}
