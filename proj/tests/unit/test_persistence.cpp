#include "doctest.h"
#include "oracles.hpp"

#include "tonnetz/persistence.hpp"

#include <random>

using namespace tonnetz;

namespace {

PitchClassProfile cluster_profile()
{
    PitchClassProfile p;
    p.durations.fill(10.0);
    p.durations[0] = p.durations[1] = p.durations[2] = 1.0;
    return p;
}

long betti_alternating_sum(const DiagramSet& diagrams, double t)
{
    return static_cast<long>(diagrams.at(0).betti_at(t)) - static_cast<long>(diagrams.at(1).betti_at(t)) +
           static_cast<long>(diagrams.at(2).betti_at(t));
}

} // namespace

TEST_CASE("constant profile has the homology of the torus")
{
    const auto d = profile_diagrams({});
    CHECK(d.at(0).essential == std::vector<double>{0.0});
    CHECK(d.at(1).essential == std::vector<double>{0.0, 0.0});
    CHECK(d.at(2).essential == std::vector<double>{0.0});
    for (int k = 0; k <= 2; ++k)
        CHECK(d.at(k).proper.empty());
    CHECK(h0_oracle(deform(build_tonnetz(), {})) == d.at(0));
}

TEST_CASE("chromatic cluster profile")
{
    const auto f = deform(build_tonnetz(), cluster_profile());
    const auto d0 = compute_persistence(f, {0}).at(0);
    CHECK(d0.essential == std::vector<double>{1.0});
    CHECK(d0.proper == std::vector<ProperPoint>{{1.0, 10.0}, {1.0, 10.0}});
    CHECK(h0_oracle(f) == d0);

    const auto feat = diagram_features(d0);
    CHECK(feat.essential_births == std::vector<double>{1.0});
    CHECK(feat.proper_count == 2);
    CHECK(feat.max_persistence == 9.0);
    CHECK_FALSE(feat.essential_gap);
}

TEST_CASE("major triad profile")
{
    PitchClassProfile p;
    p.durations[0] = p.durations[4] = p.durations[7] = 8.0;
    const auto f = deform(build_tonnetz(), p);
    const auto d = compute_persistence(f);
    CHECK(d.at(0).essential == std::vector<double>{0.0});
    CHECK(d.at(0) == h0_oracle(f));
    REQUIRE(d.at(1).essential.size() == 2);
    for (double u : d.at(1).essential)
        CHECK(u <= 8.0);
    CHECK(d.at(2).essential == std::vector<double>{8.0});
}

TEST_CASE("degree selection")
{
    const auto d = profile_diagrams(cluster_profile(), {1});
    CHECK(d.size() == 1);
    CHECK(d.count(1) == 1);
}

TEST_CASE("random profiles")
{
    std::mt19937_64 rng(2024);
    const auto& t = build_tonnetz();
    for (int trial = 0; trial < 500; ++trial) {
        const auto p = testing::random_profile(rng);
        const auto f = deform(t, p);
        const auto d = compute_persistence(f);

        CHECK(d.at(0).essential.size() == 1);
        CHECK(d.at(1).essential.size() == 2);
        CHECK(d.at(2).essential.size() == 1);
        CHECK(d.at(0).essential[0] == *std::min_element(p.durations.begin(), p.durations.end()));
        CHECK(d.at(0).proper.size() <= 2);
        CHECK(d.at(0) == h0_oracle(f));
        for (int k = 0; k <= 2; ++k)
            for (const auto& q : d.at(k).proper)
                CHECK(q.birth < q.death);

        for (const auto& e : f.entries) {
            long chi = 0;
            for (const auto& g : f.entries)
                if (g.value <= e.value)
                    chi += g.dimension % 2 == 0 ? 1 : -1;
            CHECK(chi == betti_alternating_sum(d, e.value));
        }

        for (int k = 1; k < 12; ++k)
            CHECK(profile_diagrams(p.rotated(k)) == d);
    }
}

TEST_CASE("subcomplexes of the tonnetz")
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        const auto sub = induced_subcomplex(build_tonnetz(), PitchClassSet(rng() % 4096));
        const auto f = deform(sub, testing::random_profile(rng));
        const auto d = compute_persistence(f);
        CHECK(d.at(0) == h0_oracle(f));
        CHECK(d.at(0).essential.size() == connected_components(sub));
    }
}

TEST_CASE("hollow and filled triangle")
{
    SimplicialComplex hollow{{0, 1, 2}, {{0, 1}, {0, 2}, {1, 2}}, {}};
    const double heights[] = {0.0, 1.0, 2.0};
    auto d = compute_persistence(lower_star_filtration(hollow, heights));
    CHECK(d.at(0).essential == std::vector<double>{0.0});
    CHECK(d.at(0).proper.empty());
    CHECK(d.at(1).essential == std::vector<double>{2.0});

    SimplicialComplex filled = hollow;
    filled.triangles = {{0, 1, 2}};
    d = compute_persistence(lower_star_filtration(filled, heights));
    CHECK(d.at(1).essential.empty());
    CHECK(d.at(1).proper.empty());

    SimplicialComplex path{{0, 1, 2}, {{0, 2}, {1, 2}}, {}};
    const double valley[] = {0.0, 1.0, 3.0};
    d = compute_persistence(lower_star_filtration(path, valley));
    CHECK(d.at(0).essential == std::vector<double>{0.0});
    CHECK(d.at(0).proper == std::vector<ProperPoint>{{1.0, 3.0}});
}

TEST_CASE("face order violations are rejected")
{
    Filtration f;
    f.entries.push_back({0, 0, 0.0, {0}});
    f.entries.push_back({2, 1, 0.0, {0, 1}});
    f.entries.push_back({1, 0, 0.0, {1}});
    CHECK_THROWS_AS(compute_persistence(f), std::invalid_argument);
    CHECK_THROWS_AS(h0_oracle(f), std::invalid_argument);

    Filtration g;
    g.entries.push_back({0, 0, 1.0, {0}});
    g.entries.push_back({1, 0, 0.0, {1}});
    CHECK_THROWS_AS(compute_persistence(g), std::invalid_argument);
}

TEST_CASE("diagram features")
{
    PersistenceDiagram d1;
    d1.degree = 1;
    d1.essential = {2.0, 7.0};
    const auto f = diagram_features(d1);
    REQUIRE(f.essential_gap);
    CHECK(*f.essential_gap == 5.0);
    CHECK(f.proper_count == 0);
    CHECK(f.max_persistence == 0.0);

    PersistenceDiagram d0;
    d0.essential = {0.0};
    const auto g = diagram_features(d0);
    CHECK(g.essential_births == std::vector<double>{0.0});
    CHECK(g.proper_count == 0);
}

TEST_CASE("betti numbers")
{
    PersistenceDiagram d;
    d.proper = {{1.0, 3.0}};
    d.essential = {0.0};
    CHECK(d.betti_at(-1.0) == 0);
    CHECK(d.betti_at(0.0) == 1);
    CHECK(d.betti_at(1.0) == 2);
    CHECK(d.betti_at(3.0) == 1);
}
