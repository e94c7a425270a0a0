#include "tonnetz/bottleneck.hpp"

#include "tonnetz/bipartite.hpp"
#include "tonnetz/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tonnetz {

namespace {

double half_persistence(const ProperPoint& p) { return (p.death - p.birth) / 2.0; }

/// Augmented instance: left = a + one diagonal slot per point of b,
/// right = b + one diagonal slot per point of a. A point may only use its
/// own diagonal slot; diagonal slots are mutually interchangeable at cost 0.
class AugmentedMatching {
public:
    AugmentedMatching(std::span<const ProperPoint> a, std::span<const ProperPoint> b) : a_(a), b_(b)
    {
        const std::size_t n = a.size(), m = b.size();
        cost_.assign((n + m) * (n + m), kForbidden);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j)
                cost(i, j) = point_distance(a[i], b[j]);
            cost(i, m + i) = half_persistence(a[i]);
        }
        for (std::size_t j = 0; j < m; ++j) {
            cost(n + j, j) = half_persistence(b[j]);
            for (std::size_t i = 0; i < n; ++i)
                cost(n + j, m + i) = 0.0;
        }
    }

    std::vector<double> candidates() const
    {
        std::vector<double> c{0.0};
        for (double x : cost_)
            if (x != kForbidden)
                c.push_back(x);
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        return c;
    }

    bool feasible(double threshold) const
    {
        const std::size_t size = a_.size() + b_.size();
        std::vector<std::vector<std::size_t>> adjacency(size);
        for (std::size_t l = 0; l < size; ++l)
            for (std::size_t r = 0; r < size; ++r)
                if (cost_[l * size + r] <= threshold)
                    adjacency[l].push_back(r);
        return max_bipartite_matching(adjacency, size) == size;
    }

    double solve() const
    {
        if (a_.empty() && b_.empty())
            return 0.0;
        const std::vector<double> c = candidates();
        // The largest candidate always admits the full perfect matching.
        std::size_t lo = 0, hi = c.size() - 1;
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (feasible(c[mid]))
                hi = mid;
            else
                lo = mid + 1;
        }
        return c[lo];
    }

private:
    static constexpr double kForbidden = std::numeric_limits<double>::infinity();

    double& cost(std::size_t l, std::size_t r) { return cost_[l * (a_.size() + b_.size()) + r]; }

    std::span<const ProperPoint> a_;
    std::span<const ProperPoint> b_;
    std::vector<double> cost_;
};

} // namespace

double point_distance(const ProperPoint& p, const ProperPoint& q)
{
    const double linf = std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
    const double diag = std::max(half_persistence(p), half_persistence(q));
    return std::min(linf, diag);
}

double proper_bottleneck(std::span<const ProperPoint> a, std::span<const ProperPoint> b)
{
    return AugmentedMatching(a, b).solve();
}

double essential_bottleneck(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        return std::numeric_limits<double>::infinity();
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        worst = std::max(worst, std::abs(x[i] - y[i]));
    return worst;
}

double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b)
{
    if (a.degree != b.degree)
        throw std::invalid_argument("bottleneck distance between diagrams of degree " + std::to_string(a.degree) +
                                    " and " + std::to_string(b.degree));
    const double essential = essential_bottleneck(a.essential, b.essential);
    if (std::isinf(essential))
        return essential;
    return std::max(essential, proper_bottleneck(a.proper, b.proper));
}

std::vector<double> candidate_costs(const PersistenceDiagram& a, const PersistenceDiagram& b)
{
    std::vector<double> c = AugmentedMatching(a.proper, b.proper).candidates();
    if (a.essential.size() != b.essential.size())
        c.push_back(std::numeric_limits<double>::infinity());
    for (double x : a.essential)
        for (double y : b.essential)
            c.push_back(std::abs(x - y));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

DistanceMatrix distance_matrix(std::span<const PersistenceDiagram> diagrams, unsigned threads)
{
    for (const auto& d : diagrams)
        if (d.degree != diagrams.front().degree)
            throw std::invalid_argument("distance matrix over diagrams of mixed degrees");

    const std::size_t n = diagrams.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            pairs.emplace_back(i, j);

    std::vector<double> values(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t k) {
        values[k] = bottleneck_distance(diagrams[pairs[k].first], diagrams[pairs[k].second]);
    });

    DistanceMatrix m(n);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [i, j] = pairs[k];
        m(i, j) = m(j, i) = values[k];
    }
    return m;
}

} // namespace tonnetz
