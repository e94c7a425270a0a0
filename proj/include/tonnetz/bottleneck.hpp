#pragma once

#include "tonnetz/persistence.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tonnetz {

/// Cost of matching (u, v) with (u', v'):
///   min{ max{|u - u'|, |v - v'|}, max{(v - u) / 2, (v' - u') / 2} }.
/// Diagonal points are passed as (t, t).
double point_distance(const ProperPoint& p, const ProperPoint& q);

/// Bottleneck distance restricted to proper points, with each side padded
/// by the diagonal. Exact: binary search over the candidate costs with a
/// maximum bipartite matching as feasibility test.
double proper_bottleneck(std::span<const ProperPoint> a, std::span<const ProperPoint> b);

/// Optimal bottleneck assignment of essential births under |u - u'|;
/// +inf when the counts differ.
double essential_bottleneck(std::span<const double> a, std::span<const double> b);

/// max(proper part, essential part). Throws std::invalid_argument when the
/// degrees differ.
double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// Every value bottleneck_distance can return for this pair: 0, all
/// pairwise point costs, all diagonal costs and all essential differences.
std::vector<double> candidate_costs(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// Dense symmetric matrix, row-major.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

    friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Pairwise bottleneck distances. Pairs are distributed over `threads`
/// workers (0 = hardware concurrency); the result does not depend on it.
DistanceMatrix distance_matrix(std::span<const PersistenceDiagram> diagrams, unsigned threads = 0);

} // namespace tonnetz
