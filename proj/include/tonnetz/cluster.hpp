#pragma once

#include "tonnetz/bottleneck.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tonnetz {

enum class Linkage { single, complete, average };

Linkage parse_linkage(std::string_view name);
std::string_view to_string(Linkage linkage);

/// One agglomeration step. Leaves are clusters 0..n-1 and the k-th merge
/// creates cluster n + k. `first` is the cluster holding the smaller
/// matrix slot.
struct Merge {
    std::size_t first = 0;
    std::size_t second = 0;
    double height = 0.0;
    std::size_t size = 0;

    friend bool operator==(const Merge&, const Merge&) = default;
};

struct Dendrogram {
    std::vector<std::string> labels;
    std::vector<Merge> merges;

    std::size_t leaf_count() const { return labels.size(); }
    /// Throws std::invalid_argument if the merge list is not a binary tree
    /// over the leaves built bottom-up.
    void validate() const;

    friend bool operator==(const Dendrogram&, const Dendrogram&) = default;
};

/// Agglomerative clustering with Lance–Williams updates. Among equal
/// minimal distances the lexicographically smallest slot pair (i, j) is
/// merged and the result takes slot i. Throws std::invalid_argument for a
/// matrix that is not symmetric, has a nonzero diagonal, or a negative or
/// NaN entry.
Dendrogram hierarchical_cluster(const DistanceMatrix& matrix, std::vector<std::string> labels,
                                Linkage linkage = Linkage::average);

/// Height at which leaves a and b first share a cluster (0 when a == b).
double cophenetic_height(const Dendrogram& dendrogram, std::size_t a, std::size_t b);

/// Newick with branch length = parent height - child height.
std::string to_newick(const Dendrogram& dendrogram);

/// {"labels": [...], "merges": [[a, b, height, size], ...]}
std::string to_json(const Dendrogram& dendrogram);
Dendrogram dendrogram_from_json(const std::string& json_text);

} // namespace tonnetz
