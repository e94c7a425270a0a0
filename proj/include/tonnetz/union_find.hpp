#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace tonnetz {

/// Disjoint sets over 0..n-1 with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1)
    {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    /// Attaches the root of `child` under the root of `keep`. Returns false
    /// if they were already joined.
    bool link(std::size_t keep, std::size_t child)
    {
        keep = find(keep);
        child = find(child);
        if (keep == child)
            return false;
        parent_[child] = keep;
        size_[keep] += size_[child];
        return true;
    }

    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (size_[a] < size_[b])
            std::swap(a, b);
        return link(a, b);
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

} // namespace tonnetz
