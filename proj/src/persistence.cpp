#include "tonnetz/persistence.hpp"

#include "tonnetz/union_find.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace tonnetz {

namespace {

struct VectorHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept
    {
        std::size_t h = v.size();
        for (int x : v)
            h = h * 1000003u ^ static_cast<std::size_t>(x);
        return h;
    }
};

using Column = std::vector<std::size_t>; // sorted row positions, nonzero entries over F2

void add_columns(Column& target, const Column& source)
{
    Column sum;
    sum.reserve(target.size() + source.size());
    std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                  std::back_inserter(sum));
    target = std::move(sum);
}

/// Boundary columns indexed by filtration position, validating face order.
std::vector<Column> boundary_matrix(const Filtration& filtration)
{
    std::unordered_map<std::vector<int>, std::size_t, VectorHash> position;
    position.reserve(filtration.size());
    std::vector<Column> columns(filtration.size());

    for (std::size_t j = 0; j < filtration.size(); ++j) {
        const auto& entry = filtration.entries[j];
        std::vector<int> key = entry.vertices;
        std::sort(key.begin(), key.end());
        if (key.size() != static_cast<std::size_t>(entry.dimension) + 1)
            throw std::invalid_argument("simplex " + std::to_string(entry.simplex) +
                                        " has a vertex count inconsistent with its dimension");
        if (j > 0 && entry.value < filtration.entries[j - 1].value)
            throw std::invalid_argument("filtration values decrease at position " + std::to_string(j));

        if (entry.dimension > 0) {
            for (std::size_t drop = 0; drop < key.size(); ++drop) {
                std::vector<int> face;
                face.reserve(key.size() - 1);
                for (std::size_t i = 0; i < key.size(); ++i)
                    if (i != drop)
                        face.push_back(key[i]);
                auto it = position.find(face);
                if (it == position.end())
                    throw std::invalid_argument("face of simplex " + std::to_string(entry.simplex) +
                                                " does not precede it in the filtration");
                columns[j].push_back(it->second);
            }
            std::sort(columns[j].begin(), columns[j].end());
        }
        if (!position.emplace(std::move(key), j).second)
            throw std::invalid_argument("simplex " + std::to_string(entry.simplex) + " appears twice");
    }
    return columns;
}

} // namespace

void PersistenceDiagram::sort()
{
    std::sort(proper.begin(), proper.end());
    std::sort(essential.begin(), essential.end());
}

std::size_t PersistenceDiagram::betti_at(double t) const
{
    std::size_t n = 0;
    for (const auto& p : proper)
        if (p.birth <= t && t < p.death)
            ++n;
    for (double b : essential)
        if (b <= t)
            ++n;
    return n;
}

DiagramSet compute_persistence(const Filtration& filtration, const std::set<int>& degrees)
{
    std::vector<Column> columns = boundary_matrix(filtration);
    const std::size_t n = columns.size();

    // pivot_of[row] = column whose lowest one sits in that row
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pivot_of(n, none);

    for (std::size_t j = 0; j < n; ++j) {
        Column& col = columns[j];
        while (!col.empty() && pivot_of[col.back()] != none)
            add_columns(col, columns[pivot_of[col.back()]]);
        if (!col.empty())
            pivot_of[col.back()] = j;
    }

    DiagramSet out;
    for (int k : degrees)
        out[k].degree = k;

    for (std::size_t j = 0; j < n; ++j) {
        const auto& entry = filtration.entries[j];
        const int k = entry.dimension;
        auto it = out.find(k);
        if (it == out.end())
            continue;
        if (!columns[j].empty())
            continue; // j kills a class of degree k - 1
        if (pivot_of[j] != none) {
            const double death = filtration.entries[pivot_of[j]].value;
            if (entry.value < death)
                it->second.proper.push_back({entry.value, death});
        } else {
            it->second.essential.push_back(entry.value);
        }
    }
    for (auto& [k, d] : out)
        d.sort();
    return out;
}

PersistenceDiagram h0_oracle(const Filtration& filtration)
{
    PersistenceDiagram d;
    d.degree = 0;

    std::unordered_map<int, std::size_t> slot; // vertex label -> union-find slot
    std::vector<double> birth;
    std::vector<std::size_t> order; // insertion order, tie-breaks equal births
    UnionFind uf(filtration.size());

    for (const auto& entry : filtration.entries) {
        if (entry.dimension == 0) {
            if (entry.vertices.size() != 1)
                throw std::invalid_argument("vertex entry must carry exactly one vertex");
            if (!slot.emplace(entry.vertices[0], birth.size()).second)
                throw std::invalid_argument("vertex " + std::to_string(entry.vertices[0]) + " appears twice");
            order.push_back(birth.size());
            birth.push_back(entry.value);
        } else if (entry.dimension == 1) {
            auto a = slot.find(entry.vertices.at(0));
            auto b = slot.find(entry.vertices.at(1));
            if (a == slot.end() || b == slot.end())
                throw std::invalid_argument("face of simplex " + std::to_string(entry.simplex) +
                                            " does not precede it in the filtration");
            std::size_t ra = uf.find(a->second);
            std::size_t rb = uf.find(b->second);
            if (ra == rb)
                continue;
            // Elder rule: the component born later (or inserted later) dies.
            auto elder = [&](std::size_t x, std::size_t y) {
                return birth[x] != birth[y] ? birth[x] < birth[y] : order[x] < order[y];
            };
            if (!elder(ra, rb))
                std::swap(ra, rb);
            if (birth[rb] < entry.value)
                d.proper.push_back({birth[rb], entry.value});
            uf.link(ra, rb);
        }
    }
    for (std::size_t i = 0; i < birth.size(); ++i)
        if (uf.find(i) == i)
            d.essential.push_back(birth[i]);
    d.sort();
    return d;
}

DiagramFeatures diagram_features(const PersistenceDiagram& diagram)
{
    DiagramFeatures f;
    f.essential_births = diagram.essential;
    std::sort(f.essential_births.begin(), f.essential_births.end());
    f.proper_count = diagram.proper.size();
    for (const auto& p : diagram.proper)
        f.max_persistence = std::max(f.max_persistence, p.persistence());
    if (diagram.degree == 1 && f.essential_births.size() == 2)
        f.essential_gap = std::abs(f.essential_births[1] - f.essential_births[0]);
    return f;
}

DiagramSet profile_diagrams(const PitchClassProfile& profile, const std::set<int>& degrees)
{
    return compute_persistence(deform(build_tonnetz(), profile), degrees);
}

} // namespace tonnetz
