#include "tonnetz/tonnetz.hpp"

#include "tonnetz/union_find.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace tonnetz {

namespace {

SimplicialComplex make_tonnetz()
{
    SimplicialComplex c;
    for (int v = 0; v < kPitchClassCount; ++v)
        c.vertices.push_back(v);

    for (int a = 0; a < kPitchClassCount; ++a)
        for (int b = a + 1; b < kPitchClassCount; ++b)
            if (is_tonnetz_edge(PitchClass(a), PitchClass(b)))
                c.edges.push_back({a, b});

    // Triads: the three interval classes are exactly {3, 4, 5}. The
    // augmented triads {0, 4, 8} are 3-cliques of the edge graph but not
    // triangles.
    for (int a = 0; a < kPitchClassCount; ++a)
        for (int b = a + 1; b < kPitchClassCount; ++b)
            for (int d = b + 1; d < kPitchClassCount; ++d) {
                std::array<int, 3> ics{interval_class(PitchClass(a), PitchClass(b)),
                                       interval_class(PitchClass(b), PitchClass(d)),
                                       interval_class(PitchClass(a), PitchClass(d))};
                std::sort(ics.begin(), ics.end());
                if (ics == std::array<int, 3>{3, 4, 5})
                    c.triangles.push_back({a, b, d});
            }
    return c;
}

template <std::size_t N>
bool all_in(const std::array<int, N>& simplex, const PitchClassSet& pcs)
{
    return std::all_of(simplex.begin(), simplex.end(),
                       [&](int v) { return pcs.test(static_cast<std::size_t>(PitchClass(v).value())); });
}

} // namespace

const SimplicialComplex& build_tonnetz()
{
    static const SimplicialComplex complex = make_tonnetz();
    return complex;
}

SimplicialComplex induced_subcomplex(const SimplicialComplex& complex, const PitchClassSet& pcs)
{
    SimplicialComplex sub;
    for (int v : complex.vertices)
        if (pcs.test(static_cast<std::size_t>(PitchClass(v).value())))
            sub.vertices.push_back(v);
    for (const auto& e : complex.edges)
        if (all_in(e, pcs))
            sub.edges.push_back(e);
    for (const auto& t : complex.triangles)
        if (all_in(t, pcs))
            sub.triangles.push_back(t);
    return sub;
}

std::size_t connected_components(const SimplicialComplex& complex)
{
    std::map<int, std::size_t> slot;
    for (int v : complex.vertices)
        slot.emplace(v, slot.size());
    UnionFind uf(slot.size());
    std::size_t components = slot.size();
    for (const auto& [a, b] : complex.edges)
        if (uf.unite(slot.at(a), slot.at(b)))
            --components;
    return components;
}

SimplicialComplex transpose_complex(const SimplicialComplex& complex, int k)
{
    auto shift = [k](int v) { return PitchClass(v + k).value(); };
    SimplicialComplex out;
    for (int v : complex.vertices)
        out.vertices.push_back(shift(v));
    for (auto e : complex.edges) {
        for (int& v : e)
            v = shift(v);
        std::sort(e.begin(), e.end());
        out.edges.push_back(e);
    }
    for (auto t : complex.triangles) {
        for (int& v : t)
            v = shift(v);
        std::sort(t.begin(), t.end());
        out.triangles.push_back(t);
    }
    std::sort(out.vertices.begin(), out.vertices.end());
    std::sort(out.edges.begin(), out.edges.end());
    std::sort(out.triangles.begin(), out.triangles.end());
    return out;
}

double PitchClassProfile::total() const
{
    double sum = 0.0;
    for (double d : durations)
        sum += d;
    return sum;
}

PitchClassProfile PitchClassProfile::rotated(int k) const
{
    PitchClassProfile out;
    for (int v = 0; v < kPitchClassCount; ++v)
        out[PitchClass(v + k)] = (*this)[PitchClass(v)];
    return out;
}

PitchClassProfile PitchClassProfile::normalized() const
{
    const double sum = total();
    if (sum <= 0.0)
        return *this;
    PitchClassProfile out;
    for (std::size_t i = 0; i < durations.size(); ++i)
        out.durations[i] = durations[i] / sum;
    return out;
}

void PitchClassProfile::validate() const
{
    for (std::size_t i = 0; i < durations.size(); ++i) {
        const double d = durations[i];
        if (!std::isfinite(d) || d < 0.0)
            throw std::invalid_argument("profile entry for pitch class " + std::to_string(i) +
                                        " must be finite and nonnegative");
    }
}

Filtration lower_star_filtration(const SimplicialComplex& complex, std::span<const double> heights)
{
    auto height = [&](int v) {
        if (v < 0 || static_cast<std::size_t>(v) >= heights.size())
            throw std::invalid_argument("no height for vertex " + std::to_string(v));
        return heights[static_cast<std::size_t>(v)];
    };

    Filtration f;
    f.entries.reserve(complex.simplex_count());
    std::size_t index = 0;
    for (int v : complex.vertices)
        f.entries.push_back({index++, 0, height(v), {v}});
    for (const auto& [a, b] : complex.edges)
        f.entries.push_back({index++, 1, std::max(height(a), height(b)), {a, b}});
    for (const auto& [a, b, c] : complex.triangles)
        f.entries.push_back({index++, 2, std::max({height(a), height(b), height(c)}), {a, b, c}});

    // Value ties: lower dimension first, which keeps faces ahead of cofaces
    // since a face never exceeds its coface's value.
    std::sort(f.entries.begin(), f.entries.end(), [](const FiltrationEntry& x, const FiltrationEntry& y) {
        if (x.value != y.value)
            return x.value < y.value;
        if (x.dimension != y.dimension)
            return x.dimension < y.dimension;
        return x.simplex < y.simplex;
    });
    return f;
}

Filtration deform(const SimplicialComplex& complex, const PitchClassProfile& profile)
{
    profile.validate();
    return lower_star_filtration(complex, profile.durations);
}

} // namespace tonnetz
