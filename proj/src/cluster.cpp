#include "tonnetz/cluster.hpp"

#include "tonnetz/io.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace tonnetz {

namespace {

using io::format_number;

std::string newick_label(const std::string& label)
{
    if (!label.empty() && label.find_first_of(" \t\n()[]':;,") == std::string::npos)
        return label;
    std::string quoted = "'";
    for (char c : label) {
        if (c == '\'')
            quoted += '\'';
        quoted += c;
    }
    return quoted + "'";
}

nlohmann::json number_or_null(double x)
{
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

} // namespace

Linkage parse_linkage(std::string_view name)
{
    if (name == "single")
        return Linkage::single;
    if (name == "complete")
        return Linkage::complete;
    if (name == "average")
        return Linkage::average;
    throw std::invalid_argument("unknown linkage '" + std::string(name) + "'");
}

std::string_view to_string(Linkage linkage)
{
    switch (linkage) {
    case Linkage::single:
        return "single";
    case Linkage::complete:
        return "complete";
    case Linkage::average:
        return "average";
    }
    return "average";
}

void Dendrogram::validate() const
{
    const std::size_t n = labels.size();
    if (n == 0 ? !merges.empty() : merges.size() != n - 1)
        throw std::invalid_argument("dendrogram over " + std::to_string(n) + " leaves needs " +
                                    std::to_string(n == 0 ? 0 : n - 1) + " merges");
    std::vector<std::size_t> size(n, 1);
    std::vector<bool> used(n + merges.size(), false);
    for (std::size_t k = 0; k < merges.size(); ++k) {
        const auto& m = merges[k];
        const std::size_t available = n + k;
        if (m.first >= available || m.second >= available || m.first == m.second)
            throw std::invalid_argument("merge " + std::to_string(k) + " references an unknown cluster");
        if (used[m.first] || used[m.second])
            throw std::invalid_argument("merge " + std::to_string(k) + " reuses a merged cluster");
        if (!(m.height >= 0.0))
            throw std::invalid_argument("merge " + std::to_string(k) + " has a negative height");
        if (m.size != size[m.first] + size[m.second])
            throw std::invalid_argument("merge " + std::to_string(k) + " has an inconsistent size");
        used[m.first] = used[m.second] = true;
        size.push_back(m.size);
    }
}

Dendrogram hierarchical_cluster(const DistanceMatrix& matrix, std::vector<std::string> labels, Linkage linkage)
{
    const std::size_t n = matrix.size();
    if (labels.size() != n)
        throw std::invalid_argument("label count does not match the matrix size");
    for (std::size_t i = 0; i < n; ++i) {
        if (matrix(i, i) != 0.0)
            throw std::invalid_argument("distance matrix has a nonzero diagonal entry");
        for (std::size_t j = 0; j < n; ++j) {
            const double d = matrix(i, j);
            if (std::isnan(d) || d < 0.0)
                throw std::invalid_argument("distance matrix has a negative or NaN entry");
            if (d != matrix(j, i))
                throw std::invalid_argument("distance matrix is not symmetric");
        }
    }

    Dendrogram tree;
    tree.labels = std::move(labels);
    DistanceMatrix d = matrix;
    std::vector<std::size_t> cluster(n), size(n, 1);
    std::vector<bool> active(n, true);
    for (std::size_t i = 0; i < n; ++i)
        cluster[i] = i;

    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t bi = 0, bj = 0;
        double best = std::numeric_limits<double>::infinity();
        bool found = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i])
                continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (active[j] && (!found || d(i, j) < best)) {
                    best = d(i, j);
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        }

        const double ni = static_cast<double>(size[bi]), nj = static_cast<double>(size[bj]);
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == bi || k == bj)
                continue;
            double updated = 0.0;
            switch (linkage) {
            case Linkage::single:
                updated = std::min(d(bi, k), d(bj, k));
                break;
            case Linkage::complete:
                updated = std::max(d(bi, k), d(bj, k));
                break;
            case Linkage::average:
                updated = (ni * d(bi, k) + nj * d(bj, k)) / (ni + nj);
                break;
            }
            d(bi, k) = d(k, bi) = updated;
        }

        tree.merges.push_back({cluster[bi], cluster[bj], best, size[bi] + size[bj]});
        cluster[bi] = n + step;
        size[bi] += size[bj];
        active[bj] = false;
    }
    return tree;
}

double cophenetic_height(const Dendrogram& dendrogram, std::size_t a, std::size_t b)
{
    const std::size_t n = dendrogram.leaf_count();
    if (a >= n || b >= n)
        throw std::out_of_range("leaf index out of range");
    if (a == b)
        return 0.0;
    std::vector<std::size_t> owner(n);
    for (std::size_t i = 0; i < n; ++i)
        owner[i] = i;
    // owner[] maps each leaf to its current cluster id
    for (std::size_t k = 0; k < dendrogram.merges.size(); ++k) {
        const auto& m = dendrogram.merges[k];
        for (auto& o : owner)
            if (o == m.first || o == m.second)
                o = n + k;
        if (owner[a] == owner[b])
            return m.height;
    }
    return std::numeric_limits<double>::infinity();
}

std::string to_newick(const Dendrogram& dendrogram)
{
    dendrogram.validate();
    const std::size_t n = dendrogram.leaf_count();
    if (n == 0)
        return ";";

    auto height_of = [&](std::size_t c) { return c < n ? 0.0 : dendrogram.merges[c - n].height; };
    std::function<std::string(std::size_t)> render = [&](std::size_t c) -> std::string {
        if (c < n)
            return newick_label(dendrogram.labels[c]);
        const auto& m = dendrogram.merges[c - n];
        return "(" + render(m.first) + ":" + format_number(m.height - height_of(m.first)) + "," + render(m.second) +
               ":" + format_number(m.height - height_of(m.second)) + ")";
    };
    const std::size_t root = dendrogram.merges.empty() ? 0 : n + dendrogram.merges.size() - 1;
    return render(root) + ";";
}

std::string to_json(const Dendrogram& dendrogram)
{
    nlohmann::json doc;
    doc["labels"] = dendrogram.labels;
    doc["merges"] = nlohmann::json::array();
    for (const auto& m : dendrogram.merges)
        doc["merges"].push_back({m.first, m.second, number_or_null(m.height), m.size});
    return doc.dump();
}

Dendrogram dendrogram_from_json(const std::string& json_text)
{
    const auto doc = nlohmann::json::parse(json_text);
    Dendrogram d;
    d.labels = doc.at("labels").get<std::vector<std::string>>();
    for (const auto& item : doc.at("merges")) {
        if (!item.is_array() || item.size() != 4)
            throw std::invalid_argument("merge entries must be [a, b, height, size]");
        const double height = item[2].is_null() ? std::numeric_limits<double>::infinity() : item[2].get<double>();
        d.merges.push_back({item[0].get<std::size_t>(), item[1].get<std::size_t>(), height, item[3].get<std::size_t>()});
    }
    d.validate();
    return d;
}

} // namespace tonnetz
