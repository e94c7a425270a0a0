#include "tonnetz/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tonnetz::io {

namespace {

double number(const json& j)
{
    if (j.is_null())
        return std::numeric_limits<double>::infinity();
    if (!j.is_number())
        throw std::invalid_argument("expected a number, got " + std::string(j.type_name()));
    return j.get<double>();
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

} // namespace

json to_json(const LabeledProfile& p)
{
    return {{"label", p.label}, {"normalized", p.normalized}, {"durations", p.profile.durations}};
}

LabeledProfile profile_from_json(const json& doc)
{
    LabeledProfile p;
    p.label = doc.at("label").get<std::string>();
    p.normalized = doc.at("normalized").get<bool>();
    const auto& d = doc.at("durations");
    if (!d.is_array() || d.size() != p.profile.durations.size())
        throw std::invalid_argument("profile durations must hold 12 numbers");
    for (std::size_t i = 0; i < d.size(); ++i)
        p.profile.durations[i] = number(d[i]);
    p.profile.validate();
    return p;
}

json to_json(const LabeledDiagram& d)
{
    PersistenceDiagram sorted = d.diagram;
    sorted.sort();
    json proper = json::array();
    for (const auto& p : sorted.proper)
        proper.push_back({p.birth, p.death});
    return {{"degree", sorted.degree},
            {"essential", sorted.essential},
            {"proper", std::move(proper)},
            {"profile_ref", d.profile_ref}};
}

LabeledDiagram diagram_from_json(const json& doc)
{
    LabeledDiagram d;
    d.diagram.degree = doc.at("degree").get<int>();
    d.profile_ref = doc.contains("profile_ref") ? doc.at("profile_ref").get<std::string>() : std::string();
    for (const auto& u : doc.at("essential"))
        d.diagram.essential.push_back(number(u));
    for (const auto& p : doc.at("proper")) {
        if (!p.is_array() || p.size() != 2)
            throw std::invalid_argument("proper points must be [birth, death] pairs");
        const double birth = number(p[0]), death = number(p[1]);
        if (!(birth < death) || !std::isfinite(death))
            throw std::invalid_argument("proper point must satisfy birth < death < inf");
        d.diagram.proper.push_back({birth, death});
    }
    d.diagram.sort();
    return d;
}

json to_json(const LabeledMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.matrix.size(); ++i) {
        json row = json::array();
        for (double x : m.matrix.row(i))
            row.push_back(number_or_null(x));
        rows.push_back(std::move(row));
    }
    return {{"labels", m.labels}, {"degree", m.degree}, {"matrix", std::move(rows)}};
}

LabeledMatrix matrix_from_json(const json& doc)
{
    LabeledMatrix m;
    m.labels = doc.at("labels").get<std::vector<std::string>>();
    m.degree = doc.at("degree").get<int>();
    const auto& rows = doc.at("matrix");
    const std::size_t n = m.labels.size();
    if (!rows.is_array() || rows.size() != n)
        throw std::invalid_argument("matrix must have one row per label");
    m.matrix = DistanceMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n)
            throw std::invalid_argument("matrix row " + std::to_string(i) + " has the wrong length");
        for (std::size_t j = 0; j < n; ++j)
            m.matrix(i, j) = number(rows[i][j]);
    }
    return m;
}

std::string format_number(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

} // namespace tonnetz::io
