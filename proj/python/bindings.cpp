#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tonnetz/bottleneck.hpp"
#include "tonnetz/cluster.hpp"
#include "tonnetz/ingest.hpp"
#include "tonnetz/midi.hpp"
#include "tonnetz/persistence.hpp"
#include "tonnetz/tonnetz.hpp"
#include "tonnetz/version.hpp"

#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

using Profile = std::array<double, tonnetz::kPitchClassCount>;

tonnetz::PitchClassProfile to_profile(const Profile& durations)
{
    tonnetz::PitchClassProfile p;
    p.durations = durations;
    return p;
}

tonnetz::PitchClassSet to_set(const std::vector<int>& pcs)
{
    tonnetz::PitchClassSet s;
    for (int v : pcs)
        s.set(static_cast<std::size_t>(tonnetz::PitchClass(v).value()));
    return s;
}

py::dict complex_dict(const tonnetz::SimplicialComplex& c)
{
    return py::dict("vertices"_a = c.vertices, "edges"_a = c.edges, "triangles"_a = c.triangles);
}

tonnetz::DistanceMatrix to_matrix(const std::vector<std::vector<double>>& rows)
{
    tonnetz::DistanceMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw py::value_error("distance matrix must be square");
        for (std::size_t j = 0; j < rows.size(); ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Persistent homology fingerprints of music on the Tonnetz torus";
    m.attr("__version__") = tonnetz::kVersion;

    py::register_exception<tonnetz::MidiError>(m, "MidiError", PyExc_ValueError);

    py::class_<tonnetz::ProperPoint>(m, "ProperPoint")
        .def(py::init<>())
        .def(py::init([](double b, double d) { return tonnetz::ProperPoint{b, d}; }), "birth"_a, "death"_a)
        .def_readwrite("birth", &tonnetz::ProperPoint::birth)
        .def_readwrite("death", &tonnetz::ProperPoint::death)
        .def("__eq__", [](const tonnetz::ProperPoint& a, const tonnetz::ProperPoint& b) { return a == b; })
        .def("__repr__", [](const tonnetz::ProperPoint& p) {
            return "ProperPoint(" + std::to_string(p.birth) + ", " + std::to_string(p.death) + ")";
        });

    py::class_<tonnetz::PersistenceDiagram>(m, "PersistenceDiagram")
        .def(py::init<>())
        .def(py::init([](int degree, const std::vector<std::pair<double, double>>& proper,
                         std::vector<double> essential) {
                 tonnetz::PersistenceDiagram d;
                 d.degree = degree;
                 for (auto [b, death] : proper)
                     d.proper.push_back({b, death});
                 d.essential = std::move(essential);
                 d.sort();
                 return d;
             }),
             "degree"_a, "proper"_a = std::vector<std::pair<double, double>>{},
             "essential"_a = std::vector<double>{})
        .def_readwrite("degree", &tonnetz::PersistenceDiagram::degree)
        .def_readwrite("proper", &tonnetz::PersistenceDiagram::proper)
        .def_readwrite("essential", &tonnetz::PersistenceDiagram::essential)
        .def("betti_at", &tonnetz::PersistenceDiagram::betti_at, "t"_a)
        .def("__eq__", [](const tonnetz::PersistenceDiagram& a, const tonnetz::PersistenceDiagram& b) { return a == b; });

    py::class_<tonnetz::DiagramFeatures>(m, "DiagramFeatures")
        .def_readonly("essential_births", &tonnetz::DiagramFeatures::essential_births)
        .def_readonly("proper_count", &tonnetz::DiagramFeatures::proper_count)
        .def_readonly("max_persistence", &tonnetz::DiagramFeatures::max_persistence)
        .def_readonly("essential_gap", &tonnetz::DiagramFeatures::essential_gap);

    py::class_<tonnetz::Note>(m, "Note")
        .def(py::init([](double pitch, double onset, double duration) {
                 tonnetz::Note n{pitch, onset, duration};
                 tonnetz::validate(n);
                 return n;
             }),
             "pitch"_a, "onset"_a, "duration"_a)
        .def_readwrite("pitch", &tonnetz::Note::pitch)
        .def_readwrite("onset", &tonnetz::Note::onset)
        .def_readwrite("duration", &tonnetz::Note::duration)
        .def("__eq__", [](const tonnetz::Note& a, const tonnetz::Note& b) { return a == b; })
        .def("__repr__", [](const tonnetz::Note& n) {
            return "Note(pitch=" + std::to_string(n.pitch) + ", onset=" + std::to_string(n.onset) +
                   ", duration=" + std::to_string(n.duration) + ")";
        });

    py::class_<tonnetz::Merge>(m, "Merge")
        .def_readonly("first", &tonnetz::Merge::first)
        .def_readonly("second", &tonnetz::Merge::second)
        .def_readonly("height", &tonnetz::Merge::height)
        .def_readonly("size", &tonnetz::Merge::size);

    py::class_<tonnetz::Dendrogram>(m, "Dendrogram")
        .def_readonly("labels", &tonnetz::Dendrogram::labels)
        .def_readonly("merges", &tonnetz::Dendrogram::merges)
        .def("to_newick", [](const tonnetz::Dendrogram& d) { return tonnetz::to_newick(d); })
        .def("to_json", [](const tonnetz::Dendrogram& d) { return tonnetz::to_json(d); })
        .def_static("from_json", &tonnetz::dendrogram_from_json, "text"_a)
        .def("cophenetic_height", &tonnetz::cophenetic_height, "a"_a, "b"_a);

    // tonnetz
    m.def("build_tonnetz", [] { return complex_dict(tonnetz::build_tonnetz()); });
    m.def(
        "induced_subcomplex",
        [](const std::vector<int>& pcs) {
            return complex_dict(tonnetz::induced_subcomplex(tonnetz::build_tonnetz(), to_set(pcs)));
        },
        "pitch_classes"_a);
    m.def(
        "connected_components",
        [](const std::vector<int>& pcs) {
            return tonnetz::connected_components(tonnetz::induced_subcomplex(tonnetz::build_tonnetz(), to_set(pcs)));
        },
        "pitch_classes"_a);
    m.def(
        "deform",
        [](const Profile& profile) {
            py::list out;
            for (const auto& e : tonnetz::deform(tonnetz::build_tonnetz(), to_profile(profile)).entries)
                out.append(py::make_tuple(e.simplex, e.dimension, e.value, e.vertices));
            return out;
        },
        "profile"_a, "Lower-star filtration entries (simplex, dimension, value, vertices) in order.");

    // persistence
    m.def(
        "diagrams",
        [](const Profile& profile, const std::set<int>& degrees) {
            return tonnetz::profile_diagrams(to_profile(profile), degrees);
        },
        "profile"_a, "degrees"_a = std::set<int>{0, 1, 2});
    m.def(
        "h0_oracle",
        [](const Profile& profile) {
            return tonnetz::h0_oracle(tonnetz::deform(tonnetz::build_tonnetz(), to_profile(profile)));
        },
        "profile"_a);
    m.def("diagram_features", &tonnetz::diagram_features, "diagram"_a);

    // bottleneck
    m.def(
        "point_distance",
        [](std::pair<double, double> p, std::pair<double, double> q) {
            return tonnetz::point_distance({p.first, p.second}, {q.first, q.second});
        },
        "p"_a, "q"_a);
    m.def("bottleneck_distance", &tonnetz::bottleneck_distance, "a"_a, "b"_a);
    m.def(
        "distance_matrix",
        [](const std::vector<tonnetz::PersistenceDiagram>& diagrams, unsigned threads) {
            const tonnetz::DistanceMatrix dm = [&] {
                py::gil_scoped_release release;
                return tonnetz::distance_matrix(diagrams, threads);
            }();
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < dm.size(); ++i)
                rows.emplace_back(dm.row(i).begin(), dm.row(i).end());
            return rows;
        },
        "diagrams"_a, "threads"_a = 0u);

    // cluster
    m.def(
        "hierarchical_cluster",
        [](const std::vector<std::vector<double>>& matrix, std::vector<std::string> labels,
           const std::string& linkage) {
            return tonnetz::hierarchical_cluster(to_matrix(matrix), std::move(labels), tonnetz::parse_linkage(linkage));
        },
        "matrix"_a, "labels"_a, "linkage"_a = "average");

    // ingest
    m.def("freq_to_pitch", &tonnetz::freq_to_pitch, "hz"_a);
    m.def("pitch_class", [](double p) { return tonnetz::pitch_class(p).value(); }, "pitch"_a);
    m.def(
        "profile",
        [](const std::vector<tonnetz::Note>& notes, std::optional<std::pair<double, double>> window) {
            std::optional<tonnetz::TimeWindow> w;
            if (window)
                w = tonnetz::TimeWindow{window->first, window->second};
            return tonnetz::profile(notes, w).durations;
        },
        "notes"_a, "window"_a = py::none());
    m.def(
        "transpose", [](const std::vector<tonnetz::Note>& notes, int k) { return tonnetz::transpose(notes, k); },
        "notes"_a, "k"_a);
    m.def(
        "randomize",
        [](const std::vector<tonnetz::Note>& notes, std::uint64_t seed) { return tonnetz::randomize(notes, seed); },
        "notes"_a, "seed"_a);
    m.def(
        "segment",
        [](const std::vector<tonnetz::Note>& notes, double t0, double t1) { return tonnetz::segment(notes, t0, t1); },
        "notes"_a, "t0"_a, "t1"_a);
    m.def(
        "parse_midi",
        [](const py::bytes& data, bool include_percussion) {
            const std::string bytes = data;
            const auto* ptr = reinterpret_cast<const std::uint8_t*>(bytes.data());
            tonnetz::MidiFile f = tonnetz::parse_midi({ptr, bytes.size()}, {include_percussion});
            return py::dict("format"_a = f.format, "track_count"_a = f.track_count, "notes"_a = f.notes,
                            "warnings"_a = f.warnings);
        },
        "data"_a, "include_percussion"_a = false);
}
