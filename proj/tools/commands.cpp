#include "commands.hpp"

#include "manifest.hpp"

#include "tonnetz/cluster.hpp"
#include "tonnetz/io.hpp"
#include "tonnetz/midi.hpp"
#include "tonnetz/parallel.hpp"
#include "tonnetz/persistence.hpp"
#include "tonnetz/svg.hpp"
#include "tonnetz/version.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tonnetz::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

unsigned thread_limit()
{
    const char* env = std::getenv("TONNETZ_THREADS");
    if (!env || !*env)
        return 0;
    char* end = nullptr;
    const unsigned long n = std::strtoul(env, &end, 10);
    return (*end == '\0' && n > 0) ? static_cast<unsigned>(std::min(n, 1024ul)) : 0;
}

std::string read_input(const std::string& path)
{
    try {
        return read_file(path);
    } catch (const std::ios_base::failure& e) {
        throw IoError(e.what());
    }
}

void write_output(const std::string& path, const std::string& contents, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << contents;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    file << contents;
    if (!file)
        throw IoError("cannot write " + path);
}

std::string lowercase_extension(const std::string& path)
{
    std::string ext = fs::path(path).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

struct LoadedNotes {
    std::vector<Note> notes;
    std::vector<std::string> warnings;
};

LoadedNotes load_notes(const std::string& path, const std::string& contents, bool include_percussion)
{
    const std::string ext = lowercase_extension(path);
    const bool looks_midi = contents.rfind("MThd", 0) == 0;
    if (ext == ".mid" || ext == ".midi" || ext == ".smf" || (ext != ".json" && looks_midi)) {
        const auto* data = reinterpret_cast<const std::uint8_t*>(contents.data());
        MidiFile midi = parse_midi({data, contents.size()}, {include_percussion});
        return {std::move(midi.notes), std::move(midi.warnings)};
    }
    return {parse_note_list(contents), {}};
}

json document_with_manifest(const RunManifest& manifest, json body)
{
    body["manifest"] = manifest.to_json();
    return body;
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeOptions {
    std::vector<std::string> inputs;
    std::string out_dir = ".";
    std::vector<int> degrees{0, 1};
    std::optional<double> window;
    std::optional<double> hop;
    bool normalize = false;
    bool strict = false;
    bool include_percussion = false;
};

struct OutputFile {
    std::string name;
    std::string contents;
};

struct PieceResult {
    std::vector<OutputFile> files;
    std::vector<std::string> diagnostics;
    bool failed = false;
};

json analysis_document(const std::string& label, const PitchClassProfile& raw, const AnalyzeOptions& opt)
{
    const PitchClassProfile p = opt.normalize ? raw.normalized() : raw;
    const std::set<int> degrees(opt.degrees.begin(), opt.degrees.end());
    const DiagramSet diagrams = profile_diagrams(p, degrees);
    json list = json::array();
    for (const auto& [k, d] : diagrams)
        list.push_back(io::to_json(io::LabeledDiagram{label, d}));
    return {{"profile", io::to_json(io::LabeledProfile{label, opt.normalize, p})}, {"diagrams", std::move(list)}};
}

PieceResult analyze_piece(const std::string& path, const AnalyzeOptions& opt)
{
    PieceResult result;
    try {
        const std::string contents = read_input(path);
        LoadedNotes loaded = load_notes(path, contents, opt.include_percussion);
        for (const auto& w : loaded.warnings)
            result.diagnostics.push_back(path + ": warning: " + w);

        RunManifest manifest;
        manifest.command = "analyze";
        manifest.inputs = {record_input(path, contents)};
        manifest.normalized = opt.normalize;
        manifest.degrees = opt.degrees;
        manifest.parameters = {{"window", opt.window ? json(*opt.window) : json(nullptr)},
                               {"hop", opt.hop ? json(*opt.hop) : json(nullptr)},
                               {"include_percussion", opt.include_percussion}};

        const std::string label = fs::path(path).stem().string();
        if (!opt.window) {
            const json doc = analysis_document(label, profile(loaded.notes), opt);
            result.files.push_back({label + ".json", io::dump(document_with_manifest(manifest, doc))});
            return result;
        }

        const double span = total_span(loaded.notes);
        if (span <= 0.0)
            result.diagnostics.push_back(path + ": warning: no notes, no windows produced");
        for (std::size_t i = 0;; ++i) {
            const double t0 = static_cast<double>(i) * *opt.hop;
            if (!(t0 < span))
                break;
            const double t1 = t0 + *opt.window;
            const std::string window_label = label + "@" + io::format_number(t0) + "-" + io::format_number(t1);
            const json doc = analysis_document(window_label, profile(loaded.notes, TimeWindow{t0, t1}), opt);
            result.files.push_back({window_label + ".json", io::dump(document_with_manifest(manifest, doc))});
        }
    } catch (const std::exception& e) {
        result.failed = true;
        result.files.clear();
        result.diagnostics.push_back(path + ": error: " + e.what());
    }
    return result;
}

int cmd_analyze(const AnalyzeOptions& opt, std::ostream& err)
{
    if (opt.hop && !opt.window)
        throw UsageError("--hop requires --window");
    if (opt.window && !(*opt.window > 0.0))
        throw UsageError("--window must be positive");
    if (opt.hop && !(*opt.hop > 0.0))
        throw UsageError("--hop must be positive");
    AnalyzeOptions o = opt;
    if (o.window && !o.hop)
        o.hop = o.window;
    std::sort(o.degrees.begin(), o.degrees.end());
    o.degrees.erase(std::unique(o.degrees.begin(), o.degrees.end()), o.degrees.end());

    std::set<std::string> labels;
    for (const auto& in : o.inputs)
        if (!labels.insert(fs::path(in).stem().string()).second)
            throw UsageError("two inputs share the label '" + fs::path(in).stem().string() + "'");

    std::vector<PieceResult> results(o.inputs.size());
    parallel_for(o.inputs.size(), thread_limit(), [&](std::size_t i) { results[i] = analyze_piece(o.inputs[i], o); });

    bool any_failed = false;
    for (const auto& r : results) {
        for (const auto& d : r.diagnostics)
            err << d << '\n';
        any_failed = any_failed || r.failed;
    }
    if (any_failed && o.strict) {
        err << "analyze: --strict set, no output written\n";
        return kFailure;
    }

    std::error_code ec;
    fs::create_directories(o.out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + o.out_dir + ": " + ec.message());
    for (const auto& r : results)
        for (const auto& f : r.files)
            write_output((fs::path(o.out_dir) / f.name).string(), f.contents, err);
    return any_failed ? kFailure : kSuccess;
}

// --- distance --------------------------------------------------------------

struct DistanceOptions {
    std::vector<std::string> inputs;
    int degree = 0;
    std::string output = "-";
};

io::LabeledDiagram diagram_of_degree(const json& doc, int degree, const std::string& path)
{
    io::LabeledDiagram found;
    if (doc.contains("diagrams")) {
        for (const auto& d : doc.at("diagrams"))
            if (d.at("degree").get<int>() == degree)
                return io::diagram_from_json(d);
    } else if (doc.contains("degree") && doc.at("degree").get<int>() == degree) {
        return io::diagram_from_json(doc);
    }
    throw std::invalid_argument(path + ": no diagram of degree " + std::to_string(degree));
}

int cmd_distance(const DistanceOptions& opt, std::ostream& out)
{
    if (opt.inputs.size() < 2)
        throw UsageError("distance needs at least two diagram files");

    RunManifest manifest;
    manifest.command = "distance";
    manifest.degrees = {opt.degree};

    std::vector<std::string> labels;
    std::vector<PersistenceDiagram> diagrams;
    for (const auto& path : opt.inputs) {
        const std::string contents = read_input(path);
        manifest.inputs.push_back(record_input(path, contents));
        io::LabeledDiagram d = diagram_of_degree(json::parse(contents), opt.degree, path);
        labels.push_back(d.profile_ref.empty() ? fs::path(path).stem().string() : d.profile_ref);
        diagrams.push_back(std::move(d.diagram));
    }

    const DistanceMatrix m = distance_matrix(diagrams, thread_limit());
    const json doc = io::to_json(io::LabeledMatrix{labels, opt.degree, m});
    write_output(opt.output, io::dump(document_with_manifest(manifest, doc)), out);
    return kSuccess;
}

// --- cluster ---------------------------------------------------------------

struct ClusterOptions {
    std::string input;
    std::string linkage = "average";
    std::string output = "-";
    std::string newick;
};

int cmd_cluster(const ClusterOptions& opt, std::ostream& out)
{
    const std::string contents = read_input(opt.input);
    const io::LabeledMatrix m = io::matrix_from_json(json::parse(contents));
    const Linkage linkage = parse_linkage(opt.linkage);
    const Dendrogram tree = hierarchical_cluster(m.matrix, m.labels, linkage);

    RunManifest manifest;
    manifest.command = "cluster";
    manifest.inputs = {record_input(opt.input, contents)};
    manifest.degrees = {m.degree};
    manifest.linkage = std::string(to_string(linkage));

    write_output(opt.output, io::dump(document_with_manifest(manifest, json::parse(to_json(tree)))), out);
    if (!opt.newick.empty())
        write_output(opt.newick, to_newick(tree) + "\n", out);
    return kSuccess;
}

// --- plot ------------------------------------------------------------------

struct PlotOptions {
    std::string input;
    std::string output = "-";
    std::optional<int> degree;
};

int cmd_plot(const PlotOptions& opt, std::ostream& out)
{
    const json doc = json::parse(read_input(opt.input));
    std::string svg;
    if (doc.contains("merges")) {
        svg = svg::render_dendrogram(dendrogram_from_json(doc.dump()));
    } else if (doc.contains("diagrams")) {
        const auto& list = doc.at("diagrams");
        if (list.empty())
            throw std::invalid_argument(opt.input + ": analysis holds no diagrams");
        const int degree = opt.degree.value_or(list.front().at("degree").get<int>());
        svg = svg::render_diagram(diagram_of_degree(doc, degree, opt.input));
    } else if (doc.contains("degree")) {
        if (opt.degree && *opt.degree != doc.at("degree").get<int>())
            throw std::invalid_argument(opt.input + ": no diagram of degree " + std::to_string(*opt.degree));
        svg = svg::render_diagram(io::diagram_from_json(doc));
    } else {
        throw std::invalid_argument(opt.input + ": neither a diagram nor a dendrogram document");
    }
    write_output(opt.output, svg, out);
    return kSuccess;
}

// --- transform -------------------------------------------------------------

struct TransformOptions {
    std::string input;
    std::string output = "-";
    std::optional<int> transpose;
    bool randomize = false;
    std::optional<std::uint64_t> seed;
    std::vector<double> segment;
    bool include_percussion = false;
};

int cmd_transform(const TransformOptions& opt, std::ostream& out, std::ostream& err)
{
    const int chosen = (opt.transpose ? 1 : 0) + (opt.randomize ? 1 : 0) + (opt.segment.empty() ? 0 : 1);
    if (chosen != 1)
        throw UsageError("choose exactly one of --transpose, --randomize, --segment");
    if (opt.randomize && !opt.seed)
        throw UsageError("--randomize requires --seed");
    if (!opt.segment.empty() && !(opt.segment[0] < opt.segment[1]))
        throw UsageError("--segment requires T0 < T1");

    const std::string contents = read_input(opt.input);
    LoadedNotes loaded = load_notes(opt.input, contents, opt.include_percussion);
    for (const auto& w : loaded.warnings)
        err << opt.input << ": warning: " << w << '\n';

    RunManifest manifest;
    manifest.command = "transform";
    manifest.inputs = {record_input(opt.input, contents)};
    std::vector<Note> notes;
    if (opt.transpose) {
        notes = transpose(loaded.notes, *opt.transpose);
        manifest.parameters = {{"transpose", *opt.transpose}};
    } else if (opt.randomize) {
        notes = randomize(loaded.notes, *opt.seed);
        manifest.seeds = {*opt.seed};
        manifest.parameters = {{"randomize", {{"pitch_min", kRandomPitchMin}, {"pitch_max", kRandomPitchMax}}}};
    } else {
        notes = segment(loaded.notes, opt.segment[0], opt.segment[1]);
        manifest.parameters = {{"segment", opt.segment}};
    }

    const json body = {{"notes", json::parse(dump_note_list(notes))}};
    write_output(opt.output, io::dump(document_with_manifest(manifest, body)), out);
    return kSuccess;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Topological fingerprints of symbolic music on the Tonnetz torus", "tonnetz"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    AnalyzeOptions analyze;
    auto* a = app.add_subcommand("analyze", "Persistence diagrams of MIDI or note-list files");
    a->add_option("inputs", analyze.inputs, "MIDI (.mid) or note-list (.json) files")->required();
    a->add_option("-o,--out-dir", analyze.out_dir, "Directory for the per-piece JSON files");
    a->add_option("--degrees", analyze.degrees, "Homology degrees to compute")
        ->delimiter(',')
        ->check(CLI::Range(0, 2));
    a->add_option("--window", analyze.window, "Window length in seconds");
    a->add_option("--hop", analyze.hop, "Window hop in seconds (defaults to --window)");
    a->add_flag("--normalize", analyze.normalize, "Divide profiles by their total duration");
    a->add_flag("--strict", analyze.strict, "Write nothing if any input fails");
    a->add_flag("--include-percussion", analyze.include_percussion, "Keep MIDI channel 10");

    DistanceOptions distance;
    auto* d = app.add_subcommand("distance", "Bottleneck distance matrix between diagrams");
    d->add_option("inputs", distance.inputs, "Analysis or diagram JSON files")->required();
    d->add_option("--degree", distance.degree, "Homology degree")->check(CLI::Range(0, 2));
    d->add_option("-o,--output", distance.output, "Output file ('-' for stdout)");

    ClusterOptions cluster;
    auto* c = app.add_subcommand("cluster", "Hierarchical clustering of a distance matrix");
    c->add_option("matrix", cluster.input, "Matrix JSON from `distance`")->required();
    c->add_option("--linkage", cluster.linkage, "single, complete or average")
        ->check(CLI::IsMember({"single", "complete", "average"}));
    c->add_option("-o,--output", cluster.output, "Dendrogram JSON output ('-' for stdout)");
    c->add_option("--newick", cluster.newick, "Also write the tree in Newick format");

    PlotOptions plot;
    auto* p = app.add_subcommand("plot", "Render a diagram or dendrogram as SVG");
    p->add_option("input", plot.input, "Analysis, diagram or dendrogram JSON")->required();
    p->add_option("-o,--output", plot.output, "SVG output ('-' for stdout)");
    p->add_option("--degree", plot.degree, "Diagram degree to plot from an analysis file");

    TransformOptions transform;
    auto* t = app.add_subcommand("transform", "Transpose, randomize or segment a piece");
    t->add_option("input", transform.input, "MIDI or note-list file")->required();
    t->add_option("-o,--output", transform.output, "Note-list JSON output ('-' for stdout)");
    t->add_option("--transpose", transform.transpose, "Semitones to add to every pitch");
    t->add_flag("--randomize", transform.randomize, "Replace pitches by seeded random piano keys");
    t->add_option("--seed", transform.seed, "Seed for --randomize");
    t->add_option("--segment", transform.segment, "Keep [T0, T1] seconds, rebased to 0")->expected(2);
    t->add_flag("--include-percussion", transform.include_percussion, "Keep MIDI channel 10");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (a->parsed())
            return cmd_analyze(analyze, err);
        if (d->parsed())
            return cmd_distance(distance, out);
        if (c->parsed())
            return cmd_cluster(cluster, out);
        if (p->parsed())
            return cmd_plot(plot, out);
        if (t->parsed())
            return cmd_transform(transform, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

} // namespace tonnetz::cli
