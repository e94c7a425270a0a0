#include "tonnetz/ingest.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>

namespace tonnetz {

void validate(const Note& note)
{
    if (!std::isfinite(note.pitch))
        throw std::invalid_argument("note pitch must be finite");
    if (!std::isfinite(note.onset) || note.onset < 0.0)
        throw std::invalid_argument("note onset must be finite and nonnegative");
    if (!std::isfinite(note.duration) || note.duration <= 0.0)
        throw std::invalid_argument("note duration must be finite and positive");
}

double freq_to_pitch(double hz)
{
    if (!std::isfinite(hz) || hz <= 0.0)
        throw std::invalid_argument("frequency must be finite and positive");
    return 69.0 + 12.0 * std::log2(hz / 440.0);
}

PitchClass pitch_class(double pitch)
{
    if (!std::isfinite(pitch))
        throw std::invalid_argument("pitch must be finite");
    const auto nearest = static_cast<long long>(std::round(pitch));
    return PitchClass(static_cast<int>(((nearest % 12) + 12) % 12));
}

PitchClassProfile profile(std::span<const Note> notes, std::optional<TimeWindow> window)
{
    PitchClassProfile p;
    for (const auto& n : notes) {
        double d = n.duration;
        if (window) {
            const double lo = std::max(n.onset, window->start);
            const double hi = std::min(n.end(), window->end);
            d = hi > lo ? hi - lo : 0.0;
        }
        p[pitch_class(n.pitch)] += d;
    }
    return p;
}

std::vector<Note> transpose(std::span<const Note> notes, int k)
{
    std::vector<Note> out(notes.begin(), notes.end());
    for (auto& n : out)
        n.pitch += k;
    return out;
}

std::vector<Note> randomize(std::span<const Note> notes, std::uint64_t seed)
{
    // Rejection sampling on the raw engine output, identical on every platform.
    std::mt19937_64 engine(seed);
    constexpr std::uint64_t range = kRandomPitchMax - kRandomPitchMin + 1;
    constexpr std::uint64_t reject_below = (0 - range) % range;
    auto draw = [&] {
        std::uint64_t x = engine();
        while (x < reject_below)
            x = engine();
        return static_cast<double>(kRandomPitchMin + static_cast<int>(x % range));
    };

    std::vector<Note> out(notes.begin(), notes.end());
    for (auto& n : out)
        n.pitch = draw();
    return out;
}

std::vector<Note> segment(std::span<const Note> notes, double t0, double t1)
{
    if (!(t0 < t1))
        throw std::invalid_argument("segment requires t0 < t1");
    std::vector<Note> out;
    for (const auto& n : notes) {
        const double lo = std::max(n.onset, t0);
        const double hi = std::min(n.end(), t1);
        if (hi > lo)
            out.push_back({n.pitch, lo - t0, hi - lo});
    }
    return out;
}

double total_span(std::span<const Note> notes)
{
    double end = 0.0;
    for (const auto& n : notes)
        end = std::max(end, n.end());
    return end;
}

void sort_notes(std::vector<Note>& notes)
{
    std::stable_sort(notes.begin(), notes.end(), [](const Note& a, const Note& b) {
        return std::tie(a.onset, a.pitch, a.duration) < std::tie(b.onset, b.pitch, b.duration);
    });
}

std::vector<Note> parse_note_list(const std::string& json_text)
{
    const auto parsed = nlohmann::json::parse(json_text);
    const auto& doc = parsed.is_object() && parsed.contains("notes") ? parsed.at("notes") : parsed;
    if (!doc.is_array())
        throw std::invalid_argument("note list must be a JSON array or an object with a \"notes\" array");
    std::vector<Note> notes;
    notes.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& item = doc[i];
        try {
            Note n{item.at("pitch").get<double>(), item.at("onset").get<double>(),
                   item.at("duration").get<double>()};
            validate(n);
            notes.push_back(n);
        } catch (const std::exception& e) {
            throw std::invalid_argument("note " + std::to_string(i) + ": " + e.what());
        }
    }
    return notes;
}

std::string dump_note_list(std::span<const Note> notes)
{
    auto doc = nlohmann::json::array();
    for (const auto& n : notes)
        doc.push_back({{"pitch", n.pitch}, {"onset", n.onset}, {"duration", n.duration}});
    return doc.dump(1) + "\n";
}

} // namespace tonnetz
