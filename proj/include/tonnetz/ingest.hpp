#pragma once

#include "tonnetz/tonnetz.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tonnetz {

/// A timed note. `pitch` follows the MIDI numbering (69 = A4) and may be
/// fractional.
struct Note {
    double pitch = 0.0;
    double onset = 0.0;    ///< seconds, >= 0
    double duration = 0.0; ///< seconds, > 0

    double end() const { return onset + duration; }

    friend bool operator==(const Note&, const Note&) = default;
};

/// Throws std::invalid_argument unless pitch is finite, onset >= 0 and
/// duration > 0.
void validate(const Note& note);

/// 69 + 12 log2(hz / 440). Throws std::invalid_argument for hz <= 0.
double freq_to_pitch(double hz);

/// Nearest integer pitch (halves round away from zero), reduced mod 12.
PitchClass pitch_class(double pitch);

struct TimeWindow {
    double start = 0.0;
    double end = 0.0;
};

/// Sum of (window-clipped) note durations per pitch class.
PitchClassProfile profile(std::span<const Note> notes, std::optional<TimeWindow> window = std::nullopt);

/// Adds k semitones to every pitch.
std::vector<Note> transpose(std::span<const Note> notes, int k);

/// Lowest and highest pitch drawn by randomize (the 88-key piano range).
inline constexpr int kRandomPitchMin = 21;
inline constexpr int kRandomPitchMax = 108;

/// Keeps onsets and durations and replaces every pitch by an integer drawn
/// uniformly from [kRandomPitchMin, kRandomPitchMax]. The stream is fully
/// determined by `seed` on every platform.
std::vector<Note> randomize(std::span<const Note> notes, std::uint64_t seed);

/// Notes overlapping [t0, t1], clipped to it and shifted so that t0 maps to
/// 0. Throws std::invalid_argument unless t0 < t1.
std::vector<Note> segment(std::span<const Note> notes, double t0, double t1);

/// End of the last sounding note, 0 for an empty list.
double total_span(std::span<const Note> notes);

/// Sorts by (onset, pitch, duration).
void sort_notes(std::vector<Note>& notes);

/// Note-list JSON: [{"pitch": p, "onset": s, "duration": s}, ...]. The
/// parser also accepts the array wrapped as {"notes": [...], ...}.
std::vector<Note> parse_note_list(const std::string& json_text);
std::string dump_note_list(std::span<const Note> notes);

} // namespace tonnetz
