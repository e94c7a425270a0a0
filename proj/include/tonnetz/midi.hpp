#pragma once

#include "tonnetz/ingest.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tonnetz {

/// A Standard MIDI File that cannot be decoded. `offset` is the byte
/// position where decoding failed.
class MidiError : public std::runtime_error {
public:
    MidiError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset)
    {
    }

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

struct TempoChange {
    std::int64_t tick = 0;
    std::uint32_t microseconds_per_quarter = 500000;

    friend bool operator==(const TempoChange&, const TempoChange&) = default;
};

/// Tick to seconds conversion. Metrical files integrate the tempo changes
/// piecewise; SMPTE files (negative division) use a fixed tick rate.
class TempoMap {
public:
    static constexpr std::uint32_t kDefaultTempo = 500000;

    TempoMap() : TempoMap(480, {}) {}
    /// Changes may be unsorted and may repeat a tick (the last one wins).
    /// A 500000 us/quarter entry is inserted at tick 0 if none exists.
    TempoMap(std::uint16_t ticks_per_quarter, std::vector<TempoChange> changes);
    static TempoMap smpte(int frames_per_second, int ticks_per_frame);

    double seconds_at(std::int64_t tick) const;

    std::uint16_t ticks_per_quarter() const { return ticks_per_quarter_; }
    const std::vector<TempoChange>& changes() const { return changes_; }
    bool is_smpte() const { return smpte_ticks_per_second_ > 0; }

private:
    std::uint16_t ticks_per_quarter_ = 480;
    double smpte_ticks_per_second_ = 0.0;
    std::vector<TempoChange> changes_;
    std::vector<double> change_seconds_; ///< start time of each change
};

struct MidiOptions {
    bool include_percussion = false; ///< keep channel 10 (index 9)
};

struct MidiFile {
    int format = 0;
    std::size_t track_count = 0;
    TempoMap tempo;
    std::vector<Note> notes; ///< sorted by onset
    std::vector<std::string> warnings;
};

/// Decodes an SMF of format 0 or 1. Running status is honored; note-on
/// with velocity 0 releases. Repeated note-ons of a pitch on one channel
/// are released first-on/first-off, and notes still sounding at the end are
/// closed at the last event with a warning. Throws MidiError.
MidiFile parse_midi(std::span<const std::uint8_t> bytes, const MidiOptions& options = {});

MidiFile read_midi_file(const std::string& path, const MidiOptions& options = {});

} // namespace tonnetz
