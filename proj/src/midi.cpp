#include "tonnetz/midi.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <iterator>
#include <map>
#include <tuple>

namespace tonnetz {

namespace {

constexpr int kPercussionChannel = 9;

class ByteReader {
public:
    ByteReader(std::span<const std::uint8_t> bytes, std::size_t begin, std::size_t end)
        : bytes_(bytes), pos_(begin), end_(end)
    {
    }

    std::size_t pos() const { return pos_; }
    bool at_end() const { return pos_ >= end_; }

    std::uint8_t peek(const char* what) const
    {
        if (pos_ >= end_)
            throw MidiError(std::string("truncated ") + what, pos_);
        return bytes_[pos_];
    }

    std::uint8_t u8(const char* what)
    {
        const std::uint8_t b = peek(what);
        ++pos_;
        return b;
    }

    std::uint32_t big_endian(int width, const char* what)
    {
        std::uint32_t v = 0;
        for (int i = 0; i < width; ++i)
            v = (v << 8) | u8(what);
        return v;
    }

    /// At most four bytes, seven bits each, high bit set on all but the last.
    std::uint32_t vlq()
    {
        const std::size_t start = pos_;
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            if (pos_ >= end_)
                throw MidiError("truncated variable-length quantity", start);
            const std::uint8_t b = bytes_[pos_++];
            v = (v << 7) | (b & 0x7Fu);
            if ((b & 0x80u) == 0)
                return v;
        }
        throw MidiError("variable-length quantity longer than four bytes", start);
    }

    void skip(std::size_t n, const char* what)
    {
        if (n > end_ - pos_)
            throw MidiError(std::string("truncated ") + what, pos_);
        pos_ += n;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_;
    std::size_t end_;
};

struct NoteEvent {
    std::int64_t tick;
    std::size_t track;
    std::size_t sequence;
    int channel;
    int key;
    bool on;
};

struct TrackScan {
    std::vector<NoteEvent> notes;
    std::vector<TempoChange> tempos;
    std::int64_t last_tick = 0;
    bool saw_end_of_track = false;
};

TrackScan scan_track(std::span<const std::uint8_t> bytes, std::size_t begin, std::size_t end, std::size_t track)
{
    TrackScan scan;
    ByteReader in(bytes, begin, end);
    std::int64_t tick = 0;
    std::uint8_t running = 0;
    std::size_t sequence = 0;

    while (!in.at_end()) {
        tick += in.vlq();
        scan.last_tick = tick;
        const std::size_t status_pos = in.pos();
        std::uint8_t status = in.peek("event");
        if (status & 0x80u) {
            in.u8("event");
        } else if (running == 0) {
            throw MidiError("data byte without running status", status_pos);
        } else {
            status = running;
        }

        if (status == 0xFF) {
            running = 0;
            const std::uint8_t type = in.u8("meta event");
            const std::uint32_t length = in.vlq();
            const std::size_t data_pos = in.pos();
            if (type == 0x51) {
                if (length != 3)
                    throw MidiError("tempo meta event must carry 3 bytes", data_pos);
                const std::uint32_t tempo = in.big_endian(3, "tempo meta event");
                if (tempo == 0)
                    throw MidiError("zero tempo", data_pos);
                scan.tempos.push_back({tick, tempo});
            } else {
                in.skip(length, "meta event");
            }
            if (type == 0x2F) {
                scan.saw_end_of_track = true;
                break;
            }
        } else if (status == 0xF0 || status == 0xF7) {
            running = 0;
            in.skip(in.vlq(), "system exclusive event");
        } else if (status >= 0xF0) {
            throw MidiError("unexpected system message in track", status_pos);
        } else {
            running = status;
            const int kind = status >> 4;
            const int channel = status & 0x0F;
            const int data_count = (kind == 0xC || kind == 0xD) ? 1 : 2;
            std::uint8_t data[2] = {0, 0};
            for (int i = 0; i < data_count; ++i) {
                const std::size_t at = in.pos();
                data[i] = in.u8("channel message");
                if (data[i] & 0x80u)
                    throw MidiError("status byte inside channel message data", at);
            }
            if (kind == 0x9 && data[1] > 0)
                scan.notes.push_back({tick, track, sequence++, channel, data[0], true});
            else if (kind == 0x8 || kind == 0x9)
                scan.notes.push_back({tick, track, sequence++, channel, data[0], false});
            // Aftertouch, controllers, program changes and pitch bend carry
            // no pitch-class duration.
        }
    }
    return scan;
}

} // namespace

TempoMap::TempoMap(std::uint16_t ticks_per_quarter, std::vector<TempoChange> changes)
    : ticks_per_quarter_(ticks_per_quarter)
{
    if (ticks_per_quarter == 0)
        throw std::invalid_argument("ticks per quarter must be positive");
    std::stable_sort(changes.begin(), changes.end(),
                     [](const TempoChange& a, const TempoChange& b) { return a.tick < b.tick; });
    for (const auto& c : changes) {
        if (c.tick < 0)
            throw std::invalid_argument("tempo change at negative tick");
        if (c.microseconds_per_quarter == 0)
            throw std::invalid_argument("tempo must be positive");
        if (!changes_.empty() && changes_.back().tick == c.tick)
            changes_.back() = c;
        else
            changes_.push_back(c);
    }
    if (changes_.empty() || changes_.front().tick != 0)
        changes_.insert(changes_.begin(), TempoChange{0, kDefaultTempo});

    change_seconds_.resize(changes_.size());
    change_seconds_[0] = 0.0;
    for (std::size_t i = 1; i < changes_.size(); ++i)
        change_seconds_[i] = change_seconds_[i - 1] +
                             static_cast<double>(changes_[i].tick - changes_[i - 1].tick) *
                                 changes_[i - 1].microseconds_per_quarter / (1e6 * ticks_per_quarter_);
}

TempoMap TempoMap::smpte(int frames_per_second, int ticks_per_frame)
{
    TempoMap map;
    const double fps = frames_per_second == 29 ? 29.97 : frames_per_second;
    map.smpte_ticks_per_second_ = fps * ticks_per_frame;
    return map;
}

double TempoMap::seconds_at(std::int64_t tick) const
{
    if (is_smpte())
        return static_cast<double>(tick) / smpte_ticks_per_second_;
    auto it = std::upper_bound(changes_.begin(), changes_.end(), tick,
                               [](std::int64_t t, const TempoChange& c) { return t < c.tick; });
    const std::size_t i = static_cast<std::size_t>(std::distance(changes_.begin(), it)) - 1;
    return change_seconds_[i] + static_cast<double>(tick - changes_[i].tick) * changes_[i].microseconds_per_quarter /
                                    (1e6 * ticks_per_quarter_);
}

MidiFile parse_midi(std::span<const std::uint8_t> bytes, const MidiOptions& options)
{
    ByteReader header(bytes, 0, bytes.size());
    if (bytes.size() < 4 || !std::equal(bytes.begin(), bytes.begin() + 4, "MThd"))
        throw MidiError("missing MThd header chunk", 0);
    header.skip(4, "header chunk");
    const std::uint32_t header_length = header.big_endian(4, "header chunk");
    if (header_length < 6)
        throw MidiError("header chunk shorter than 6 bytes", 4);
    const std::size_t format_pos = header.pos();
    const auto format = static_cast<int>(header.big_endian(2, "header chunk"));
    const std::uint32_t declared_tracks = header.big_endian(2, "header chunk");
    const std::size_t division_pos = header.pos();
    const std::uint32_t division = header.big_endian(2, "header chunk");
    header.skip(header_length - 6, "header chunk");

    if (format == 2)
        throw MidiError("SMF format 2 is not supported", format_pos);
    if (format > 2)
        throw MidiError("unknown SMF format " + std::to_string(format), format_pos);

    MidiFile file;
    file.format = format;
    if (division & 0x8000u) {
        const int fps = -static_cast<int>(static_cast<std::int8_t>(division >> 8));
        const int ticks_per_frame = static_cast<int>(division & 0xFFu);
        if ((fps != 24 && fps != 25 && fps != 29 && fps != 30) || ticks_per_frame == 0)
            throw MidiError("invalid SMPTE division", division_pos);
        file.tempo = TempoMap::smpte(fps, ticks_per_frame);
    } else if (division == 0) {
        throw MidiError("zero ticks per quarter note", division_pos);
    }

    std::vector<NoteEvent> events;
    std::vector<TempoChange> tempos;
    std::int64_t last_tick = 0;
    std::size_t pos = header.pos();
    while (file.track_count < declared_tracks) {
        if (bytes.size() - pos < 8)
            throw MidiError("expected " + std::to_string(declared_tracks) + " track chunks, found " +
                                std::to_string(file.track_count),
                            pos);
        ByteReader chunk(bytes, pos, bytes.size());
        const bool is_track = std::equal(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                                         bytes.begin() + static_cast<std::ptrdiff_t>(pos) + 4, "MTrk");
        chunk.skip(4, "chunk header");
        const std::uint32_t length = chunk.big_endian(4, "chunk header");
        const std::size_t body = chunk.pos();
        if (length > bytes.size() - body)
            throw MidiError("chunk length exceeds file size", pos + 4);
        pos = body + length;
        if (!is_track)
            continue; // unknown chunk types are skipped

        TrackScan scan = scan_track(bytes, body, body + length, file.track_count);
        if (!scan.saw_end_of_track)
            file.warnings.push_back("track " + std::to_string(file.track_count) + " has no end-of-track event");
        events.insert(events.end(), scan.notes.begin(), scan.notes.end());
        tempos.insert(tempos.end(), scan.tempos.begin(), scan.tempos.end());
        last_tick = std::max(last_tick, scan.last_tick);
        ++file.track_count;
    }

    if (!file.tempo.is_smpte())
        file.tempo = TempoMap(static_cast<std::uint16_t>(division), std::move(tempos));

    std::sort(events.begin(), events.end(), [](const NoteEvent& a, const NoteEvent& b) {
        return std::tie(a.tick, a.track, a.sequence) < std::tie(b.tick, b.track, b.sequence);
    });

    std::map<std::pair<int, int>, std::deque<std::int64_t>> sounding;
    std::size_t zero_length = 0, orphan_offs = 0;
    auto emit = [&](int key, std::int64_t on, std::int64_t off) {
        if (off <= on) {
            ++zero_length;
            return;
        }
        const double start = file.tempo.seconds_at(on);
        file.notes.push_back({static_cast<double>(key), start, file.tempo.seconds_at(off) - start});
    };

    for (const auto& e : events) {
        if (e.channel == kPercussionChannel && !options.include_percussion)
            continue;
        auto& queue = sounding[{e.channel, e.key}];
        if (e.on) {
            queue.push_back(e.tick);
        } else if (queue.empty()) {
            ++orphan_offs;
        } else {
            emit(e.key, queue.front(), e.tick);
            queue.pop_front();
        }
    }

    std::size_t dangling = 0;
    for (auto& [channel_key, queue] : sounding)
        for (std::int64_t on : queue) {
            ++dangling;
            emit(channel_key.second, on, last_tick);
        }
    if (dangling > 0)
        file.warnings.push_back(std::to_string(dangling) + " note(s) still sounding at end of file were closed");
    if (orphan_offs > 0)
        file.warnings.push_back(std::to_string(orphan_offs) + " note-off event(s) without a matching note-on");
    if (zero_length > 0)
        file.warnings.push_back(std::to_string(zero_length) + " zero-length note(s) dropped");

    sort_notes(file.notes);
    return file;
}

MidiFile read_midi_file(const std::string& path, const MidiOptions& options)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::ios_base::failure("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_midi(bytes, options);
}

} // namespace tonnetz
