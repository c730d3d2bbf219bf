#include "cosec/transcript.hpp"

#include <fstream>
#include <sstream>

#include "cosec/errors.hpp"
#include "cosec/rng.hpp"

namespace cosec {

std::string TranscriptEntry::to_line() const {
    std::ostringstream os;
    os << seq << ' ' << role << ' ' << dir << ' ' << to_hex(frame);
    if (!note.empty()) os << ' ' << note;
    return os.str();
}

TranscriptEntry TranscriptEntry::from_line(const std::string& line) {
    std::istringstream is(line);
    TranscriptEntry e;
    std::string hex;
    if (!(is >> e.seq >> e.role >> e.dir >> hex)) {
        throw ValidationError("malformed transcript line: " + line);
    }
    e.frame = from_hex(hex);
    std::string note;
    if (is >> note) e.note = note;
    return e;
}

void Transcript::record(const std::string& dir, const Frame& frame, const std::string& note) {
    TranscriptEntry e;
    e.seq = next_seq_++;
    e.role = role_;
    e.dir = dir;
    e.frame = encode_frame(frame);
    e.note = note;
    entries_.push_back(std::move(e));
}

std::string Transcript::to_text() const {
    std::ostringstream os;
    for (const TranscriptEntry& e : entries_) os << e.to_line() << '\n';
    return os.str();
}

void Transcript::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write transcript: " + path);
    out << to_text();
    if (!out) throw ValidationError("short write to transcript: " + path);
}

std::vector<std::uint8_t> Transcript::frame_bytes(const std::string& dir) const {
    std::vector<std::uint8_t> out;
    for (const TranscriptEntry& e : entries_) {
        if (!dir.empty() && e.dir != dir) continue;
        out.insert(out.end(), e.frame.begin(), e.frame.end());
    }
    return out;
}

std::string PartyView::events_text() const {
    std::ostringstream os;
    for (const std::string& e : events_) os << e << '\n';
    return os.str();
}

std::string PartyView::full_text() const {
    std::ostringstream os;
    os << "role: " << role_ << '\n';
    os << "rng: " << SeededRng::kAlgorithmId << '\n';
    os << "seed: " << seed_ << '\n';
    os << "input: " << input_ << '\n';
    for (const std::string& e : events_) os << "event: " << e << '\n';
    if (output_) os << "output: " << output_->value() << '\n';
    return os.str();
}

}  // namespace cosec
