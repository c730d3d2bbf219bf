#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cosec/field.hpp"
#include "cosec/wire.hpp"

namespace cosec {

/// One observed wire event: `<seq> <role> <dir> <hexframe>[ <note>]`.
struct TranscriptEntry {
    std::uint64_t seq = 0;
    std::string role;  // "p1" | "p2"
    std::string dir;   // "send" | "recv"
    std::vector<std::uint8_t> frame;
    std::string note;  // optional, no spaces required; empty = absent

    std::string to_line() const;
    static TranscriptEntry from_line(const std::string& line);

    friend bool operator==(const TranscriptEntry& a, const TranscriptEntry& b) = default;
};

/// Append-only log of every frame a party sent or received, in order.
class Transcript {
public:
    explicit Transcript(std::string role) : role_(std::move(role)) {}

    void record(const std::string& dir, const Frame& frame, const std::string& note = "");

    const std::vector<TranscriptEntry>& entries() const noexcept { return entries_; }
    const std::string& role() const noexcept { return role_; }

    std::string to_text() const;
    void save(const std::string& path) const;

    /// The concatenated raw frame bytes in one direction ("send"/"recv") or
    /// both (empty dir); what the transport-equivalence tests compare.
    std::vector<std::uint8_t> frame_bytes(const std::string& dir = "") const;

private:
    std::string role_;
    std::vector<TranscriptEntry> entries_;
    std::uint64_t next_seq_ = 1;
};

/// Everything one party sees during a run: its role, declared inputs, seed,
/// and the ordered observation events. Observations deliberately model the
/// ideal transfer functionality: the sender's view of a transfer is only the
/// requested count, the receiver's view is the (index, value) pairs.
class PartyView {
public:
    PartyView(std::string role, std::uint64_t seed)
        : role_(std::move(role)), seed_(seed) {}

    void set_input(const std::string& repr) { input_ = repr; }
    void add_event(const std::string& line) { events_.push_back(line); }
    void set_output(FieldElement value) { output_ = value; }

    const std::string& role() const noexcept { return role_; }
    std::uint64_t seed() const noexcept { return seed_; }
    const std::vector<std::string>& events() const noexcept { return events_; }
    std::optional<FieldElement> output() const noexcept { return output_; }

    /// Only the observation events, one per line: the part of the view that
    /// the peer's input must not influence.
    std::string events_text() const;
    /// Full view: role, rng id, seed, input, events, output.
    std::string full_text() const;

private:
    std::string role_;
    std::uint64_t seed_;
    std::string input_;
    std::vector<std::string> events_;
    std::optional<FieldElement> output_;
};

}  // namespace cosec
