#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cosec/protocol.hpp"
#include "cosec/transcript.hpp"
#include "cosec/wire.hpp"

namespace cosec {

/// Blocking TCP stream carrying the length-prefixed frames. All failures
/// surface as TransportError.
class FrameSocket {
public:
    /// Binds, listens, and accepts exactly one peer.
    static FrameSocket listen_accept(std::uint16_t port);
    /// Connects, retrying `attempts` times with `retry_ms` between tries so a
    /// client can start before its server finishes binding.
    static FrameSocket connect(const std::string& host, std::uint16_t port, int attempts = 1,
                               int retry_ms = 0);

    FrameSocket(FrameSocket&& other) noexcept;
    FrameSocket& operator=(FrameSocket&& other) noexcept;
    FrameSocket(const FrameSocket&) = delete;
    FrameSocket& operator=(const FrameSocket&) = delete;
    ~FrameSocket();

    void send_frame(const Frame& frame);
    /// Blocks until one full frame arrives; TransportError on close or error.
    Frame recv_frame();

private:
    explicit FrameSocket(int fd) : fd_(fd) {}

    int fd_ = -1;
    FrameReader reader_;
};

struct SenderRunResult {
    PartyView view;
    Transcript transcript;
    FieldVector z;
    std::optional<FieldElement> revealed;
};

struct ReceiverRunResult {
    PartyView view;
    Transcript transcript;
    FieldVector selector;
    std::vector<std::size_t> request_indices;
    FieldElement output;
};

/// Drives an encoder endpoint over an established socket until it finishes.
/// The seed is this party's own; pairing with `run_receiver` at seed + 1
/// reproduces the in-process run_protocol byte for byte.
SenderRunResult run_sender(FrameSocket& sock, const ProtocolConfig& config, const FieldVector& x,
                           std::uint64_t seed, const RunOptions& opts, OtFunctionality& ot);

ReceiverRunResult run_receiver(FrameSocket& sock, const ProtocolConfig& config,
                               const LinearFunctionSpec& spec, std::uint64_t seed,
                               const RunOptions& opts);

}  // namespace cosec
