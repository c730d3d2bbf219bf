#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cosec/code.hpp"
#include "cosec/field.hpp"

namespace cosec {

enum class FrameType : std::uint8_t {
    kHello = 0x01,
    kOtRequest = 0x02,
    kOtResponse = 0x03,
    kResultReveal = 0x04,
    kAbort = 0x7F,
};

const char* frame_type_name(FrameType t) noexcept;

/// One wire message: 1-byte type, 4-byte big-endian payload length, payload.
struct Frame {
    FrameType type;
    std::vector<std::uint8_t> payload;

    friend bool operator==(const Frame& a, const Frame& b) = default;
};

std::vector<std::uint8_t> encode_frame(const Frame& frame);

/// Parses one complete frame occupying the whole buffer.
Frame decode_frame(const std::vector<std::uint8_t>& bytes);

/// Incremental deframer for stream transports: feed arbitrary byte chunks,
/// pop complete frames as they materialize.
class FrameReader {
public:
    void feed(const std::uint8_t* data, std::size_t len);
    /// Returns true and fills `out` when a complete frame is buffered.
    bool next(Frame& out);

private:
    std::vector<std::uint8_t> buf_;
};

/// SHA-256 of the canonical text serialization of the code; pinned in HELLO
/// so both parties prove they loaded the same matrix.
std::array<std::uint8_t, 32> code_digest(const LinearCode& code);

inline constexpr std::uint8_t kDigestAlgoSha256 = 0x01;

struct HelloPayload {
    std::uint32_t q = 0;
    std::size_t r = 0;
    std::size_t n = 0;
    std::uint8_t algo = kDigestAlgoSha256;
    std::array<std::uint8_t, 32> digest{};

    friend bool operator==(const HelloPayload& a, const HelloPayload& b) = default;
};

Frame make_hello(const LinearCode& code);
HelloPayload parse_hello(const Frame& frame);

Frame make_ot_request(const std::vector<std::size_t>& indices_1b);
std::vector<std::size_t> parse_ot_request(const Frame& frame);

Frame make_ot_response(const std::vector<FieldElement>& values);
std::vector<FieldElement> parse_ot_response(const Frame& frame, PrimeField field);

Frame make_result_reveal(FieldElement value);
FieldElement parse_result_reveal(const Frame& frame, PrimeField field);

Frame make_abort(const std::string& reason);
std::string parse_abort(const Frame& frame);

std::string to_hex(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> from_hex(const std::string& hex);

}  // namespace cosec
