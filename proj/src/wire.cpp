#include "cosec/wire.hpp"

#include <openssl/evp.h>

#include <sstream>

#include "cosec/errors.hpp"

namespace cosec {

namespace {

constexpr std::size_t kMaxPayload = 1 << 20;

void put_u16(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
}

std::uint32_t get_u16(const std::vector<std::uint8_t>& in, std::size_t at) {
    return (static_cast<std::uint32_t>(in.at(at)) << 8) | in.at(at + 1);
}

void require_known_type(std::uint8_t byte) {
    switch (static_cast<FrameType>(byte)) {
        case FrameType::kHello:
        case FrameType::kOtRequest:
        case FrameType::kOtResponse:
        case FrameType::kResultReveal:
        case FrameType::kAbort:
            return;
    }
    std::ostringstream os;
    os << "unknown frame type 0x" << std::hex << static_cast<int>(byte);
    throw ValidationError(os.str());
}

void require_type(const Frame& frame, FrameType t) {
    if (frame.type != t) {
        std::ostringstream os;
        os << "expected " << frame_type_name(t) << " frame, got "
           << frame_type_name(frame.type);
        throw ValidationError(os.str());
    }
}

}  // namespace

const char* frame_type_name(FrameType t) noexcept {
    switch (t) {
        case FrameType::kHello: return "HELLO";
        case FrameType::kOtRequest: return "OT_REQUEST";
        case FrameType::kOtResponse: return "OT_RESPONSE";
        case FrameType::kResultReveal: return "RESULT_REVEAL";
        case FrameType::kAbort: return "ABORT";
    }
    return "UNKNOWN";
}

std::vector<std::uint8_t> encode_frame(const Frame& frame) {
    if (frame.payload.size() > kMaxPayload) throw ValidationError("frame payload too large");
    std::vector<std::uint8_t> out;
    out.reserve(5 + frame.payload.size());
    out.push_back(static_cast<std::uint8_t>(frame.type));
    std::uint32_t len = static_cast<std::uint32_t>(frame.payload.size());
    out.push_back(static_cast<std::uint8_t>(len >> 24));
    out.push_back(static_cast<std::uint8_t>(len >> 16));
    out.push_back(static_cast<std::uint8_t>(len >> 8));
    out.push_back(static_cast<std::uint8_t>(len));
    out.insert(out.end(), frame.payload.begin(), frame.payload.end());
    return out;
}

Frame decode_frame(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 5) throw ValidationError("frame shorter than its header");
    require_known_type(bytes[0]);
    std::uint32_t len = (static_cast<std::uint32_t>(bytes[1]) << 24) |
                        (static_cast<std::uint32_t>(bytes[2]) << 16) |
                        (static_cast<std::uint32_t>(bytes[3]) << 8) | bytes[4];
    if (len > kMaxPayload) throw ValidationError("frame payload too large");
    if (bytes.size() != 5u + len) {
        std::ostringstream os;
        os << "frame length mismatch: header says " << len << ", buffer has "
           << bytes.size() - 5;
        throw ValidationError(os.str());
    }
    Frame f;
    f.type = static_cast<FrameType>(bytes[0]);
    f.payload.assign(bytes.begin() + 5, bytes.end());
    return f;
}

void FrameReader::feed(const std::uint8_t* data, std::size_t len) {
    buf_.insert(buf_.end(), data, data + len);
}

bool FrameReader::next(Frame& out) {
    if (buf_.size() < 5) return false;
    require_known_type(buf_[0]);
    std::uint32_t len = (static_cast<std::uint32_t>(buf_[1]) << 24) |
                        (static_cast<std::uint32_t>(buf_[2]) << 16) |
                        (static_cast<std::uint32_t>(buf_[3]) << 8) | buf_[4];
    if (len > kMaxPayload) throw ValidationError("frame payload too large");
    if (buf_.size() < 5u + len) return false;
    out.type = static_cast<FrameType>(buf_[0]);
    out.payload.assign(buf_.begin() + 5, buf_.begin() + 5 + len);
    buf_.erase(buf_.begin(), buf_.begin() + 5 + len);
    return true;
}

std::array<std::uint8_t, 32> code_digest(const LinearCode& code) {
    std::string text = serialize_code(code);
    std::array<std::uint8_t, 32> digest{};
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, text.data(), text.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, digest.data(), &len) != 1 || len != 32) {
        EVP_MD_CTX_free(ctx);
        throw Error("SHA-256 computation failed");
    }
    EVP_MD_CTX_free(ctx);
    return digest;
}

Frame make_hello(const LinearCode& code) {
    Frame f;
    f.type = FrameType::kHello;
    put_u16(f.payload, code.field().modulus());
    put_u16(f.payload, static_cast<std::uint32_t>(code.r()));
    put_u16(f.payload, static_cast<std::uint32_t>(code.n()));
    f.payload.push_back(kDigestAlgoSha256);
    auto digest = code_digest(code);
    f.payload.insert(f.payload.end(), digest.begin(), digest.end());
    return f;
}

HelloPayload parse_hello(const Frame& frame) {
    require_type(frame, FrameType::kHello);
    if (frame.payload.size() != 39) {
        throw ValidationError("HELLO payload must be 39 bytes");
    }
    HelloPayload h;
    h.q = get_u16(frame.payload, 0);
    h.r = get_u16(frame.payload, 2);
    h.n = get_u16(frame.payload, 4);
    h.algo = frame.payload[6];
    if (h.algo != kDigestAlgoSha256) {
        throw ValidationError("unknown digest algorithm in HELLO");
    }
    std::copy(frame.payload.begin() + 7, frame.payload.end(), h.digest.begin());
    return h;
}

Frame make_ot_request(const std::vector<std::size_t>& indices_1b) {
    if (indices_1b.empty() || indices_1b.size() > 65535) {
        throw ValidationError("transfer request needs 1..65535 indices");
    }
    Frame f;
    f.type = FrameType::kOtRequest;
    put_u16(f.payload, static_cast<std::uint32_t>(indices_1b.size()));
    for (std::size_t i : indices_1b) {
        if (i < 1 || i > 65535) throw ValidationError("transfer index out of range");
        put_u16(f.payload, static_cast<std::uint32_t>(i));
    }
    return f;
}

std::vector<std::size_t> parse_ot_request(const Frame& frame) {
    require_type(frame, FrameType::kOtRequest);
    if (frame.payload.size() < 2) throw ValidationError("truncated transfer request");
    std::uint32_t t = get_u16(frame.payload, 0);
    if (frame.payload.size() != 2 + 2 * static_cast<std::size_t>(t)) {
        throw ValidationError("transfer request length disagrees with its count");
    }
    if (t == 0) throw ValidationError("empty transfer request");
    std::vector<std::size_t> out;
    for (std::uint32_t i = 0; i < t; ++i) {
        std::size_t idx = get_u16(frame.payload, 2 + 2 * i);
        if (idx == 0) throw ValidationError("transfer index 0 (indices are 1-based)");
        out.push_back(idx);
    }
    return out;
}

Frame make_ot_response(const std::vector<FieldElement>& values) {
    Frame f;
    f.type = FrameType::kOtResponse;
    for (FieldElement v : values) {
        auto b = v.to_bytes();
        f.payload.push_back(b[0]);
        f.payload.push_back(b[1]);
    }
    return f;
}

std::vector<FieldElement> parse_ot_response(const Frame& frame, PrimeField field) {
    require_type(frame, FrameType::kOtResponse);
    if (frame.payload.size() % 2 != 0) throw ValidationError("odd transfer response length");
    std::vector<FieldElement> out;
    for (std::size_t at = 0; at < frame.payload.size(); at += 2) {
        std::array<std::uint8_t, 2> b = {frame.payload[at], frame.payload[at + 1]};
        out.push_back(FieldElement::from_bytes(b, field));
    }
    return out;
}

Frame make_result_reveal(FieldElement value) {
    Frame f;
    f.type = FrameType::kResultReveal;
    auto b = value.to_bytes();
    f.payload.assign(b.begin(), b.end());
    return f;
}

FieldElement parse_result_reveal(const Frame& frame, PrimeField field) {
    require_type(frame, FrameType::kResultReveal);
    if (frame.payload.size() != 2) throw ValidationError("result frame must carry 2 bytes");
    std::array<std::uint8_t, 2> b = {frame.payload[0], frame.payload[1]};
    return FieldElement::from_bytes(b, field);
}

Frame make_abort(const std::string& reason) {
    Frame f;
    f.type = FrameType::kAbort;
    f.payload.assign(reason.begin(), reason.end());
    return f;
}

std::string parse_abort(const Frame& frame) {
    require_type(frame, FrameType::kAbort);
    return std::string(frame.payload.begin(), frame.payload.end());
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

std::vector<std::uint8_t> from_hex(const std::string& hex) {
    if (hex.size() % 2 != 0) throw ValidationError("odd hex string length");
    auto nibble = [](char c) -> std::uint8_t {
        if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
        throw ValidationError("invalid hex digit");
    };
    std::vector<std::uint8_t> out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        out.push_back(static_cast<std::uint8_t>((nibble(hex[i]) << 4) | nibble(hex[i + 1])));
    }
    return out;
}

}  // namespace cosec
