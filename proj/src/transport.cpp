#include "cosec/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <thread>
#include <utility>

#include "cosec/errors.hpp"

namespace cosec {

namespace {

[[noreturn]] void throw_errno(const std::string& what) {
    throw TransportError(what + ": " + std::strerror(errno));
}

void close_quiet(int fd) {
    if (fd >= 0) ::close(fd);
}

}  // namespace

FrameSocket::FrameSocket(FrameSocket&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)), reader_(std::move(other.reader_)) {}

FrameSocket& FrameSocket::operator=(FrameSocket&& other) noexcept {
    if (this != &other) {
        close_quiet(fd_);
        fd_ = std::exchange(other.fd_, -1);
        reader_ = std::move(other.reader_);
    }
    return *this;
}

FrameSocket::~FrameSocket() { close_quiet(fd_); }

FrameSocket FrameSocket::listen_accept(std::uint16_t port) {
    const int listener = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listener < 0) throw_errno("socket");
    const int yes = 1;
    ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    addr.sin_port = htons(port);
    if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
        const int saved = errno;
        close_quiet(listener);
        errno = saved;
        throw_errno("bind to port " + std::to_string(port));
    }
    if (::listen(listener, 1) < 0) {
        const int saved = errno;
        close_quiet(listener);
        errno = saved;
        throw_errno("listen");
    }
    const int fd = ::accept(listener, nullptr, nullptr);
    const int saved = errno;
    close_quiet(listener);
    if (fd < 0) {
        errno = saved;
        throw_errno("accept");
    }
    return FrameSocket(fd);
}

FrameSocket FrameSocket::connect(const std::string& host, std::uint16_t port, int attempts,
                                 int retry_ms) {
    if (attempts < 1) attempts = 1;
    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0 && retry_ms > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(retry_ms));
        }
        addrinfo hints{};
        hints.ai_family = AF_INET;
        hints.ai_socktype = SOCK_STREAM;
        addrinfo* res = nullptr;
        const int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res);
        if (rc != 0) {
            last_error = std::string("resolve ") + host + ": " + gai_strerror(rc);
            continue;
        }
        int fd = -1;
        for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
            fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
            if (fd < 0) continue;
            if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
            last_error = std::string("connect: ") + std::strerror(errno);
            close_quiet(fd);
            fd = -1;
        }
        ::freeaddrinfo(res);
        if (fd >= 0) return FrameSocket(fd);
    }
    throw TransportError("could not connect to " + host + ":" + std::to_string(port) + " (" +
                         last_error + ")");
}

void FrameSocket::send_frame(const Frame& frame) {
    if (fd_ < 0) throw TransportError("socket is closed");
    const std::vector<std::uint8_t> bytes = encode_frame(frame);
    std::size_t sent = 0;
    while (sent < bytes.size()) {
        const ssize_t n = ::send(fd_, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw_errno("send");
        }
        sent += static_cast<std::size_t>(n);
    }
}

Frame FrameSocket::recv_frame() {
    if (fd_ < 0) throw TransportError("socket is closed");
    Frame frame{FrameType::kAbort, {}};
    while (!reader_.next(frame)) {
        std::uint8_t buf[4096];
        const ssize_t n = ::recv(fd_, buf, sizeof(buf), 0);
        if (n == 0) throw TransportError("connection closed by peer mid-frame");
        if (n < 0) {
            if (errno == EINTR) continue;
            throw_errno("recv");
        }
        reader_.feed(buf, static_cast<std::size_t>(n));
    }
    return frame;
}

namespace {

/// Shared endpoint loop: flush start frames, then answer incoming frames
/// until the session reports done. Aborts are announced to the peer before
/// the error propagates.
template <typename Session>
void pump(FrameSocket& sock, Session& session, Transcript& transcript) {
    const auto ship = [&](const Frame& f) {
        transcript.record("send", f, transcript_note_for(f));
        sock.send_frame(f);
    };
    for (const Frame& f : session.start()) ship(f);
    while (!session.done()) {
        const Frame incoming = sock.recv_frame();
        transcript.record("recv", incoming, transcript_note_for(incoming));
        std::vector<Frame> replies;
        try {
            replies = session.on_frame(incoming);
        } catch (const ProtocolAbortError& e) {
            if (incoming.type != FrameType::kAbort) {
                try {
                    ship(make_abort(e.what()));
                } catch (const TransportError&) {
                }
            }
            throw;
        }
        for (const Frame& f : replies) ship(f);
    }
}

}  // namespace

SenderRunResult run_sender(FrameSocket& sock, const ProtocolConfig& config, const FieldVector& x,
                           std::uint64_t seed, const RunOptions& opts, OtFunctionality& ot) {
    SenderSession session(config, x, seed, opts, ot);
    Transcript transcript("p1");
    pump(sock, session, transcript);
    return SenderRunResult{session.view(), std::move(transcript), session.encoding(),
                           session.revealed_output()};
}

ReceiverRunResult run_receiver(FrameSocket& sock, const ProtocolConfig& config,
                               const LinearFunctionSpec& spec, std::uint64_t seed,
                               const RunOptions& opts) {
    ReceiverSession session(config, spec, seed, opts);
    Transcript transcript("p2");
    pump(sock, session, transcript);
    return ReceiverRunResult{session.view(), std::move(transcript), session.selector(),
                             session.request_indices(), session.output()};
}

}  // namespace cosec
