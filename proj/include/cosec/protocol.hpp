#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cosec/code.hpp"
#include "cosec/coset.hpp"
#include "cosec/matrix.hpp"
#include "cosec/rng.hpp"
#include "cosec/transcript.hpp"
#include "cosec/wire.hpp"

namespace cosec {

/// The evaluator's private recipe: f(X, Y) = sum coeffs_i * x_i, computed
/// blind, then post_add applied locally. coeffs fold the evaluator's input Y;
/// the encoder never sees them.
struct LinearFunctionSpec {
    FieldVector coeffs;
    FieldElement post_add;
    std::string label;  // scalar_product | squared_euclidean | hamming | custom
};

/// coeffs = Y itself. Y = 0 is rejected: its selector would be empty.
LinearFunctionSpec scalar_product_spec(const FieldVector& y);

/// Squared Euclidean distance via the augmented-input convention: the
/// encoder appends x_{r+1} = sum x_i^2 (see augment_squared), the evaluator
/// uses coeffs (-2y_1, ..., -2y_r, 1) and post_add = sum y_i^2. The code must
/// have dimension r + 1.
LinearFunctionSpec squared_euclidean_spec(const FieldVector& y);
FieldVector augment_squared(const FieldVector& x);

/// Hamming distance between binary vectors embedded in F_q: coeffs
/// 1 - 2*y_i, post_add = sum y_i. Requires q > r so the distance, which can
/// reach r, survives the modulus; y must be 0/1-valued.
LinearFunctionSpec hamming_spec(const FieldVector& y);

LinearFunctionSpec custom_spec(FieldVector coeffs, FieldElement post_add);

/// V = sum coeffs_i * H_i. Nonzero whenever coeffs is (H has full row rank).
FieldVector compute_selector(const LinearCode& code, const LinearFunctionSpec& spec);

/// The indices the evaluator asks for: supp(V) ascending, padded to w_max
/// with uniform repeats of supported indices, then shuffled. Padding repeats
/// indices rather than widening the set, so exactly supp(V) is revealed while
/// the request count stays the code constant w_max.
std::vector<std::size_t> build_request(const FieldVector& v, std::size_t w_max, SeededRng& rng);

/// Ideal t-of-n transfer: the receiver gets the values at its indices and
/// nothing else; the sender learns only how many were asked.
class OtFunctionality {
public:
    virtual ~OtFunctionality() = default;

    /// Returns the values at indices_1b in request order. Appends the
    /// sender-observable record (the count) to sender_events and the
    /// receiver-observable record (the pairs) to receiver_events; either
    /// pointer may be null.
    virtual std::vector<FieldElement> transfer(const FieldVector& values,
                                               const std::vector<std::size_t>& indices_1b,
                                               std::vector<std::string>* sender_events,
                                               std::vector<std::string>* receiver_events) = 0;
};

class IdealOt final : public OtFunctionality {
public:
    std::vector<FieldElement> transfer(const FieldVector& values,
                                       const std::vector<std::size_t>& indices_1b,
                                       std::vector<std::string>* sender_events,
                                       std::vector<std::string>* receiver_events) override;
};

/// One batched w_max-of-n call, or w_max chained 1-of-n calls.
enum class OtMode { kBatched, kSequential };

struct RunOptions {
    OtMode ot_mode = OtMode::kBatched;
    bool reveal_to_p1 = false;
    /// Escape hatch for experiments on uncertified codes. The privacy
    /// argument does not apply; sessions refuse without it.
    bool allow_non_minimal = false;
    /// Test hook: use this word instead of drawing the coset encoding.
    std::optional<FieldVector> forced_z;
};

/// Per-code data both parties derive before speaking. Construction fails
/// with SecurityRefusalError when the certificate is negative, unless
/// explicitly overridden.
struct ProtocolConfig {
    LinearCode code;
    WeightProfile profile;
    MinimalityReport certificate;
};

ProtocolConfig prepare_code(const LinearCode& code, bool allow_non_minimal = false);

/// Encoder endpoint (P1). A pure state machine: start() yields the frames to
/// send first, on_frame() consumes one incoming frame and yields responses.
/// Throws ProtocolAbortError on violations after queueing an ABORT frame as
/// its final response.
class SenderSession {
public:
    SenderSession(const ProtocolConfig& config, FieldVector x, std::uint64_t seed,
                  const RunOptions& opts, OtFunctionality& ot);

    std::vector<Frame> start();
    std::vector<Frame> on_frame(const Frame& frame);
    bool done() const noexcept { return state_ == State::kDone; }

    const FieldVector& encoding() const noexcept { return z_; }
    const PartyView& view() const noexcept { return view_; }
    std::optional<FieldElement> revealed_output() const noexcept { return p1_output_; }

private:
    enum class State { kStart, kAwaitHello, kServeTransfers, kAwaitReveal, kDone, kFailed };

    [[noreturn]] void fail(const std::string& reason);
    void check_hello(const Frame& frame);

    ProtocolConfig config_;
    FieldVector x_;
    FieldVector z_;
    SeededRng rng_;
    RunOptions opts_;
    OtFunctionality& ot_;
    State state_ = State::kStart;
    std::size_t singles_served_ = 0;
    PartyView view_;
    std::optional<FieldElement> p1_output_;
};

/// Evaluator endpoint (P2).
class ReceiverSession {
public:
    ReceiverSession(const ProtocolConfig& config, LinearFunctionSpec spec, std::uint64_t seed,
                    const RunOptions& opts);

    std::vector<Frame> start();
    std::vector<Frame> on_frame(const Frame& frame);
    bool done() const noexcept { return state_ == State::kDone; }

    FieldElement output() const;
    const FieldVector& selector() const noexcept { return v_; }
    const std::vector<std::size_t>& request_indices() const noexcept { return request_; }
    const PartyView& view() const noexcept { return view_; }

private:
    enum class State { kAwaitHello, kAwaitResponse, kDone, kFailed };

    [[noreturn]] void fail(const std::string& reason);
    void check_hello(const Frame& frame);
    void absorb(const std::vector<std::size_t>& asked, const std::vector<FieldElement>& got);
    std::vector<Frame> finish();

    ProtocolConfig config_;
    LinearFunctionSpec spec_;
    SeededRng rng_;
    RunOptions opts_;
    FieldVector v_;
    std::vector<std::size_t> request_;
    std::size_t next_single_ = 0;
    std::map<std::size_t, FieldElement> received_;
    State state_ = State::kAwaitHello;
    PartyView view_;
    std::optional<FieldElement> output_;
};

struct RunResult {
    FieldElement p2_output;
    std::optional<FieldElement> p1_output;
    FieldVector z;
    FieldVector selector;
    std::vector<std::size_t> request_indices;
    PartyView p1_view;
    PartyView p2_view;
    Transcript p1_transcript;
    Transcript p2_transcript;
};

/// In-process run: both sessions stepped by one driver, frames delivered in
/// causal order, every frame recorded on both transcripts. The sender's seed
/// is `seed`, the receiver's `seed + 1`.
RunResult run_protocol(const FieldVector& p1_input, const LinearFunctionSpec& p2_spec,
                       const LinearCode& code, OtFunctionality& ot, std::uint64_t seed,
                       const RunOptions& opts = {});

/// Note attached to transfer frames in transcripts: the wire carries the
/// indices in the clear, standing in for a real OT sub-protocol.
inline constexpr const char* kOtEmulationNote = "INSECURE-EMULATION";

/// kOtEmulationNote for transfer frames, empty otherwise.
std::string transcript_note_for(const Frame& frame);

}  // namespace cosec
