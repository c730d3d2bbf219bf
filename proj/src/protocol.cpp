#include "cosec/protocol.hpp"

#include <algorithm>
#include <deque>
#include <span>
#include <sstream>

#include "cosec/errors.hpp"

namespace cosec {

namespace {

std::string vec_repr(const FieldVector& v) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ',';
        out << v.get(i);
    }
    out << ')';
    return out.str();
}

std::string ot_count_event(std::size_t count) {
    return "ot-count " + std::to_string(count);
}

std::string ot_values_event(const std::vector<std::size_t>& asked,
                            const std::vector<FieldElement>& got) {
    std::ostringstream out;
    out << "ot-values";
    for (std::size_t i = 0; i < asked.size(); ++i) {
        out << ' ' << asked[i] << '=' << got[i].value();
    }
    return out.str();
}

}  // namespace

std::string transcript_note_for(const Frame& frame) {
    if (frame.type == FrameType::kOtRequest || frame.type == FrameType::kOtResponse) {
        return kOtEmulationNote;
    }
    return "";
}

LinearFunctionSpec scalar_product_spec(const FieldVector& y) {
    if (weight(y) == 0) {
        throw ValidationError("scalar product with y = 0 is constant and has an empty selector");
    }
    return {y, y.field().zero(), "scalar_product"};
}

FieldVector augment_squared(const FieldVector& x) {
    FieldVector out(x.field(), x.size() + 1);
    FieldElement acc = x.field().zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.set(i, x.get(i));
        acc = acc + x.at(i) * x.at(i);
    }
    out.set(x.size(), acc.value());
    return out;
}

LinearFunctionSpec squared_euclidean_spec(const FieldVector& y) {
    const PrimeField field = y.field();
    FieldVector coeffs(field, y.size() + 1);
    FieldElement post = field.zero();
    const FieldElement minus_two = -(field.one() + field.one());
    for (std::size_t i = 0; i < y.size(); ++i) {
        coeffs.set(i, (minus_two * y.at(i)).value());
        post = post + y.at(i) * y.at(i);
    }
    coeffs.set(y.size(), 1u);
    return {coeffs, post, "squared_euclidean"};
}

LinearFunctionSpec hamming_spec(const FieldVector& y) {
    const PrimeField field = y.field();
    if (field.modulus() <= y.size()) {
        throw ValidationError("hamming distance needs a field modulus larger than the length " +
                              std::to_string(y.size()));
    }
    FieldVector coeffs(field, y.size());
    std::uint32_t ones = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const std::uint32_t yi = y.get(i);
        if (yi > 1) throw ValidationError("hamming distance expects a 0/1-valued vector");
        ones += yi;
        // 1 - 2*y_i, i.e. +1 on zeros and -1 on ones.
        coeffs.set(i, (field.one() - field.element(yi) - field.element(yi)).value());
    }
    return {coeffs, field.element(ones), "hamming"};
}

LinearFunctionSpec custom_spec(FieldVector coeffs, FieldElement post_add) {
    if (coeffs.field().modulus() != post_add.field().modulus()) {
        throw FieldMismatchError("coefficients and constant live in different fields");
    }
    if (weight(coeffs) == 0) {
        throw ValidationError("all-zero coefficient vector has an empty selector");
    }
    return {std::move(coeffs), post_add, "custom"};
}

FieldVector compute_selector(const LinearCode& code, const LinearFunctionSpec& spec) {
    if (spec.coeffs.size() != code.r()) {
        throw DimensionMismatchError("coefficient count " + std::to_string(spec.coeffs.size()) +
                                     " does not match the code dimension " +
                                     std::to_string(code.r()));
    }
    std::vector<FieldVector> rows;
    rows.reserve(code.r());
    for (std::size_t i = 0; i < code.r(); ++i) rows.push_back(code.h().row(i));
    return linear_combination(rows, spec.coeffs);
}

std::vector<std::size_t> build_request(const FieldVector& v, std::size_t w_max, SeededRng& rng) {
    std::vector<std::size_t> out = support(v);
    const std::size_t t = out.size();
    if (t == 0) throw ValidationError("selector is zero; nothing to request");
    if (t > w_max) {
        throw ValidationError("selector weight " + std::to_string(t) + " exceeds the cap " +
                              std::to_string(w_max));
    }
    // Pad with repeats of supported indices so the request length is the
    // public constant w_max while the index set stays exactly supp(v).
    for (std::size_t j = t; j < w_max; ++j) {
        out.push_back(out[rng.uniform_below(static_cast<std::uint32_t>(t))]);
    }
    rng.shuffle(out);
    return out;
}

std::vector<FieldElement> IdealOt::transfer(const FieldVector& values,
                                            const std::vector<std::size_t>& indices_1b,
                                            std::vector<std::string>* sender_events,
                                            std::vector<std::string>* receiver_events) {
    std::vector<FieldElement> out;
    out.reserve(indices_1b.size());
    for (std::size_t idx : indices_1b) {
        if (idx < 1 || idx > values.size()) {
            throw ValidationError("transfer index " + std::to_string(idx) +
                                  " outside 1.." + std::to_string(values.size()));
        }
        out.push_back(values.at(idx - 1));
    }
    if (sender_events) sender_events->push_back(ot_count_event(indices_1b.size()));
    if (receiver_events) receiver_events->push_back(ot_values_event(indices_1b, out));
    return out;
}

ProtocolConfig prepare_code(const LinearCode& code, bool allow_non_minimal) {
    ProtocolConfig config{code, weight_profile(code), is_minimal_code(code)};
    if (!config.certificate.minimal && !allow_non_minimal) {
        throw SecurityRefusalError(
            "code '" + code.label() +
            "' is not minimal: a revealed support could be probed by a strictly smaller "
            "codeword, so the one-dimensional leakage guarantee fails; rerun with the "
            "explicit unsafe override to experiment anyway");
    }
    return config;
}

// --- SenderSession ---------------------------------------------------------

SenderSession::SenderSession(const ProtocolConfig& config, FieldVector x, std::uint64_t seed,
                             const RunOptions& opts, OtFunctionality& ot)
    : config_(config),
      x_(std::move(x)),
      z_(config.code.field(), config.code.n()),
      rng_(seed),
      opts_(opts),
      ot_(ot),
      view_("p1", seed) {
    if (x_.size() != config_.code.r()) {
        throw DimensionMismatchError("input length " + std::to_string(x_.size()) +
                                     " does not match the code dimension " +
                                     std::to_string(config_.code.r()));
    }
    if (opts_.forced_z) {
        const FieldVector& forced = *opts_.forced_z;
        if (forced.size() != config_.code.n()) {
            throw DimensionMismatchError("forced encoding has length " +
                                         std::to_string(forced.size()) + ", expected " +
                                         std::to_string(config_.code.n()));
        }
        if (!(coset_decode(config_.code, forced) == x_)) {
            throw ValidationError("forced encoding does not encode the declared input");
        }
        z_ = forced;
    } else {
        z_ = coset_encode(config_.code, x_, rng_);
    }
    view_.set_input("x=" + vec_repr(x_));
}

std::vector<Frame> SenderSession::start() {
    if (state_ != State::kStart) throw Error("sender session already started");
    state_ = State::kAwaitHello;
    return {make_hello(config_.code)};
}

void SenderSession::fail(const std::string& reason) {
    state_ = State::kFailed;
    throw ProtocolAbortError(reason);
}

void SenderSession::check_hello(const Frame& frame) {
    if (!(parse_hello(frame) == parse_hello(make_hello(config_.code)))) {
        fail("peer announced different code parameters or digest");
    }
}

std::vector<Frame> SenderSession::on_frame(const Frame& frame) {
    if (frame.type == FrameType::kAbort) {
        state_ = State::kFailed;
        throw ProtocolAbortError("peer aborted: " + parse_abort(frame));
    }
    switch (state_) {
        case State::kAwaitHello: {
            if (frame.type != FrameType::kHello) {
                fail(std::string("expected HELLO, got ") + frame_type_name(frame.type));
            }
            check_hello(frame);
            view_.add_event("recv HELLO " + to_hex(encode_frame(frame)));
            state_ = State::kServeTransfers;
            return {};
        }
        case State::kServeTransfers: {
            if (frame.type != FrameType::kOtRequest) {
                fail(std::string("expected OT_REQUEST, got ") + frame_type_name(frame.type));
            }
            const std::vector<std::size_t> indices = parse_ot_request(frame);
            for (std::size_t idx : indices) {
                if (idx > config_.code.n()) fail("requested index out of range");
            }
            const std::size_t w_max = config_.profile.max_weight;
            if (opts_.ot_mode == OtMode::kBatched) {
                if (indices.size() != w_max) {
                    fail("batched request must ask for exactly " + std::to_string(w_max) +
                         " indices");
                }
            } else if (indices.size() != 1) {
                fail("sequential request must ask for exactly one index");
            }
            std::vector<std::string> events;
            const std::vector<FieldElement> values = ot_.transfer(z_, indices, &events, nullptr);
            for (const std::string& e : events) view_.add_event(e);
            if (opts_.ot_mode == OtMode::kBatched || ++singles_served_ == w_max) {
                state_ = opts_.reveal_to_p1 ? State::kAwaitReveal : State::kDone;
            }
            return {make_ot_response(values)};
        }
        case State::kAwaitReveal: {
            if (frame.type != FrameType::kResultReveal) {
                fail(std::string("expected RESULT_REVEAL, got ") + frame_type_name(frame.type));
            }
            view_.add_event("recv RESULT_REVEAL " + to_hex(encode_frame(frame)));
            p1_output_ = parse_result_reveal(frame, config_.code.field());
            view_.set_output(*p1_output_);
            state_ = State::kDone;
            return {};
        }
        case State::kStart:
        case State::kDone:
        case State::kFailed:
            fail(std::string("unexpected ") + frame_type_name(frame.type) + " frame");
    }
    fail("unreachable");
}

// --- ReceiverSession -------------------------------------------------------

ReceiverSession::ReceiverSession(const ProtocolConfig& config, LinearFunctionSpec spec,
                                 std::uint64_t seed, const RunOptions& opts)
    : config_(config),
      spec_(std::move(spec)),
      rng_(seed),
      opts_(opts),
      v_(config.code.field(), config.code.n()),
      view_("p2", seed) {
    if (spec_.coeffs.field().modulus() != config_.code.field().modulus()) {
        throw FieldMismatchError("function coefficients live in a different field than the code");
    }
    if (weight(spec_.coeffs) == 0) {
        throw ValidationError("all-zero coefficient vector has an empty selector");
    }
    v_ = compute_selector(config_.code, spec_);
    request_ = build_request(v_, config_.profile.max_weight, rng_);
    view_.set_input("f=" + spec_.label + " coeffs=" + vec_repr(spec_.coeffs) +
                    " post_add=" + std::to_string(spec_.post_add.value()));
}

std::vector<Frame> ReceiverSession::start() {
    // The evaluator speaks only after the encoder's HELLO.
    return {};
}

void ReceiverSession::fail(const std::string& reason) {
    state_ = State::kFailed;
    throw ProtocolAbortError(reason);
}

void ReceiverSession::check_hello(const Frame& frame) {
    if (!(parse_hello(frame) == parse_hello(make_hello(config_.code)))) {
        fail("peer announced different code parameters or digest");
    }
}

void ReceiverSession::absorb(const std::vector<std::size_t>& asked,
                             const std::vector<FieldElement>& got) {
    view_.add_event(ot_values_event(asked, got));
    for (std::size_t i = 0; i < asked.size(); ++i) {
        auto [it, inserted] = received_.insert({asked[i], got[i]});
        if (!inserted && !(it->second == got[i])) {
            fail("repeated index delivered inconsistent values");
        }
    }
}

std::vector<Frame> ReceiverSession::finish() {
    FieldElement acc = spec_.post_add;
    for (const auto& [idx, value] : received_) {
        acc = acc + v_.at(idx - 1) * value;
    }
    output_ = acc;
    view_.set_output(acc);
    state_ = State::kDone;
    if (opts_.reveal_to_p1) return {make_result_reveal(acc)};
    return {};
}

std::vector<Frame> ReceiverSession::on_frame(const Frame& frame) {
    if (frame.type == FrameType::kAbort) {
        state_ = State::kFailed;
        throw ProtocolAbortError("peer aborted: " + parse_abort(frame));
    }
    switch (state_) {
        case State::kAwaitHello: {
            if (frame.type != FrameType::kHello) {
                fail(std::string("expected HELLO, got ") + frame_type_name(frame.type));
            }
            check_hello(frame);
            view_.add_event("recv HELLO " + to_hex(encode_frame(frame)));
            state_ = State::kAwaitResponse;
            if (opts_.ot_mode == OtMode::kBatched) {
                return {make_hello(config_.code), make_ot_request(request_)};
            }
            next_single_ = 1;
            return {make_hello(config_.code), make_ot_request({request_[0]})};
        }
        case State::kAwaitResponse: {
            if (frame.type != FrameType::kOtResponse) {
                fail(std::string("expected OT_RESPONSE, got ") + frame_type_name(frame.type));
            }
            const std::vector<FieldElement> values =
                parse_ot_response(frame, config_.code.field());
            if (opts_.ot_mode == OtMode::kBatched) {
                if (values.size() != request_.size()) {
                    fail("response carried " + std::to_string(values.size()) + " values, expected " +
                         std::to_string(request_.size()));
                }
                absorb(request_, values);
                return finish();
            }
            if (values.size() != 1) fail("sequential response must carry one value");
            absorb({request_[next_single_ - 1]}, values);
            if (next_single_ < request_.size()) {
                return {make_ot_request({request_[next_single_++]})};
            }
            return finish();
        }
        case State::kDone:
        case State::kFailed:
            fail(std::string("unexpected ") + frame_type_name(frame.type) + " frame");
    }
    fail("unreachable");
}

FieldElement ReceiverSession::output() const {
    if (!output_) throw Error("protocol has not produced an output yet");
    return *output_;
}

// --- local driver -----------------------------------------------------------

RunResult run_protocol(const FieldVector& p1_input, const LinearFunctionSpec& p2_spec,
                       const LinearCode& code, OtFunctionality& ot, std::uint64_t seed,
                       const RunOptions& opts) {
    const ProtocolConfig config = prepare_code(code, opts.allow_non_minimal);
    SenderSession p1(config, p1_input, seed, opts, ot);
    ReceiverSession p2(config, p2_spec, seed + 1, opts);
    Transcript t1("p1");
    Transcript t2("p2");

    struct Hop {
        bool to_p2;
        Frame frame;
    };
    std::deque<Hop> pending;
    const auto send_from_p1 = [&](const Frame& f) {
        t1.record("send", f, transcript_note_for(f));
        pending.push_back({true, f});
    };
    const auto send_from_p2 = [&](const Frame& f) {
        t2.record("send", f, transcript_note_for(f));
        pending.push_back({false, f});
    };

    for (const Frame& f : p1.start()) send_from_p1(f);
    for (const Frame& f : p2.start()) send_from_p2(f);

    while (!pending.empty()) {
        const Hop hop = pending.front();
        pending.pop_front();
        Transcript& dest_t = hop.to_p2 ? t2 : t1;
        dest_t.record("recv", hop.frame, transcript_note_for(hop.frame));
        std::vector<Frame> replies;
        try {
            replies = hop.to_p2 ? p2.on_frame(hop.frame) : p1.on_frame(hop.frame);
        } catch (const ProtocolAbortError& e) {
            if (hop.frame.type != FrameType::kAbort) {
                // Tell the peer before failing, as a real endpoint would.
                const Frame ab = make_abort(e.what());
                if (hop.to_p2) {
                    t2.record("send", ab);
                    t1.record("recv", ab);
                    try {
                        p1.on_frame(ab);
                    } catch (const ProtocolAbortError&) {
                    }
                } else {
                    t1.record("send", ab);
                    t2.record("recv", ab);
                    try {
                        p2.on_frame(ab);
                    } catch (const ProtocolAbortError&) {
                    }
                }
            }
            throw;
        }
        for (const Frame& f : replies) {
            if (hop.to_p2) {
                send_from_p2(f);
            } else {
                send_from_p1(f);
            }
        }
    }

    if (!p1.done() || !p2.done()) throw Error("protocol stalled before completion");
    return RunResult{p2.output(),        p1.revealed_output(),  p1.encoding(),
                     p2.selector(),      p2.request_indices(),  p1.view(),
                     p2.view(),          std::move(t1),         std::move(t2)};
}

}  // namespace cosec
