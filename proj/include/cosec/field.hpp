#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <span>

#include "cosec/errors.hpp"

namespace cosec {

bool is_prime(std::uint32_t n) noexcept;

// Raw modular helpers, q prime. Values must already be reduced.
inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t q) noexcept {
    std::uint32_t s = a + b;
    return s >= q ? s - q : s;
}

inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t q) noexcept {
    return a >= b ? a - b : a + q - b;
}

inline std::uint32_t neg_mod(std::uint32_t a, std::uint32_t q) noexcept {
    return a == 0 ? 0 : q - a;
}

inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t q) noexcept {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % q);
}

// Extended Euclid; throws DivisionByZeroError on a = 0.
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t q);

class FieldElement;

/// The arithmetic context F_q for prime q. The modulus is capped at 65521
/// (the largest prime below 2^16) so every element fits the 2-byte wire
/// encoding. Immutable value type; cheap to copy.
class PrimeField {
public:
    static constexpr std::uint32_t kMaxModulus = 65521;

    explicit PrimeField(std::uint32_t q);

    std::uint32_t modulus() const noexcept { return q_; }

    /// Element with the given value reduced mod q.
    FieldElement element(std::uint64_t value) const;
    FieldElement zero() const;
    FieldElement one() const;

    friend bool operator==(PrimeField a, PrimeField b) noexcept = default;

private:
    std::uint32_t q_;
};

/// A value in [0, q) tagged with its modulus. Mixing elements of different
/// fields throws FieldMismatchError.
class FieldElement {
public:
    FieldElement(std::uint64_t value, PrimeField field)
        : v_(static_cast<std::uint16_t>(value % field.modulus())),
          q_(static_cast<std::uint16_t>(field.modulus())) {}

    std::uint32_t value() const noexcept { return v_; }
    PrimeField field() const noexcept { return PrimeField(q_); }
    std::uint32_t modulus() const noexcept { return q_; }
    bool is_zero() const noexcept { return v_ == 0; }

    FieldElement operator+(FieldElement o) const { return make(add_mod(v_, same(o), q_)); }
    FieldElement operator-(FieldElement o) const { return make(sub_mod(v_, same(o), q_)); }
    FieldElement operator*(FieldElement o) const { return make(mul_mod(v_, same(o), q_)); }
    FieldElement operator-() const { return make(neg_mod(v_, q_)); }
    FieldElement inverse() const { return make(inv_mod(v_, q_)); }
    FieldElement operator/(FieldElement o) const { return make(mul_mod(v_, inv_mod(same(o), q_), q_)); }

    FieldElement pow(std::uint64_t e) const;

    friend bool operator==(FieldElement a, FieldElement b) noexcept = default;

    /// 2-byte big-endian wire encoding.
    std::array<std::uint8_t, 2> to_bytes() const noexcept {
        return {static_cast<std::uint8_t>(v_ >> 8), static_cast<std::uint8_t>(v_ & 0xff)};
    }
    static FieldElement from_bytes(std::span<const std::uint8_t> bytes, PrimeField field);

private:
    FieldElement make(std::uint32_t v) const noexcept {
        FieldElement e = *this;
        e.v_ = static_cast<std::uint16_t>(v);
        return e;
    }
    // Returns o's value after checking the moduli agree.
    std::uint32_t same(FieldElement o) const {
        if (o.q_ != q_)
            throw FieldMismatchError("field mismatch: F_" + std::to_string(q_) + " vs F_" +
                                     std::to_string(o.q_));
        return o.v_;
    }

    std::uint16_t v_;
    std::uint16_t q_;
};

std::ostream& operator<<(std::ostream& os, FieldElement e);

}  // namespace cosec
