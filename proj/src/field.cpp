#include "cosec/field.hpp"

#include "cosec/rng.hpp"

namespace cosec {

bool is_prime(std::uint32_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint32_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t q) {
    if (a == 0) throw DivisionByZeroError("inverse of zero in F_" + std::to_string(q));
    // Extended Euclid on (a, q); q prime so gcd is 1.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = q, new_r = a;
    while (new_r != 0) {
        std::int64_t quot = r / new_r;
        t -= quot * new_t;
        std::swap(t, new_t);
        r -= quot * new_r;
        std::swap(r, new_r);
    }
    if (t < 0) t += q;
    return static_cast<std::uint32_t>(t);
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
    if (q < 2 || q > kMaxModulus)
        throw ValidationError("modulus " + std::to_string(q) + " out of range [2, " +
                              std::to_string(kMaxModulus) + "]");
    if (!is_prime(q)) throw ValidationError("modulus " + std::to_string(q) + " is not prime");
}

FieldElement PrimeField::element(std::uint64_t value) const { return FieldElement(value, *this); }
FieldElement PrimeField::zero() const { return FieldElement(0, *this); }
FieldElement PrimeField::one() const { return FieldElement(1, *this); }

FieldElement FieldElement::pow(std::uint64_t e) const {
    std::uint32_t base = v_, acc = 1;
    while (e > 0) {
        if (e & 1) acc = mul_mod(acc, base, q_);
        base = mul_mod(base, base, q_);
        e >>= 1;
    }
    return make(acc);
}

FieldElement FieldElement::from_bytes(std::span<const std::uint8_t> bytes, PrimeField field) {
    if (bytes.size() != 2) throw ValidationError("field element encoding must be 2 bytes");
    std::uint32_t v = (static_cast<std::uint32_t>(bytes[0]) << 8) | bytes[1];
    if (v >= field.modulus())
        throw ValidationError("encoded value " + std::to_string(v) + " not below modulus " +
                              std::to_string(field.modulus()));
    return FieldElement(v, field);
}

std::ostream& operator<<(std::ostream& os, FieldElement e) { return os << e.value(); }

std::uint32_t SeededRng::uniform_below(std::uint32_t bound) {
    if (bound == 0) throw ValidationError("uniform_below: bound must be >= 1");
    if (bound == 1) return 0;
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    for (;;) {
        std::uint64_t draw = gen_() & mask;
        if (draw < bound) return static_cast<std::uint32_t>(draw);
    }
}

}  // namespace cosec
