#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cosec/field.hpp"

namespace cosec {

/// Deterministic seedable generator. mt19937_64 is fully specified by the
/// standard and the rejection step below avoids the implementation-defined
/// std::uniform_int_distribution, so a seed pins the same draw sequence on
/// every platform. Single-owner: never share an instance between threads.
class SeededRng {
public:
    /// Identifier recorded in transcripts and party views.
    static constexpr const char* kAlgorithmId = "mt19937_64/mask-reject-v1";

    explicit SeededRng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    /// Unbiased uniform draw from [0, bound) via power-of-two masking and
    /// rejection. bound must be >= 1.
    std::uint32_t uniform_below(std::uint32_t bound);

    FieldElement uniform_element(PrimeField field) {
        return field.element(uniform_below(field.modulus()));
    }

    /// Deterministic Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = uniform_below(static_cast<std::uint32_t>(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

inline FieldElement uniform_element(PrimeField field, SeededRng& rng) {
    return rng.uniform_element(field);
}

}  // namespace cosec
