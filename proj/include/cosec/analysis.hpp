#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cosec/code.hpp"
#include "cosec/matrix.hpp"
#include "cosec/rng.hpp"

namespace cosec {

using BigInt = boost::multiprecision::cpp_int;

/// What a set of revealed coordinates gives away about the message.
struct LeakageReport {
    std::vector<std::size_t> revealed_positions;  // 1-based, ascending
    std::size_t leaked_dimension = 0;             // dim{c in C_perp : supp(c) inside J}
    std::uint64_t posterior_size = 0;             // distinct messages still possible
    bool posterior_uniform = false;
};

/// dim{c in C_perp : supp(c) inside J}. Zero means the J-coordinates of an
/// encoding say nothing about the message; the protocol's revealed set
/// supp(V) always scores exactly 1 for minimal codes.
std::size_t leakage_dimension(const LinearCode& code, const std::vector<std::size_t>& j_1b);

/// Exhaustive posterior: every completion of the revealed coordinates is
/// decoded and the resulting messages counted. Keys are messages, values
/// occurrence counts over the q^(n-|revealed|) completions.
std::map<FieldVector, std::uint64_t> posterior_messages(
    const LinearCode& code, const std::vector<std::pair<std::size_t, FieldElement>>& revealed);

LeakageReport analyze_reveal(const LinearCode& code,
                             const std::vector<std::pair<std::size_t, FieldElement>>& revealed);

struct SweepRow {
    std::size_t set_size = 0;
    std::size_t max_leakage = 0;
    bool exhaustive = true;      // false when sets were sampled
    std::uint64_t sets_checked = 0;
};

/// Worst-case leakage per revealed-set size, 0..up_to_size. Exhaustive over
/// all subsets for n <= 12, otherwise 10^4 sampled sets per size drawn from
/// the given rng.
std::vector<SweepRow> wtc2_sweep(const LinearCode& code, std::size_t up_to_size, SeededRng& rng);

/// Number of k-dimensional subspaces of F_q^n, exact.
BigInt gaussian_binomial(std::size_t n, std::size_t k, std::uint32_t q);

struct MaxBoundCheck {
    bool holds = false;
    BigInt lhs;        // q^r
    BigInt rhs;        // 1 + (q-1) * binomial(n, floor(n/2))
    double rate = 0;   // r/n
    double max_rate = 0;  // log_q 2
};

/// The Sperner-style cardinality bound every minimal code must satisfy.
MaxBoundCheck max_bound_check(const LinearCode& code);

/// Rate threshold 1/2 log_q(q^2 / (q^2 - q + 1)) below which random codes
/// are guaranteed to contain minimal ones for large n.
double min_bound_rate(std::uint32_t q);

/// Counting margin [n,k]_q - [n-2,k-2]_q * (q^2-q+1)^n. Positive means the
/// count of k-dim codes exceeds the bound on codes containing a bad pair.
BigInt existence_margin(std::size_t n, std::size_t k, std::uint32_t q);

struct BoundsRow {
    std::uint32_t q = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    BigInt gaussian_nk;
    BigInt bad_pair_bound;
    BigInt margin;
    double max_rate = 0;
    double min_rate = 0;
};

BoundsRow bounds_row(std::size_t n, std::size_t k, std::uint32_t q);

}  // namespace cosec
