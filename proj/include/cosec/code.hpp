#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cosec/field.hpp"
#include "cosec/matrix.hpp"
#include "cosec/rng.hpp"

namespace cosec {

/// Brute-force routines refuse codes with more than this many dual codewords.
inline constexpr std::uint64_t kEnumerationCap = 1ull << 20;
/// Generalized Hamming distances additionally require r at most this.
inline constexpr std::size_t kGhwMaxRank = 8;

/// An [n, r] description held by its r x n matrix H: simultaneously the
/// parity-check matrix of the code C = ker H (dimension k = n - r) and the
/// generator matrix of the dual code C_perp (dimension r). Everything the
/// protocol cares about (selectors, weights, minimality) lives in C_perp.
class LinearCode {
public:
    LinearCode(Matrix h, std::string label);

    PrimeField field() const noexcept { return h_.field(); }
    const Matrix& h() const noexcept { return h_; }
    std::size_t r() const noexcept { return h_.rows(); }
    std::size_t n() const noexcept { return h_.cols(); }
    std::size_t k() const noexcept { return n() - r(); }
    const std::string& label() const noexcept { return label_; }

    /// q^r as a checked 64-bit count; throws CapExceededError past the cap.
    std::uint64_t dual_codeword_count() const;

private:
    Matrix h_;
    std::string label_;
};

/// Weight distribution of the q^r - 1 nonzero codewords of C_perp.
struct WeightProfile {
    std::size_t min_weight = 0;
    std::size_t max_weight = 0;
    std::map<std::size_t, std::size_t> counts;
};

struct MinimalityReport {
    bool minimal = false;
    /// On failure: ordered pair (a, b), both nonzero codewords of C_perp,
    /// supp(b) contained in supp(a), a and b linearly independent.
    std::optional<std::pair<FieldVector, FieldVector>> witness;
};

/// Visit all q^r dual codewords a*H exactly once, zero first, coefficient
/// vectors in odometer order (coordinate 0 fastest). fn(coeffs, word) returns
/// false to stop early. The word is updated incrementally, one row addition
/// per changed digit.
template <typename F>
void visit_dual_codewords(const LinearCode& code, F&& fn) {
    code.dual_codeword_count();
    const std::size_t r = code.r();
    std::vector<FieldVector> rows;
    rows.reserve(r);
    for (std::size_t i = 0; i < r; ++i) rows.push_back(code.h().row(i));

    FieldVector coeffs(code.field(), r);
    FieldVector word(code.field(), code.n());
    const std::uint32_t q = code.field().modulus();
    while (true) {
        if (!fn(static_cast<const FieldVector&>(coeffs), static_cast<const FieldVector&>(word))) {
            return;
        }
        std::size_t i = 0;
        for (; i < r; ++i) {
            if (coeffs.get(i) + 1 < q) {
                coeffs.set(i, coeffs.get(i) + 1);
                word = add(word, rows[i]);
                break;
            }
            // Rolling a digit from q-1 back to 0 subtracts (q-1)*H_i, which
            // over F_q is the same as adding H_i once.
            coeffs.set(i, 0u);
            word = add(word, rows[i]);
        }
        if (i == r) return;
    }
}

/// All q^r dual codewords materialized (includes the zero word).
std::vector<FieldVector> enumerate_dual_codewords(const LinearCode& code);

/// True iff the only dual codewords supported inside supp(c) are the scalar
/// multiples of c. Throws NotACodewordError when c is not in C_perp,
/// ValidationError when c is zero.
bool is_minimal_codeword(const LinearCode& code, const FieldVector& c);

/// Certifies every nonzero dual codeword minimal; on failure carries the
/// first violating pair found in enumeration order.
MinimalityReport is_minimal_code(const LinearCode& code);

/// True iff every two nonzero dual codewords have intersecting supports.
bool is_intersecting(const LinearCode& code);

/// d_i of C_perp: minimum union-support size over i-dimensional subcodes.
std::size_t generalized_hamming_distance(const LinearCode& code, std::size_t i);

WeightProfile weight_profile(const LinearCode& code);

/// H whose columns are the canonical representatives (first nonzero entry 1)
/// of all (q^r - 1)/(q - 1) projective points of F_q^r, lexicographic order.
LinearCode simplex_code(std::size_t r, PrimeField field);

/// Bundled example codes: a binary [9,4] minimal code and its ternary
/// [20,4] expansion, both entered digit for digit.
LinearCode example_code_9_4();
LinearCode example_code_20_4_ternary();

/// For each column of the binary H with support S, emit all (q-1)^(|S|-1)
/// canonical columns over F_q with support exactly S; groups keep the
/// original column order, lexicographic inside a group. q = 2 reproduces the
/// input columns.
LinearCode expand_binary_to_qary(const LinearCode& binary, PrimeField field);

/// Random full-row-rank r x n draws until one certifies minimal.
std::optional<LinearCode> random_minimal_search(std::size_t n, std::size_t r, PrimeField field,
                                                std::size_t trials, SeededRng& rng);

/// Text format: first line `q r n`, then r lines of n space-separated
/// entries. Lines starting with # and blank lines are skipped on load.
LinearCode load_code(const std::string& path);
void save_code(const LinearCode& code, const std::string& path);

/// The exact bytes save_code writes; also the digest preimage for HELLO.
std::string serialize_code(const LinearCode& code);
LinearCode parse_code(const std::string& text, const std::string& label);

}  // namespace cosec
