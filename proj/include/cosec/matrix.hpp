#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "cosec/field.hpp"
#include "cosec/rng.hpp"

namespace cosec {

/// Dense vector of F_q values. Immutable field, mutable entries. Entries are
/// stored as raw reduced values; at() wraps them as FieldElement.
class FieldVector {
public:
    FieldVector(PrimeField field, std::size_t n) : field_(field), v_(n, 0) {}
    FieldVector(PrimeField field, std::vector<std::uint16_t> values);
    /// Convenience for literals; every entry must already lie in [0, q).
    static FieldVector of(PrimeField field, std::initializer_list<int> values);

    PrimeField field() const noexcept { return field_; }
    std::size_t size() const noexcept { return v_.size(); }

    std::uint32_t get(std::size_t i) const { return v_.at(i); }
    FieldElement at(std::size_t i) const { return FieldElement(v_.at(i), field_); }
    void set(std::size_t i, FieldElement e);
    void set(std::size_t i, std::uint32_t reduced_value);

    const std::vector<std::uint16_t>& raw() const noexcept { return v_; }

    friend bool operator==(const FieldVector& a, const FieldVector& b) noexcept = default;
    /// Total order (modulus, length, entries) so vectors can key std::map.
    friend bool operator<(const FieldVector& a, const FieldVector& b) noexcept;

private:
    PrimeField field_;
    std::vector<std::uint16_t> v_;
};

std::ostream& operator<<(std::ostream& os, const FieldVector& v);

/// 1-based indices of the nonzero coordinates, ascending.
std::vector<std::size_t> support(const FieldVector& v);
std::size_t weight(const FieldVector& v);

FieldVector add(const FieldVector& a, const FieldVector& b);
FieldVector sub(const FieldVector& a, const FieldVector& b);
FieldVector scale(FieldElement c, const FieldVector& v);

/// Dense row-major matrix over F_q.
class Matrix {
public:
    Matrix(PrimeField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static Matrix identity(PrimeField field, std::size_t n);
    static Matrix from_rows(PrimeField field, const std::vector<std::vector<int>>& rows);

    PrimeField field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::uint32_t get(std::size_t i, std::size_t j) const { return a_.at(i * cols_ + j); }
    FieldElement at(std::size_t i, std::size_t j) const { return FieldElement(get(i, j), field_); }
    void set(std::size_t i, std::size_t j, FieldElement e);
    void set(std::size_t i, std::size_t j, std::uint32_t reduced_value);

    FieldVector row(std::size_t i) const;
    FieldVector col(std::size_t j) const;
    Matrix transposed() const;

    /// Columns selected by 1-based indices, in the order given. Index sets
    /// throughout the library (supports, revealed positions) are 1-based.
    Matrix columns_at(std::span<const std::size_t> indices_1b) const;

    friend bool operator==(const Matrix& a, const Matrix& b) noexcept = default;

private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<std::uint16_t> a_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

/// Reduced row echelon form plus the pivot column indices (0-based),
/// computed by exact elimination with first-nonzero pivot selection and
/// lowest-row-index tie break, so the result is deterministic.
struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivot_cols;
};

RowEchelon row_reduce(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Basis of {v : M v^T = 0}; size cols - rank.
std::vector<FieldVector> kernel_basis(const Matrix& m);

/// Some z with M z^T = b; throws NoSolutionError when b is outside the
/// column space.
FieldVector solve_particular(const Matrix& m, const FieldVector& b);

/// Uniform draw from {z : M z^T = b}: a particular solution plus a uniform
/// combination of the kernel basis. Kernel coefficients are drawn
/// independently, in basis order, so a seed pins the sample.
FieldVector sample_coset(const Matrix& m, const FieldVector& b, SeededRng& rng);

/// M (r x n) times v (length n) -> length r.
FieldVector matvec(const Matrix& m, const FieldVector& v);

FieldElement dot(const FieldVector& u, const FieldVector& v);

/// sum_i coeffs[i] * vecs[i].
FieldVector linear_combination(std::span<const FieldVector> vecs, const FieldVector& coeffs);

}  // namespace cosec
