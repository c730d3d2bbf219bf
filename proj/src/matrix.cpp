#include "cosec/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "cosec/errors.hpp"

namespace cosec {

namespace {

void require_same_field(const PrimeField& a, const PrimeField& b) {
    if (!(a == b)) {
        std::ostringstream os;
        os << "field mismatch: GF(" << a.modulus() << ") vs GF(" << b.modulus() << ")";
        throw FieldMismatchError(os.str());
    }
}

void require_same_size(std::size_t a, std::size_t b) {
    if (a != b) {
        std::ostringstream os;
        os << "dimension mismatch: " << a << " vs " << b;
        throw DimensionMismatchError(os.str());
    }
}

}  // namespace

FieldVector::FieldVector(PrimeField field, std::vector<std::uint16_t> values)
    : field_(field), v_(std::move(values)) {
    for (std::uint16_t x : v_) {
        if (x >= field_.modulus()) {
            std::ostringstream os;
            os << "entry " << x << " out of range for GF(" << field_.modulus() << ")";
            throw ValidationError(os.str());
        }
    }
}

FieldVector FieldVector::of(PrimeField field, std::initializer_list<int> values) {
    std::vector<std::uint16_t> raw;
    raw.reserve(values.size());
    for (int x : values) {
        if (x < 0 || static_cast<std::uint32_t>(x) >= field.modulus()) {
            std::ostringstream os;
            os << "entry " << x << " out of range for GF(" << field.modulus() << ")";
            throw ValidationError(os.str());
        }
        raw.push_back(static_cast<std::uint16_t>(x));
    }
    return FieldVector(field, std::move(raw));
}

void FieldVector::set(std::size_t i, FieldElement e) {
    require_same_field(field_, e.field());
    v_.at(i) = static_cast<std::uint16_t>(e.value());
}

void FieldVector::set(std::size_t i, std::uint32_t reduced_value) {
    set(i, FieldElement(reduced_value, field_));
}

bool operator<(const FieldVector& a, const FieldVector& b) noexcept {
    if (a.field_.modulus() != b.field_.modulus()) return a.field_.modulus() < b.field_.modulus();
    return a.v_ < b.v_;
}

std::ostream& operator<<(std::ostream& os, const FieldVector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v.get(i);
    }
    return os << ')';
}

std::vector<std::size_t> support(const FieldVector& v) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v.get(i) != 0) idx.push_back(i + 1);
    }
    return idx;
}

std::size_t weight(const FieldVector& v) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v.get(i) != 0) ++w;
    }
    return w;
}

FieldVector add(const FieldVector& a, const FieldVector& b) {
    require_same_field(a.field(), b.field());
    require_same_size(a.size(), b.size());
    FieldVector out(a.field(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out.set(i, add_mod(a.get(i), b.get(i), a.field().modulus()));
    }
    return out;
}

FieldVector sub(const FieldVector& a, const FieldVector& b) {
    require_same_field(a.field(), b.field());
    require_same_size(a.size(), b.size());
    FieldVector out(a.field(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out.set(i, sub_mod(a.get(i), b.get(i), a.field().modulus()));
    }
    return out;
}

FieldVector scale(FieldElement c, const FieldVector& v) {
    require_same_field(c.field(), v.field());
    FieldVector out(v.field(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.set(i, mul_mod(c.value(), v.get(i), v.field().modulus()));
    }
    return out;
}

Matrix Matrix::identity(PrimeField field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1u);
    return m;
}

Matrix Matrix::from_rows(PrimeField field, const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) throw ValidationError("matrix needs at least one row");
    const std::size_t cols = rows.front().size();
    if (cols == 0) throw ValidationError("matrix needs at least one column");
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) {
            throw DimensionMismatchError("ragged rows in matrix literal");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            int x = rows[i][j];
            if (x < 0 || static_cast<std::uint32_t>(x) >= field.modulus()) {
                std::ostringstream os;
                os << "entry " << x << " out of range for GF(" << field.modulus() << ")";
                throw ValidationError(os.str());
            }
            m.set(i, j, static_cast<std::uint32_t>(x));
        }
    }
    return m;
}

void Matrix::set(std::size_t i, std::size_t j, FieldElement e) {
    require_same_field(field_, e.field());
    a_.at(i * cols_ + j) = static_cast<std::uint16_t>(e.value());
}

void Matrix::set(std::size_t i, std::size_t j, std::uint32_t reduced_value) {
    set(i, j, FieldElement(reduced_value, field_));
}

FieldVector Matrix::row(std::size_t i) const {
    FieldVector out(field_, cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.set(j, get(i, j));
    return out;
}

FieldVector Matrix::col(std::size_t j) const {
    FieldVector out(field_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.set(i, get(i, j));
    return out;
}

Matrix Matrix::transposed() const {
    Matrix out(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out.set(j, i, get(i, j));
    }
    return out;
}

Matrix Matrix::columns_at(std::span<const std::size_t> indices_1b) const {
    Matrix out(field_, rows_, indices_1b.size());
    for (std::size_t k = 0; k < indices_1b.size(); ++k) {
        std::size_t j = indices_1b[k];
        if (j < 1 || j > cols_) {
            std::ostringstream os;
            os << "column index " << j << " out of range [1," << cols_ << "]";
            throw ValidationError(os.str());
        }
        for (std::size_t i = 0; i < rows_; ++i) out.set(i, k, get(i, j - 1));
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) os << '\n';
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m.get(i, j);
        }
    }
    return os;
}

RowEchelon row_reduce(const Matrix& m) {
    const std::uint32_t q = m.field().modulus();
    Matrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t col = 0; col < a.cols() && pr < a.rows(); ++col) {
        std::size_t sel = a.rows();
        for (std::size_t i = pr; i < a.rows(); ++i) {
            if (a.get(i, col) != 0) { sel = i; break; }
        }
        if (sel == a.rows()) continue;
        if (sel != pr) {
            for (std::size_t j = 0; j < a.cols(); ++j) {
                std::uint32_t t = a.get(pr, j);
                a.set(pr, j, a.get(sel, j));
                a.set(sel, j, t);
            }
        }
        std::uint32_t inv = inv_mod(a.get(pr, col), q);
        for (std::size_t j = 0; j < a.cols(); ++j) {
            a.set(pr, j, mul_mod(inv, a.get(pr, j), q));
        }
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == pr) continue;
            std::uint32_t f = a.get(i, col);
            if (f == 0) continue;
            for (std::size_t j = 0; j < a.cols(); ++j) {
                a.set(i, j, sub_mod(a.get(i, j), mul_mod(f, a.get(pr, j), q), q));
            }
        }
        pivots.push_back(col);
        ++pr;
    }
    return RowEchelon{std::move(a), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivot_cols.size(); }

std::vector<FieldVector> kernel_basis(const Matrix& m) {
    const std::uint32_t q = m.field().modulus();
    RowEchelon re = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : re.pivot_cols) is_pivot[c] = true;

    std::vector<FieldVector> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        FieldVector v(m.field(), m.cols());
        v.set(free_col, 1u);
        for (std::size_t r = 0; r < re.pivot_cols.size(); ++r) {
            std::uint32_t coeff = re.reduced.get(r, free_col);
            v.set(re.pivot_cols[r], sub_mod(0, coeff, q));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

FieldVector solve_particular(const Matrix& m, const FieldVector& b) {
    require_same_field(m.field(), b.field());
    require_same_size(m.rows(), b.size());

    Matrix aug(m.field(), m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.set(i, j, m.get(i, j));
        aug.set(i, m.cols(), b.get(i));
    }
    RowEchelon re = row_reduce(aug);
    for (std::size_t c : re.pivot_cols) {
        if (c == m.cols()) throw NoSolutionError("right-hand side is outside the column space");
    }
    FieldVector z(m.field(), m.cols());
    for (std::size_t r = 0; r < re.pivot_cols.size(); ++r) {
        z.set(re.pivot_cols[r], re.reduced.get(r, m.cols()));
    }
    return z;
}

FieldVector sample_coset(const Matrix& m, const FieldVector& b, SeededRng& rng) {
    FieldVector z = solve_particular(m, b);
    for (const FieldVector& k : kernel_basis(m)) {
        FieldElement c = uniform_element(m.field(), rng);
        z = add(z, scale(c, k));
    }
    return z;
}

FieldVector matvec(const Matrix& m, const FieldVector& v) {
    require_same_field(m.field(), v.field());
    require_same_size(m.cols(), v.size());
    const std::uint32_t q = m.field().modulus();
    FieldVector out(m.field(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::uint32_t acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            acc = add_mod(acc, mul_mod(m.get(i, j), v.get(j), q), q);
        }
        out.set(i, acc);
    }
    return out;
}

FieldElement dot(const FieldVector& u, const FieldVector& v) {
    require_same_field(u.field(), v.field());
    require_same_size(u.size(), v.size());
    const std::uint32_t q = u.field().modulus();
    std::uint32_t acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc = add_mod(acc, mul_mod(u.get(i), v.get(i), q), q);
    }
    return FieldElement(acc, u.field());
}

FieldVector linear_combination(std::span<const FieldVector> vecs, const FieldVector& coeffs) {
    if (vecs.size() != coeffs.size()) {
        throw DimensionMismatchError("coefficient count does not match vector count");
    }
    if (vecs.empty()) throw ValidationError("linear combination of nothing");
    FieldVector acc(vecs.front().field(), vecs.front().size());
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        acc = add(acc, scale(coeffs.at(i), vecs[i]));
    }
    return acc;
}

}  // namespace cosec
