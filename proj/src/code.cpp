#include "cosec/code.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "cosec/errors.hpp"

namespace cosec {

namespace {

std::vector<std::size_t> complement_1b(const std::vector<std::size_t>& idx_1b, std::size_t n) {
    std::vector<bool> in(n + 1, false);
    for (std::size_t j : idx_1b) in[j] = true;
    std::vector<std::size_t> out;
    for (std::size_t j = 1; j <= n; ++j) {
        if (!in[j]) out.push_back(j);
    }
    return out;
}

// dim{w in C_perp : supp(w) inside J} = r - rank(H restricted to the
// complement of J), because coefficient vectors a with a*H vanishing off J
// form the kernel of that restriction.
std::size_t supported_subspace_dim(const LinearCode& code, const std::vector<std::size_t>& j_1b) {
    std::vector<std::size_t> comp = complement_1b(j_1b, code.n());
    return code.r() - rank(code.h().columns_at(comp));
}

bool words_dependent(const FieldVector& a, const FieldVector& b) {
    Matrix m(a.field(), 2, a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        m.set(0, j, a.get(j));
        m.set(1, j, b.get(j));
    }
    return rank(m) <= 1;
}

}  // namespace

LinearCode::LinearCode(Matrix h, std::string label) : h_(std::move(h)), label_(std::move(label)) {
    if (h_.rows() < 1) throw ValidationError("code needs at least one row");
    if (h_.cols() < h_.rows()) {
        std::ostringstream os;
        os << "code length " << h_.cols() << " smaller than dimension " << h_.rows();
        throw ValidationError(os.str());
    }
    if (h_.cols() > 65535) throw ValidationError("code length exceeds 65535 (2-byte indices)");
    if (rank(h_) != h_.rows()) {
        throw RankDeficientError("matrix rows are linearly dependent");
    }
}

std::uint64_t LinearCode::dual_codeword_count() const {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < r(); ++i) {
        count *= field().modulus();
        if (count > kEnumerationCap) {
            std::ostringstream os;
            os << "q^r = " << field().modulus() << "^" << r()
               << " exceeds the enumeration cap 2^20";
            throw CapExceededError(os.str());
        }
    }
    return count;
}

std::vector<FieldVector> enumerate_dual_codewords(const LinearCode& code) {
    std::vector<FieldVector> out;
    out.reserve(static_cast<std::size_t>(code.dual_codeword_count()));
    visit_dual_codewords(code, [&](const FieldVector&, const FieldVector& word) {
        out.push_back(word);
        return true;
    });
    return out;
}

bool is_minimal_codeword(const LinearCode& code, const FieldVector& c) {
    if (c.size() != code.n()) throw DimensionMismatchError("codeword length differs from n");
    if (weight(c) == 0) throw ValidationError("minimality is defined for nonzero codewords");
    Matrix stacked(code.field(), code.r() + 1, code.n());
    for (std::size_t i = 0; i < code.r(); ++i) {
        for (std::size_t j = 0; j < code.n(); ++j) stacked.set(i, j, code.h().get(i, j));
    }
    for (std::size_t j = 0; j < code.n(); ++j) stacked.set(code.r(), j, c.get(j));
    if (rank(stacked) != code.r()) {
        throw NotACodewordError("vector is not in the row space of H");
    }
    return supported_subspace_dim(code, support(c)) == 1;
}

MinimalityReport is_minimal_code(const LinearCode& code) {
    MinimalityReport report;
    report.minimal = true;
    visit_dual_codewords(code, [&](const FieldVector&, const FieldVector& word) {
        if (weight(word) == 0) return true;
        std::vector<std::size_t> supp = support(word);
        if (supported_subspace_dim(code, supp) == 1) return true;

        // Recover a concrete independent witness supported inside supp(word).
        std::vector<std::size_t> comp = complement_1b(supp, code.n());
        Matrix restricted = code.h().columns_at(comp).transposed();
        for (const FieldVector& a : kernel_basis(restricted)) {
            std::vector<FieldVector> rows;
            for (std::size_t i = 0; i < code.r(); ++i) rows.push_back(code.h().row(i));
            FieldVector w = linear_combination(rows, a);
            if (!words_dependent(word, w)) {
                report.minimal = false;
                report.witness = std::make_pair(word, w);
                return false;
            }
        }
        return true;
    });
    return report;
}

bool is_intersecting(const LinearCode& code) {
    bool ok = true;
    visit_dual_codewords(code, [&](const FieldVector&, const FieldVector& word) {
        if (weight(word) == 0) return true;
        // A word disjoint from this one exists iff coefficients vanishing on
        // supp(word) exist, i.e. the support columns do not span F_q^r.
        if (rank(code.h().columns_at(support(word))) < code.r()) {
            ok = false;
            return false;
        }
        return true;
    });
    return ok;
}

std::size_t generalized_hamming_distance(const LinearCode& code, std::size_t i) {
    if (i < 1 || i > code.r()) {
        std::ostringstream os;
        os << "subcode dimension " << i << " out of range [1," << code.r() << "]";
        throw ValidationError(os.str());
    }
    if (code.r() > kGhwMaxRank) {
        std::ostringstream os;
        os << "generalized Hamming distances limited to r <= " << kGhwMaxRank;
        throw CapExceededError(os.str());
    }
    code.dual_codeword_count();

    const std::size_t r = code.r();
    const std::uint32_t q = code.field().modulus();
    std::vector<FieldVector> rows;
    for (std::size_t t = 0; t < r; ++t) rows.push_back(code.h().row(t));

    std::size_t best = code.n() + 1;
    // Every i-dimensional coefficient subspace appears as exactly one i x r
    // reduced echelon matrix: choose pivot columns, sweep the free cells.
    std::vector<std::size_t> piv(i);
    for (std::size_t t = 0; t < i; ++t) piv[t] = t;
    while (true) {
        std::vector<bool> is_piv(r, false);
        for (std::size_t p : piv) is_piv[p] = true;
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (std::size_t t = 0; t < i; ++t) {
            for (std::size_t j = piv[t] + 1; j < r; ++j) {
                if (!is_piv[j]) cells.emplace_back(t, j);
            }
        }
        Matrix a(code.field(), i, r);
        for (std::size_t t = 0; t < i; ++t) a.set(t, piv[t], 1u);
        std::vector<std::uint32_t> vals(cells.size(), 0);
        while (true) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                a.set(cells[c].first, cells[c].second, vals[c]);
            }
            std::vector<bool> covered(code.n(), false);
            for (std::size_t t = 0; t < i; ++t) {
                FieldVector w = linear_combination(rows, a.row(t));
                for (std::size_t j = 0; j < code.n(); ++j) {
                    if (w.get(j) != 0) covered[j] = true;
                }
            }
            std::size_t uni = 0;
            for (bool b : covered) uni += b ? 1 : 0;
            best = std::min(best, uni);

            std::size_t c = 0;
            for (; c < cells.size(); ++c) {
                if (++vals[c] < q) break;
                vals[c] = 0;
            }
            if (c == cells.size()) break;
        }

        std::size_t t = i;
        bool advanced = false;
        while (t > 0) {
            --t;
            if (piv[t] + (i - t) < r) {
                ++piv[t];
                for (std::size_t u = t + 1; u < i; ++u) piv[u] = piv[u - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return best;
}

WeightProfile weight_profile(const LinearCode& code) {
    WeightProfile profile;
    profile.min_weight = code.n() + 1;
    profile.max_weight = 0;
    visit_dual_codewords(code, [&](const FieldVector&, const FieldVector& word) {
        std::size_t w = weight(word);
        if (w == 0) return true;
        profile.counts[w] += 1;
        profile.min_weight = std::min(profile.min_weight, w);
        profile.max_weight = std::max(profile.max_weight, w);
        return true;
    });
    return profile;
}

LinearCode simplex_code(std::size_t r, PrimeField field) {
    if (r < 2) throw ValidationError("simplex construction needs r >= 2");
    const std::uint32_t q = field.modulus();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < r; ++i) {
        total *= q;
        if ((total - 1) / (q - 1) > 65535) {
            throw ValidationError("simplex length exceeds 65535 (2-byte indices)");
        }
    }
    const std::uint64_t n = (total - 1) / (q - 1);

    Matrix h(field, r, static_cast<std::size_t>(n));
    std::size_t col = 0;
    std::vector<std::uint32_t> digits(r, 0);
    for (std::uint64_t v = 1; v < total; ++v) {
        std::uint64_t x = v;
        for (std::size_t i = r; i-- > 0;) {
            digits[i] = static_cast<std::uint32_t>(x % q);
            x /= q;
        }
        std::uint32_t lead = 0;
        for (std::size_t i = 0; i < r; ++i) {
            if (digits[i] != 0) { lead = digits[i]; break; }
        }
        if (lead != 1) continue;
        for (std::size_t i = 0; i < r; ++i) h.set(i, col, digits[i]);
        ++col;
    }

    std::ostringstream label;
    label << "simplex(r=" << r << ",q=" << q << ")";
    return LinearCode(std::move(h), label.str());
}

namespace {

Matrix matrix_from_digit_rows(PrimeField field, const std::vector<std::string>& rows) {
    std::vector<std::vector<int>> grid;
    for (const std::string& s : rows) {
        std::vector<int> row;
        for (char c : s) row.push_back(c - '0');
        grid.push_back(std::move(row));
    }
    return Matrix::from_rows(field, grid);
}

}  // namespace

LinearCode example_code_9_4() {
    Matrix h = matrix_from_digit_rows(PrimeField(2), {
        "101000101",
        "011000011",
        "000101101",
        "000011011",
    });
    return LinearCode(std::move(h), "example-9-4");
}

LinearCode example_code_20_4_ternary() {
    Matrix h = matrix_from_digit_rows(PrimeField(3), {
        "10110000110011111111",
        "01120000001111112222",
        "00001011120011221122",
        "00000112001212121212",
    });
    return LinearCode(std::move(h), "example-20-4-ternary");
}

LinearCode expand_binary_to_qary(const LinearCode& binary, PrimeField field) {
    if (binary.field().modulus() != 2) {
        throw ValidationError("column expansion takes a binary input code");
    }
    const std::uint32_t q = field.modulus();
    const std::size_t r = binary.r();

    std::vector<std::vector<std::uint16_t>> cols;
    for (std::size_t j = 0; j < binary.n(); ++j) {
        std::vector<std::size_t> supp;
        for (std::size_t i = 0; i < r; ++i) {
            if (binary.h().get(i, j) != 0) supp.push_back(i);
        }
        if (supp.empty()) {
            std::ostringstream os;
            os << "input column " << j + 1 << " is all zero";
            throw ValidationError(os.str());
        }
        // First supported row is pinned to 1; the rest sweep 1..q-1 in
        // lexicographic order of the column read top to bottom.
        std::vector<std::uint32_t> rest(supp.size() > 0 ? supp.size() - 1 : 0, 1);
        while (true) {
            std::vector<std::uint16_t> col(r, 0);
            col[supp[0]] = 1;
            for (std::size_t t = 0; t < rest.size(); ++t) {
                col[supp[t + 1]] = static_cast<std::uint16_t>(rest[t]);
            }
            cols.push_back(std::move(col));
            std::size_t t = rest.size();
            bool advanced = false;
            while (t > 0) {
                --t;
                if (rest[t] + 1 < q) {
                    ++rest[t];
                    for (std::size_t u = t + 1; u < rest.size(); ++u) rest[u] = 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
    }

    Matrix h(field, r, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < r; ++i) h.set(i, j, cols[j][i]);
    }
    std::ostringstream label;
    label << "expand(q=" << q << "," << binary.label() << ")";
    return LinearCode(std::move(h), label.str());
}

std::optional<LinearCode> random_minimal_search(std::size_t n, std::size_t r, PrimeField field,
                                                std::size_t trials, SeededRng& rng) {
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Matrix h(field, r, n);
        // Redraw until full rank; rank-deficient draws do not consume trials.
        for (int attempt = 0; attempt < 1000; ++attempt) {
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    h.set(i, j, rng.uniform_below(field.modulus()));
                }
            }
            if (rank(h) == r) break;
        }
        if (rank(h) != r) return std::nullopt;
        std::ostringstream label;
        label << "search(n=" << n << ",r=" << r << ",q=" << field.modulus() << ")";
        LinearCode code(h, label.str());
        if (is_minimal_code(code).minimal) return code;
    }
    return std::nullopt;
}

std::string serialize_code(const LinearCode& code) {
    std::ostringstream os;
    os << code.field().modulus() << ' ' << code.r() << ' ' << code.n() << '\n';
    for (std::size_t i = 0; i < code.r(); ++i) {
        for (std::size_t j = 0; j < code.n(); ++j) {
            if (j) os << ' ';
            os << code.h().get(i, j);
        }
        os << '\n';
    }
    return os.str();
}

namespace {

struct Token {
    long value;
    std::size_t column;
};

std::vector<Token> tokenize_line(const std::string& line, std::size_t line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
        std::size_t start = i;
        bool digits = true;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
            if (!std::isdigit(static_cast<unsigned char>(line[i]))) digits = false;
            ++i;
        }
        std::string tok = line.substr(start, i - start);
        if (!digits || tok.size() > 9) {
            std::ostringstream os;
            os << "expected a small non-negative integer, got '" << tok << "'";
            throw ParseError(os.str(), line_no, start + 1);
        }
        out.push_back(Token{std::stol(tok), start + 1});
    }
    return out;
}

}  // namespace

LinearCode parse_code(const std::string& text, const std::string& label) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    std::vector<std::pair<std::string, std::size_t>> content;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        content.emplace_back(line, line_no);
    }
    if (content.empty()) throw ParseError("empty code file", 1, 1);

    std::vector<Token> header = tokenize_line(content[0].first, content[0].second);
    if (header.size() != 3) {
        throw ParseError("header must be 'q r n'", content[0].second, 1);
    }
    long q = header[0].value, r = header[1].value, n = header[2].value;
    if (q < 2 || q > PrimeField::kMaxModulus) {
        throw ParseError("modulus out of range", content[0].second, header[0].column);
    }
    PrimeField field(static_cast<std::uint32_t>(q));
    if (r < 1 || n < r) {
        throw ParseError("need 1 <= r <= n", content[0].second, header[1].column);
    }
    if (content.size() != static_cast<std::size_t>(r) + 1) {
        std::ostringstream os;
        os << "expected " << r << " matrix rows, found " << content.size() - 1;
        throw ParseError(os.str(), content.back().second, 1);
    }

    Matrix h(field, static_cast<std::size_t>(r), static_cast<std::size_t>(n));
    for (long i = 0; i < r; ++i) {
        const auto& [row_text, row_line] = content[static_cast<std::size_t>(i) + 1];
        std::vector<Token> toks = tokenize_line(row_text, row_line);
        if (toks.size() != static_cast<std::size_t>(n)) {
            std::ostringstream os;
            os << "expected " << n << " entries, found " << toks.size();
            throw ParseError(os.str(), row_line, 1);
        }
        for (long j = 0; j < n; ++j) {
            const Token& t = toks[static_cast<std::size_t>(j)];
            if (t.value < 0 || t.value >= q) {
                std::ostringstream os;
                os << "entry " << t.value << " out of range for GF(" << q << ")";
                throw ParseError(os.str(), row_line, t.column);
            }
            h.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                  static_cast<std::uint32_t>(t.value));
        }
    }
    return LinearCode(std::move(h), label);
}

LinearCode load_code(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open code file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_code(buf.str(), path);
}

void save_code(const LinearCode& code, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write code file: " + path);
    out << serialize_code(code);
    if (!out) throw ValidationError("short write to code file: " + path);
}

}  // namespace cosec
