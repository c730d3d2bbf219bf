#include "cosec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cosec/errors.hpp"

namespace cosec {

namespace {

void check_positions(const std::vector<std::size_t>& j_1b, std::size_t n) {
    std::set<std::size_t> seen;
    for (std::size_t j : j_1b) {
        if (j < 1 || j > n) {
            std::ostringstream os;
            os << "position " << j << " out of range [1," << n << "]";
            throw ValidationError(os.str());
        }
        if (!seen.insert(j).second) {
            std::ostringstream os;
            os << "position " << j << " listed twice";
            throw ValidationError(os.str());
        }
    }
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    std::size_t t = k;
    while (t > 0) {
        --t;
        if (idx[t] + (k - t) < n) {
            ++idx[t];
            for (std::size_t u = t + 1; u < k; ++u) idx[u] = idx[u - 1] + 1;
            return true;
        }
    }
    return false;
}

BigInt pow_big(BigInt base, std::size_t e) {
    BigInt out = 1;
    for (std::size_t i = 0; i < e; ++i) out *= base;
    return out;
}

BigInt binomial_big(std::size_t n, std::size_t m) {
    if (m > n) return 0;
    BigInt out = 1;
    for (std::size_t i = 1; i <= m; ++i) {
        out *= static_cast<unsigned>(n - m + i);
        out /= static_cast<unsigned>(i);
    }
    return out;
}

}  // namespace

std::size_t leakage_dimension(const LinearCode& code, const std::vector<std::size_t>& j_1b) {
    check_positions(j_1b, code.n());
    std::vector<bool> in(code.n() + 1, false);
    for (std::size_t j : j_1b) in[j] = true;
    std::vector<std::size_t> complement;
    for (std::size_t j = 1; j <= code.n(); ++j) {
        if (!in[j]) complement.push_back(j);
    }
    return code.r() - rank(code.h().columns_at(complement));
}

std::map<FieldVector, std::uint64_t> posterior_messages(
    const LinearCode& code, const std::vector<std::pair<std::size_t, FieldElement>>& revealed) {
    std::vector<std::size_t> positions;
    for (const auto& [j, v] : revealed) {
        positions.push_back(j);
        if (!(v.field() == code.field())) {
            throw FieldMismatchError("revealed value from a different field");
        }
    }
    check_positions(positions, code.n());

    std::vector<std::size_t> free_positions;  // 0-based
    std::vector<bool> fixed(code.n(), false);
    FieldVector z(code.field(), code.n());
    for (const auto& [j, v] : revealed) {
        fixed[j - 1] = true;
        z.set(j - 1, v);
    }
    for (std::size_t j = 0; j < code.n(); ++j) {
        if (!fixed[j]) free_positions.push_back(j);
    }

    const std::uint32_t q = code.field().modulus();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < free_positions.size(); ++i) {
        total *= q;
        if (total > kEnumerationCap) {
            std::ostringstream os;
            os << "q^(n-|revealed|) = " << q << "^" << free_positions.size()
               << " exceeds the enumeration cap 2^20";
            throw CapExceededError(os.str());
        }
    }

    std::map<FieldVector, std::uint64_t> posterior;
    std::vector<std::uint32_t> digits(free_positions.size(), 0);
    while (true) {
        posterior[matvec(code.h(), z)] += 1;
        std::size_t i = 0;
        for (; i < free_positions.size(); ++i) {
            if (digits[i] + 1 < q) {
                ++digits[i];
                z.set(free_positions[i], digits[i]);
                break;
            }
            digits[i] = 0;
            z.set(free_positions[i], 0u);
        }
        if (i == free_positions.size()) break;
    }
    return posterior;
}

LeakageReport analyze_reveal(const LinearCode& code,
                             const std::vector<std::pair<std::size_t, FieldElement>>& revealed) {
    LeakageReport report;
    for (const auto& [j, v] : revealed) report.revealed_positions.push_back(j);
    std::sort(report.revealed_positions.begin(), report.revealed_positions.end());
    report.leaked_dimension = leakage_dimension(code, report.revealed_positions);

    std::map<FieldVector, std::uint64_t> posterior = posterior_messages(code, revealed);
    report.posterior_size = posterior.size();
    report.posterior_uniform = true;
    std::uint64_t first = posterior.begin()->second;
    for (const auto& [msg, count] : posterior) {
        if (count != first) report.posterior_uniform = false;
    }
    return report;
}

std::vector<SweepRow> wtc2_sweep(const LinearCode& code, std::size_t up_to_size, SeededRng& rng) {
    if (up_to_size > code.n()) {
        throw ValidationError("sweep size exceeds the code length");
    }
    constexpr std::size_t kExhaustiveMaxN = 12;
    constexpr std::uint64_t kSampledSets = 10000;

    std::vector<SweepRow> rows;
    for (std::size_t s = 0; s <= up_to_size; ++s) {
        SweepRow row;
        row.set_size = s;
        if (s == 0) {
            row.max_leakage = 0;
            row.sets_checked = 1;
            rows.push_back(row);
            continue;
        }
        if (code.n() <= kExhaustiveMaxN) {
            std::vector<std::size_t> idx(s);
            for (std::size_t t = 0; t < s; ++t) idx[t] = t;
            do {
                std::vector<std::size_t> j;
                for (std::size_t t : idx) j.push_back(t + 1);
                row.max_leakage = std::max(row.max_leakage, leakage_dimension(code, j));
                row.sets_checked += 1;
            } while (next_combination(idx, code.n()));
        } else {
            row.exhaustive = false;
            std::vector<std::size_t> pool(code.n());
            for (std::size_t t = 0; t < code.n(); ++t) pool[t] = t + 1;
            for (std::uint64_t rep = 0; rep < kSampledSets; ++rep) {
                // Partial Fisher-Yates: the first s entries become the set.
                for (std::size_t t = 0; t < s; ++t) {
                    std::size_t u =
                        t + rng.uniform_below(static_cast<std::uint32_t>(code.n() - t));
                    std::swap(pool[t], pool[u]);
                }
                std::vector<std::size_t> j(pool.begin(), pool.begin() + s);
                row.max_leakage = std::max(row.max_leakage, leakage_dimension(code, j));
                row.sets_checked += 1;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

BigInt gaussian_binomial(std::size_t n, std::size_t k, std::uint32_t q) {
    if (!is_prime(q)) {
        throw ValidationError("modulus " + std::to_string(q) + " is not prime");
    }
    if (k > n) {
        std::ostringstream os;
        os << "subspace dimension " << k << " exceeds ambient dimension " << n;
        throw ValidationError(os.str());
    }
    BigInt num = 1, den = 1;
    for (std::size_t i = 0; i < k; ++i) {
        num *= pow_big(q, n) - pow_big(q, i);
        den *= pow_big(q, k) - pow_big(q, i);
    }
    return num / den;
}

MaxBoundCheck max_bound_check(const LinearCode& code) {
    MaxBoundCheck out;
    const std::uint32_t q = code.field().modulus();
    out.lhs = pow_big(q, code.r());
    out.rhs = 1 + BigInt(q - 1) * binomial_big(code.n(), code.n() / 2);
    out.rate = static_cast<double>(code.r()) / static_cast<double>(code.n());
    out.max_rate = std::log(2.0) / std::log(static_cast<double>(q));
    out.holds = out.lhs <= out.rhs && out.rate <= out.max_rate + 1e-12;
    return out;
}

double min_bound_rate(std::uint32_t q) {
    if (!is_prime(q)) {
        throw ValidationError("modulus " + std::to_string(q) + " is not prime");
    }
    const double qq = static_cast<double>(q) * q;
    return 0.5 * std::log(qq / (qq - q + 1)) / std::log(static_cast<double>(q));
}

BigInt existence_margin(std::size_t n, std::size_t k, std::uint32_t q) {
    if (k < 2 || k > n) {
        std::ostringstream os;
        os << "margin needs 2 <= k <= n, got k=" << k << " n=" << n;
        throw ValidationError(os.str());
    }
    BigInt bad = gaussian_binomial(n - 2, k - 2, q) * pow_big(BigInt(q) * q - q + 1, n);
    return gaussian_binomial(n, k, q) - bad;
}

BoundsRow bounds_row(std::size_t n, std::size_t k, std::uint32_t q) {
    BoundsRow row;
    row.q = q;
    row.n = n;
    row.k = k;
    row.gaussian_nk = gaussian_binomial(n, k, q);
    row.bad_pair_bound = gaussian_binomial(n - 2, k - 2, q) * pow_big(BigInt(q) * q - q + 1, n);
    row.margin = row.gaussian_nk - row.bad_pair_bound;
    row.max_rate = std::log(2.0) / std::log(static_cast<double>(q));
    row.min_rate = min_bound_rate(q);
    return row;
}

}  // namespace cosec
