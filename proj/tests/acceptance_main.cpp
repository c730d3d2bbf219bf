// Acceptance suite: nine end-to-end criteria, each with a wall-clock budget.
// Prints exactly one [PASS]/[FAIL] line per criterion and exits nonzero when
// any of them fails or overruns its budget. Runs the library in-process for
// the math-heavy criteria and shells out to the CLI for the transport one.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cosec/analysis.hpp"
#include "cosec/code.hpp"
#include "cosec/coset.hpp"
#include "cosec/errors.hpp"
#include "cosec/field.hpp"
#include "cosec/matrix.hpp"
#include "cosec/protocol.hpp"
#include "cosec/rng.hpp"

#ifndef COSEC_CLI_PATH
#define COSEC_CLI_PATH ""
#endif

namespace {

using namespace cosec;

/// Collects failure descriptions; a criterion passes when none accumulate.
struct Checker {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

/// Odometer step through F_q^len, coordinate 0 fastest; false on wrap to 0.
bool next_vector(FieldVector& v) {
    const std::uint32_t q = v.field().modulus();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v.get(i) + 1 < q) {
            v.set(i, v.get(i) + 1);
            return true;
        }
        v.set(i, 0u);
    }
    return false;
}

FieldVector random_vector(PrimeField field, std::size_t len, SeededRng& rng) {
    FieldVector v(field, len);
    for (std::size_t i = 0; i < len; ++i) v.set(i, rng.uniform_below(field.modulus()));
    return v;
}

FieldVector random_nonzero_vector(PrimeField field, std::size_t len, SeededRng& rng) {
    while (true) {
        FieldVector v = random_vector(field, len, rng);
        if (weight(v) > 0) return v;
    }
}

FieldVector random_binary_vector(PrimeField field, std::size_t len, SeededRng& rng) {
    FieldVector v(field, len);
    for (std::size_t i = 0; i < len; ++i) v.set(i, rng.uniform_below(2));
    return v;
}

/// Plain-integer evaluation of sum coeffs_i * x_i + post_add mod q, kept
/// independent of the FieldElement arithmetic on purpose.
std::uint64_t direct_linear_eval(const FieldVector& coeffs, const FieldVector& x,
                                 std::uint32_t post_add) {
    const std::uint64_t q = coeffs.field().modulus();
    std::uint64_t acc = post_add % q;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        acc = (acc + static_cast<std::uint64_t>(coeffs.get(i)) * x.get(i)) % q;
    }
    return acc;
}

std::uint64_t hamming_distance(const FieldVector& a, const FieldVector& b) {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a.get(i) != b.get(i) ? 1 : 0;
    return d;
}

std::string describe(const FieldVector& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// ---------------------------------------------------------------------------
// 1. Worked walkthrough with a forced encoding: every intermediate value.

void criterion_walkthrough(Checker& c) {
    const PrimeField f2(2);
    const LinearCode code = simplex_code(3, f2);
    const FieldVector x = FieldVector::of(f2, {1, 0, 1});
    const FieldVector y = FieldVector::of(f2, {1, 1, 0});

    RunOptions opts;
    opts.forced_z = FieldVector::of(f2, {0, 0, 0, 0, 1, 0, 0});
    IdealOt ot;
    const RunResult run = run_protocol(x, scalar_product_spec(y), code, ot, 1, opts);

    c.expect(run.z == *opts.forced_z, "encoding is the forced word (0,0,0,0,1,0,0)");
    c.expect(run.selector == FieldVector::of(f2, {0, 1, 1, 1, 1, 0, 0}),
             "selector is (0,1,1,1,1,0,0), got " + describe(run.selector));
    c.expect(run.request_indices.size() == 4, "request has exactly w_max = 4 indices");
    const std::set<std::size_t> asked(run.request_indices.begin(), run.request_indices.end());
    c.expect(asked == std::set<std::size_t>{2, 3, 4, 5}, "request set is {2,3,4,5}");

    FieldVector restriction(f2, 4);
    std::size_t slot = 0;
    for (std::size_t j : {2, 3, 4, 5}) restriction.set(slot++, run.z.get(j - 1));
    c.expect(restriction == FieldVector::of(f2, {0, 0, 0, 1}),
             "restriction to {2,3,4,5} is (0,0,0,1), got " + describe(restriction));

    c.expect(run.p2_output == f2.element(1), "evaluator output is 1");
    c.expect(!run.p1_output.has_value(), "no reveal unless asked");
    c.expect(coset_decode(code, run.z) == x, "forced word still encodes the input");
}

// ---------------------------------------------------------------------------
// 2. Bundled [9,4] code: certificate and selector weights.

void criterion_nine_column_code(Checker& c) {
    const LinearCode code = example_code_9_4();
    c.expect(is_minimal_code(code).minimal, "[9,4] code certifies minimal");

    const PrimeField f2 = code.field();
    const auto selector_weight = [&](std::initializer_list<int> y) {
        return weight(compute_selector(code, scalar_product_spec(FieldVector::of(f2, y))));
    };
    c.expect(selector_weight({1, 0, 0, 0}) == 4, "selector weight for Y=(1,0,0,0) is 4");
    c.expect(selector_weight({0, 0, 1, 1}) == 4, "selector weight for Y=(0,0,1,1) is 4");
    c.expect(selector_weight({0, 1, 1, 0}) == 6, "selector weight for Y=(0,1,1,0) is 6");

    const WeightProfile profile = weight_profile(code);
    c.expect(profile.max_weight == 6, "w_max is 6");
    c.expect(profile.counts.size() == 2 && profile.counts.count(4) && profile.counts.count(6),
             "every nonzero selector weighs 4 or 6");
}

// ---------------------------------------------------------------------------
// 3. Binary-to-ternary expansion reproduces the bundled [20,4] code.

void criterion_expansion(Checker& c) {
    const LinearCode expanded = expand_binary_to_qary(example_code_9_4(), PrimeField(3));
    c.expect(expanded.r() == 4 && expanded.n() == 20, "expansion is a 4 x 20 matrix");
    c.expect(expanded.h() == example_code_20_4_ternary().h(),
             "expansion equals the bundled ternary matrix column for column");
    c.expect(is_minimal_code(expanded).minimal, "expanded code certifies minimal");
}

// ---------------------------------------------------------------------------
// 4. Protocol output equals direct evaluation on random triples.

void criterion_random_triples(Checker& c) {
    constexpr std::size_t kTriples = 500;
    SeededRng master(0xACCE5501ull);
    IdealOt ot;

    const std::vector<LinearCode> codes = {
        simplex_code(3, PrimeField(2)),
        example_code_9_4(),
        example_code_20_4_ternary(),
        simplex_code(3, PrimeField(3)),
    };

    for (const LinearCode& code : codes) {
        const PrimeField field = code.field();
        const std::uint32_t q = field.modulus();
        const std::size_t r = code.r();
        std::size_t bad = 0;

        for (std::size_t t = 0; t < kTriples && bad < 3; ++t) {
            const std::uint64_t seed = master.next_u64();

            // scalar product
            {
                const FieldVector x = random_vector(field, r, master);
                const FieldVector y = random_nonzero_vector(field, r, master);
                const LinearFunctionSpec spec = scalar_product_spec(y);
                const RunResult run = run_protocol(x, spec, code, ot, seed);
                if (run.p2_output.value() != direct_linear_eval(y, x, 0)) {
                    ++bad;
                    c.expect(false, code.label() + " scalar mismatch at x=" + describe(x) +
                                        " y=" + describe(y));
                }
            }

            // squared euclidean distance (augmented convention)
            {
                const FieldVector xb = random_vector(field, r - 1, master);
                const FieldVector yb = random_vector(field, r - 1, master);
                const LinearFunctionSpec spec = squared_euclidean_spec(yb);
                const FieldVector x = augment_squared(xb);
                const RunResult run = run_protocol(x, spec, code, ot, seed);
                const std::uint64_t via_coeffs =
                    direct_linear_eval(spec.coeffs, x, spec.post_add.value());
                std::uint64_t squared = 0;
                for (std::size_t i = 0; i < xb.size(); ++i) {
                    const std::uint64_t d = (xb.get(i) + q - yb.get(i)) % q;
                    squared = (squared + d * d) % q;
                }
                if (run.p2_output.value() != via_coeffs || via_coeffs != squared) {
                    ++bad;
                    c.expect(false, code.label() + " euclidean mismatch at x=" + describe(xb) +
                                        " y=" + describe(yb));
                }
            }

            // hamming-shaped coefficients (1 - 2*y_i, plus sum y_i); the
            // output is the distance reduced mod q, which is all these small
            // moduli can carry
            {
                const FieldVector x = random_binary_vector(field, r, master);
                const FieldVector y = random_binary_vector(field, r, master);
                FieldVector coeffs(field, r);
                std::uint32_t ones = 0;
                for (std::size_t i = 0; i < r; ++i) {
                    ones += y.get(i);
                    coeffs.set(i, (field.one() - field.element(y.get(i)) -
                                   field.element(y.get(i))).value());
                }
                const LinearFunctionSpec spec = custom_spec(coeffs, field.element(ones));
                const RunResult run = run_protocol(x, spec, code, ot, seed);
                const std::uint64_t via_coeffs =
                    direct_linear_eval(spec.coeffs, x, spec.post_add.value());
                const std::uint64_t distance = hamming_distance(x, y) % q;
                if (run.p2_output.value() != via_coeffs || via_coeffs != distance) {
                    ++bad;
                    c.expect(false, code.label() + " hamming-shaped mismatch at x=" + describe(x) +
                                        " y=" + describe(y));
                }
            }
        }
    }

    // The integer-faithful hamming family needs q > r; exercised on simplex
    // codes over F_5 and F_7 where the true distance survives the modulus.
    for (const LinearCode& code : {simplex_code(2, PrimeField(5)), simplex_code(2, PrimeField(7))}) {
        const PrimeField field = code.field();
        std::size_t bad = 0;
        for (std::size_t t = 0; t < kTriples && bad < 3; ++t) {
            const std::uint64_t seed = master.next_u64();
            const FieldVector x = random_binary_vector(field, code.r(), master);
            const FieldVector y = random_binary_vector(field, code.r(), master);
            std::optional<LinearFunctionSpec> spec;
            try {
                spec = hamming_spec(y);
            } catch (const ValidationError&) {
                // all-zero y still yields coeffs of all ones; never rejected
            }
            if (!spec) {
                ++bad;
                c.expect(false, code.label() + " hamming spec rejected y=" + describe(y));
                continue;
            }
            const RunResult run = run_protocol(x, *spec, code, ot, seed);
            if (run.p2_output.value() != hamming_distance(x, y)) {
                ++bad;
                c.expect(false, code.label() + " hamming mismatch at x=" + describe(x) +
                                    " y=" + describe(y));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// 5. Sender privacy: the evaluator's view pins the message only down to a
//    uniform posterior over the q^(r-1) messages of the output hyperplane.

void criterion_sender_privacy(Checker& c) {
    IdealOt ot;
    for (const LinearCode& code : {simplex_code(3, PrimeField(2)), example_code_9_4()}) {
        const PrimeField field = code.field();
        const std::uint32_t q = field.modulus();
        const std::size_t r = code.r();
        std::uint64_t hyperplane_size = 1;
        for (std::size_t i = 0; i + 1 < r; ++i) hyperplane_size *= q;

        // Bucket every word of F_q^n by the message it encodes.
        std::map<FieldVector, std::vector<FieldVector>> cosets;
        FieldVector z(field, code.n());
        do {
            cosets[coset_decode(code, z)].push_back(z);
        } while (next_vector(z));

        std::uint64_t runs = 0;
        std::size_t bad = 0;
        FieldVector y(field, r);
        while (next_vector(y) && bad < 3) {  // every nonzero y
            const LinearFunctionSpec spec = scalar_product_spec(y);
            FieldVector x(field, r);
            do {
                for (const FieldVector& word : cosets.at(x)) {
                    RunOptions opts;
                    opts.forced_z = word;
                    const RunResult run =
                        run_protocol(x, spec, code, ot, 9000 + runs++, opts);

                    // What the evaluator extracted from the transfers.
                    std::vector<std::pair<std::size_t, FieldElement>> revealed;
                    const std::set<std::size_t> asked(run.request_indices.begin(),
                                                      run.request_indices.end());
                    for (std::size_t j : asked) revealed.emplace_back(j, word.at(j - 1));

                    const auto posterior = posterior_messages(code, revealed);
                    bool uniform = true;
                    bool on_hyperplane = true;
                    std::uint64_t count0 = posterior.empty() ? 0 : posterior.begin()->second;
                    for (const auto& [message, count] : posterior) {
                        uniform = uniform && count == count0;
                        on_hyperplane = on_hyperplane && dot(y, message) == run.p2_output;
                    }
                    const bool ok = posterior.size() == hyperplane_size && uniform &&
                                    on_hyperplane && posterior.count(x) == 1;
                    if (!ok) {
                        ++bad;
                        c.expect(false, code.label() + ": posterior not uniform-on-hyperplane at y=" +
                                            describe(y) + " x=" + describe(x) +
                                            " z=" + describe(word));
                    }
                    if (bad >= 3) break;
                }
            } while (next_vector(x) && bad < 3);
        }
        c.expect(runs > 0, code.label() + ": exhaustive sweep actually ran");
    }
}

// ---------------------------------------------------------------------------
// 6. Receiver privacy: the encoder's observations never depend on Y.

void criterion_receiver_privacy(Checker& c) {
    IdealOt ot;
    SeededRng picks(0xACCE5506ull);
    const std::vector<LinearCode> codes = {
        simplex_code(3, PrimeField(2)),
        example_code_9_4(),
        example_code_20_4_ternary(),
        simplex_code(3, PrimeField(3)),
    };
    for (const LinearCode& code : codes) {
        const PrimeField field = code.field();
        const FieldVector x = random_vector(field, code.r(), picks);
        for (const OtMode mode : {OtMode::kBatched, OtMode::kSequential}) {
            RunOptions opts;
            opts.ot_mode = mode;
            std::string baseline;
            std::size_t swept = 0;
            std::size_t bad = 0;
            FieldVector y(field, code.r());
            while (next_vector(y) && bad < 3) {  // every nonzero y
                const RunResult run =
                    run_protocol(x, scalar_product_spec(y), code, ot, 42, opts);
                const std::string events = run.p1_view.events_text();
                if (swept++ == 0) {
                    baseline = events;
                } else if (events != baseline) {
                    ++bad;
                    c.expect(false, code.label() + ": encoder view changed at y=" + describe(y));
                }
            }
            const std::uint64_t q = field.modulus();
            std::uint64_t expected = 1;
            for (std::size_t i = 0; i < code.r(); ++i) expected *= q;
            c.expect(swept == expected - 1,
                     code.label() + ": swept every nonzero y (" + std::to_string(swept) + ")");
        }
    }
}

// ---------------------------------------------------------------------------
// 7. Revealed-set sweep against the dual weight hierarchy.

void criterion_leakage_sweep(Checker& c) {
    const LinearCode code = simplex_code(3, PrimeField(2));
    c.expect(generalized_hamming_distance(code, 1) == 4, "first dual distance is 4");
    c.expect(generalized_hamming_distance(code, 2) == 6, "second dual distance is 6");
    c.expect(generalized_hamming_distance(code, 3) == 7, "third dual distance is 7");

    SeededRng rng(7);
    const std::vector<SweepRow> rows = wtc2_sweep(code, 7, rng);
    for (const SweepRow& row : rows) {
        c.expect(row.exhaustive, "size " + std::to_string(row.set_size) + " checked exhaustively");
        if (row.set_size <= 3) {
            c.expect(row.max_leakage == 0,
                     "sets of size " + std::to_string(row.set_size) + " leak nothing");
        } else if (row.set_size <= 5) {
            c.expect(row.max_leakage <= 1,
                     "sets of size " + std::to_string(row.set_size) + " leak at most 1 dimension");
        } else if (row.set_size <= 6) {
            c.expect(row.max_leakage <= 2,
                     "sets of size " + std::to_string(row.set_size) + " leak at most 2 dimensions");
        }
    }
    c.expect(rows.size() == 8, "sweep covers sizes 0 through 7");
}

// ---------------------------------------------------------------------------
// 8. Rate bounds; existence margins corroborated by random search.

void criterion_bounds(Checker& c) {
    c.expect(std::abs(min_bound_rate(2) - 0.20751874963942) < 1e-12,
             "binary minimum-rate threshold within 1e-12 of 0.20751874963942");

    const std::vector<LinearCode> corpus = {
        simplex_code(3, PrimeField(2)), example_code_9_4(),      example_code_20_4_ternary(),
        simplex_code(3, PrimeField(3)), simplex_code(2, PrimeField(5)),
        simplex_code(2, PrimeField(7)),
    };
    for (const LinearCode& code : corpus) {
        c.expect(is_minimal_code(code).minimal, code.label() + " certifies minimal");
        c.expect(max_bound_check(code).holds, code.label() + " satisfies the cardinality bound");
    }

    SeededRng rng(0xACCE5508ull);
    std::size_t positive = 0;
    std::size_t corroborated = 0;
    for (const std::uint32_t q : {2u, 3u}) {
        const double threshold = min_bound_rate(q);
        for (std::size_t k = 2; k <= 4; ++k) {
            for (std::size_t n = k; n <= 20; ++n) {
                if (static_cast<double>(k) / static_cast<double>(n) >= threshold) continue;
                if (existence_margin(n, k, q) <= 0) continue;
                ++positive;
                if (random_minimal_search(n, k, PrimeField(q), 1000, rng).has_value()) {
                    ++corroborated;
                }
            }
        }
    }
    c.expect(positive >= 20, "scan finds at least 20 positive-margin cells below threshold, got " +
                                 std::to_string(positive));
    c.expect(corroborated * 100 >= positive * 95,
             "random search corroborates >= 95% of positive-margin cells (" +
                 std::to_string(corroborated) + "/" + std::to_string(positive) + ")");
}

// ---------------------------------------------------------------------------
// 9. Socket mode is byte-identical to local mode at equal seeds.

std::string cli_path() {
    if (const char* env = std::getenv("COSEC_CLI")) return env;
    return COSEC_CLI_PATH;
}

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_cli(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    CommandResult result;
    if (pipe == nullptr) return result;
    char buf[512];
    while (std::fgets(buf, sizeof(buf), pipe) != nullptr) result.output += buf;
    const int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string read_file(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (f == nullptr) return "";
    std::string out;
    char buf[512];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) out.append(buf, n);
    std::fclose(f);
    return out;
}

std::string output_line(const std::string& text, const std::string& key) {
    const std::size_t at = text.find(key);
    if (at == std::string::npos) return "";
    return text.substr(at, text.find('\n', at) - at);
}

void criterion_transport(Checker& c) {
    c.expect(!cli_path().empty(), "cli binary location known");
    if (cli_path().empty()) return;

    char tmpl[] = "/tmp/cosec-acc-XXXXXX";
    const char* dir_raw = ::mkdtemp(tmpl);
    c.expect(dir_raw != nullptr, "scratch directory created");
    if (dir_raw == nullptr) return;
    const std::string dir(dir_raw);
    const std::string code_file = dir + "/simplex7.txt";
    run_cli("gen-code simplex --r 3 --q 2 --out " + code_file);

    const CommandResult local = run_cli("run local --function scalar --x 101 --y 110 --code " +
                                        code_file + " --seed 77 --transcript-p1 " + dir +
                                        "/loc1.txt --transcript-p2 " + dir + "/loc2.txt");
    c.expect(local.exit_code == 0, "local run succeeds");

    const int port = 43000 + static_cast<int>(::getpid() % 9000);
    const std::string common = " --function scalar --code " + code_file + " --seed 77";
    const std::string p1_cmd = cli_path() + " run p1 --x 101 --listen :" + std::to_string(port) +
                               common + " --transcript " + dir + "/sock1.txt > " + dir +
                               "/p1.out 2>&1 &";
    c.expect(std::system(p1_cmd.c_str()) == 0, "listener launches");
    const CommandResult p2 = run_cli("run p2 --y 110 --connect 127.0.0.1:" +
                                     std::to_string(port) + common + " --transcript " + dir +
                                     "/sock2.txt");
    c.expect(p2.exit_code == 0, "connecting endpoint succeeds");

    for (int i = 0; i < 150 && read_file(dir + "/p1.out").find("complete") == std::string::npos;
         ++i) {
        ::usleep(20 * 1000);
    }

    c.expect(output_line(p2.output, "p2-output:") == output_line(local.output, "p2-output:") &&
                 !output_line(p2.output, "p2-output:").empty(),
             "socket and local runs print the same output");
    const std::string sock1 = read_file(dir + "/sock1.txt");
    const std::string sock2 = read_file(dir + "/sock2.txt");
    c.expect(!sock1.empty() && sock1 == read_file(dir + "/loc1.txt"),
             "encoder transcript over tcp matches the local one byte for byte");
    c.expect(!sock2.empty() && sock2 == read_file(dir + "/loc2.txt"),
             "evaluator transcript over tcp matches the local one byte for byte");
}

// ---------------------------------------------------------------------------

struct Criterion {
    std::string name;
    double budget_ms;
    std::function<void(Checker&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"walkthrough with forced encoding reproduces selector, request set, restriction, output",
         1000, criterion_walkthrough},
        {"bundled [9,4] code certifies minimal with selector weights 4/4/6 and w_max 6", 1000,
         criterion_nine_column_code},
        {"binary-to-ternary expansion reproduces the bundled [20,4] code and certifies minimal",
         5000, criterion_expansion},
        {"protocol output equals direct evaluation on 500 random triples per family per code",
         30000, criterion_random_triples},
        {"sender privacy: posterior uniform over exactly q^(r-1) hyperplane messages (exhaustive)",
         60000, criterion_sender_privacy},
        {"receiver privacy: encoder observations byte-identical across all Y (exhaustive, r <= 4)",
         10000, criterion_receiver_privacy},
        {"leakage sweep bounded by dual distances (4,6,7): 0 thru size 3, <=1 thru 5, <=2 thru 6",
         30000, criterion_leakage_sweep},
        {"min rate within 1e-12, cardinality bound on corpus, margins >= 95% search-corroborated",
         60000, criterion_bounds},
        {"two-process socket run byte-identical to local run at equal seeds", 5000,
         criterion_transport},
    };

    bool all_ok = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& crit = criteria[i];
        Checker checker;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            crit.run(checker);
        } catch (const std::exception& e) {
            checker.failures.push_back(std::string("unhandled error: ") + e.what());
        }
        const auto t1 = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (ms > crit.budget_ms) {
            checker.failures.push_back("overran the time budget");
        }

        const bool ok = checker.failures.empty();
        all_ok = all_ok && ok;
        std::printf("[%s] %zu/%zu %s (%.0f ms, budget %.0f ms)\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria.size(), crit.name.c_str(), ms, crit.budget_ms);
        for (const std::string& failure : checker.failures) {
            std::printf("       - %s\n", failure.c_str());
        }
        std::fflush(stdout);
    }

    std::printf("%s\n", all_ok ? "acceptance: all 9 criteria passed"
                               : "acceptance: FAILURES PRESENT");
    return all_ok ? 0 : 1;
}
