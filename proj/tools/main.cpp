#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
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
#include "cosec/transport.hpp"

using namespace cosec;

namespace {

std::uint64_t draw_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& given) {
    const std::uint64_t seed = given ? *given : draw_seed();
    std::cout << "seed: " << seed << "\n";
    return seed;
}

/// Inputs are unseparated digit strings for q <= 10 (e.g. 101), and
/// comma-separated integers for larger fields (e.g. 3,10,2).
FieldVector parse_vector(const std::string& text, PrimeField field) {
    std::vector<std::uint32_t> values;
    if (text.find(',') != std::string::npos) {
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (item.empty()) throw ValidationError("empty entry in vector '" + text + "'");
            std::size_t used = 0;
            unsigned long v = 0;
            try {
                v = std::stoul(item, &used);
            } catch (const std::exception&) {
                throw ValidationError("bad vector entry '" + item + "'");
            }
            if (used != item.size()) throw ValidationError("bad vector entry '" + item + "'");
            values.push_back(static_cast<std::uint32_t>(v));
        }
    } else {
        if (field.modulus() > 10) {
            throw ValidationError("fields beyond F_10 need comma-separated entries");
        }
        for (char c : text) {
            if (c < '0' || c > '9') {
                throw ValidationError(std::string("bad digit '") + c + "' in vector '" + text +
                                      "'");
            }
            values.push_back(static_cast<std::uint32_t>(c - '0'));
        }
    }
    if (values.empty()) throw ValidationError("empty vector '" + text + "'");
    FieldVector out(field, values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= field.modulus()) {
            throw ValidationError("entry " + std::to_string(values[i]) +
                                  " is not a residue mod " + std::to_string(field.modulus()));
        }
        out.set(i, values[i]);
    }
    return out;
}

std::vector<std::size_t> parse_positions(const std::string& text) {
    std::vector<std::size_t> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &used);
        } catch (const std::exception&) {
            throw ValidationError("bad position '" + item + "'");
        }
        if (used != item.size() || v == 0) throw ValidationError("bad position '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ValidationError("empty position list");
    return out;
}

std::string vector_text(const FieldVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v.get(i);
    }
    os << ')';
    return os.str();
}

std::string weights_text(const WeightProfile& profile) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [w, count] : profile.counts) {
        if (!first) os << ", ";
        os << w << 'x' << count;
        first = false;
    }
    os << '}';
    return os.str();
}

void print_certificate(const MinimalityReport& report) {
    std::cout << "minimal: " << (report.minimal ? "true" : "false") << "\n";
    if (!report.minimal && report.witness) {
        std::cout << "witness-a: " << vector_text(report.witness->first) << "\n";
        std::cout << "witness-b: " << vector_text(report.witness->second) << "\n";
    }
}

void print_code_report(const LinearCode& code) {
    const WeightProfile profile = weight_profile(code);
    std::cout << "label: " << code.label() << "\n";
    std::cout << "q: " << code.field().modulus() << "\n";
    std::cout << "r: " << code.r() << "\n";
    std::cout << "n: " << code.n() << "\n";
    std::cout << "weights: " << weights_text(profile) << "\n";
    std::cout << "w_max: " << profile.max_weight << "\n";
    print_certificate(is_minimal_code(code));
}

std::uint16_t parse_port(std::string text) {
    if (!text.empty() && text[0] == ':') text = text.substr(1);
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(text, &used);
    } catch (const std::exception&) {
        throw ValidationError("bad port '" + text + "'");
    }
    if (used != text.size() || v == 0 || v > 65535) throw ValidationError("bad port '" + text + "'");
    return static_cast<std::uint16_t>(v);
}

std::pair<std::string, std::uint16_t> parse_host_port(const std::string& text) {
    const std::size_t colon = text.rfind(':');
    if (colon == std::string::npos || colon == 0) {
        throw ValidationError("--connect expects host:port, got '" + text + "'");
    }
    return {text.substr(0, colon), parse_port(text.substr(colon + 1))};
}

// --- gen-code ----------------------------------------------------------------

struct GenCodeArgs {
    std::string kind;
    std::size_t r = 0;
    std::uint32_t q = 0;
    std::size_t n = 0;
    std::string in_path;
    std::size_t trials = 1000;
    std::optional<std::uint64_t> seed;
    std::string out_path;
};

int cmd_gen_code(const GenCodeArgs& args) {
    std::optional<LinearCode> code;
    if (args.kind == "simplex") {
        if (args.r == 0 || args.q == 0) throw ValidationError("simplex needs --r and --q");
        code = simplex_code(args.r, PrimeField(args.q));
    } else if (args.kind == "example-9-4") {
        code = example_code_9_4();
    } else if (args.kind == "example-20-4") {
        code = example_code_20_4_ternary();
    } else if (args.kind == "expand") {
        if (args.in_path.empty() || args.q == 0) throw ValidationError("expand needs --in and --q");
        code = expand_binary_to_qary(load_code(args.in_path), PrimeField(args.q));
    } else if (args.kind == "search") {
        if (args.n == 0 || args.r == 0 || args.q == 0) {
            throw ValidationError("search needs --n, --r and --q");
        }
        SeededRng rng(resolve_seed(args.seed));
        code = random_minimal_search(args.n, args.r, PrimeField(args.q), args.trials, rng);
        if (!code) {
            throw ValidationError("no minimal [" + std::to_string(args.n) + "," +
                                  std::to_string(args.r) + "] code over F_" +
                                  std::to_string(args.q) + " found in " +
                                  std::to_string(args.trials) + " trials");
        }
    } else {
        throw ValidationError("unknown gen-code kind '" + args.kind + "'");
    }

    print_code_report(*code);
    if (!args.out_path.empty()) {
        save_code(*code, args.out_path);
        std::cout << "wrote: " << args.out_path << "\n";
    }
    return 0;
}

// --- check ---------------------------------------------------------------

int cmd_check(const std::string& code_path) {
    const LinearCode code = load_code(code_path);
    print_code_report(code);
    std::cout << "intersecting: " << (is_intersecting(code) ? "true" : "false") << "\n";
    try {
        std::ostringstream os;
        for (std::size_t i = 1; i <= code.r(); ++i) {
            if (i > 1) os << ' ';
            os << generalized_hamming_distance(code, i);
        }
        std::cout << "ghw: " << os.str() << "\n";
    } catch (const ValidationError& e) {
        std::cout << "ghw: skipped (" << e.what() << ")\n";
    }
    return 0;
}

// --- run -------------------------------------------------------------------

struct RunArgs {
    std::string role;
    std::string function = "scalar";
    std::string x_text;
    std::string y_text;
    std::string code_path;
    std::optional<std::uint64_t> seed;
    bool reveal = false;
    std::string ot_mode = "batched";
    std::string force_z;
    bool allow_non_minimal = false;
    std::string listen;
    std::string connect;
    std::string transcript;
    std::string transcript_p1;
    std::string transcript_p2;
};

FieldVector encoder_input(const RunArgs& args, const LinearCode& code) {
    const PrimeField field = code.field();
    if (args.x_text.empty()) throw ValidationError("role needs --x");
    if (args.function == "scalar") {
        return parse_vector(args.x_text, field);
    }
    if (args.function == "euclid") {
        const FieldVector base = parse_vector(args.x_text, field);
        if (base.size() + 1 != code.r()) {
            throw ValidationError("squared Euclidean over this code takes base vectors of length " +
                                  std::to_string(code.r() - 1) +
                                  " (one dimension is reserved for the squares)");
        }
        return augment_squared(base);
    }
    if (args.function == "hamming") {
        const FieldVector x = parse_vector(args.x_text, field);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x.get(i) > 1) throw ValidationError("hamming distance expects a 0/1-valued --x");
        }
        return x;
    }
    throw ValidationError("unknown function '" + args.function + "'");
}

LinearFunctionSpec evaluator_spec(const RunArgs& args, const LinearCode& code) {
    const PrimeField field = code.field();
    if (args.y_text.empty()) throw ValidationError("role needs --y");
    const FieldVector y = parse_vector(args.y_text, field);
    if (args.function == "scalar") return scalar_product_spec(y);
    if (args.function == "euclid") {
        if (y.size() + 1 != code.r()) {
            throw ValidationError("squared Euclidean over this code takes base vectors of length " +
                                  std::to_string(code.r() - 1) +
                                  " (one dimension is reserved for the squares)");
        }
        return squared_euclidean_spec(y);
    }
    if (args.function == "hamming") return hamming_spec(y);
    throw ValidationError("unknown function '" + args.function + "'");
}

RunOptions run_options(const RunArgs& args, const LinearCode& code) {
    RunOptions opts;
    if (args.ot_mode == "batched") {
        opts.ot_mode = OtMode::kBatched;
    } else if (args.ot_mode == "sequential") {
        opts.ot_mode = OtMode::kSequential;
    } else {
        throw ValidationError("unknown --ot-mode '" + args.ot_mode + "'");
    }
    opts.reveal_to_p1 = args.reveal;
    opts.allow_non_minimal = args.allow_non_minimal;
    if (!args.force_z.empty()) {
        opts.forced_z = parse_vector(args.force_z, code.field());
    }
    return opts;
}

int cmd_run(const RunArgs& args) {
    const LinearCode code = load_code(args.code_path);
    const RunOptions opts = run_options(args, code);
    const std::uint64_t seed = resolve_seed(args.seed);
    IdealOt ot;

    if (args.role == "local") {
        const FieldVector x = encoder_input(args, code);
        const LinearFunctionSpec spec = evaluator_spec(args, code);
        const RunResult run = run_protocol(x, spec, code, ot, seed, opts);
        std::cout << "p2-output: " << run.p2_output.value() << "\n";
        if (run.p1_output) std::cout << "p1-output: " << run.p1_output->value() << "\n";
        if (!args.transcript_p1.empty()) run.p1_transcript.save(args.transcript_p1);
        if (!args.transcript_p2.empty()) run.p2_transcript.save(args.transcript_p2);
        return 0;
    }

    if (args.role == "p1") {
        if (args.listen.empty()) throw ValidationError("p1 needs --listen PORT");
        const FieldVector x = encoder_input(args, code);
        const ProtocolConfig config = prepare_code(code, opts.allow_non_minimal);
        FrameSocket sock = FrameSocket::listen_accept(parse_port(args.listen));
        const SenderRunResult result = run_sender(sock, config, x, seed, opts, ot);
        if (result.revealed) std::cout << "p1-output: " << result.revealed->value() << "\n";
        std::cout << "status: complete\n";
        if (!args.transcript.empty()) result.transcript.save(args.transcript);
        return 0;
    }

    if (args.role == "p2") {
        if (args.connect.empty()) throw ValidationError("p2 needs --connect HOST:PORT");
        const LinearFunctionSpec spec = evaluator_spec(args, code);
        const ProtocolConfig config = prepare_code(code, opts.allow_non_minimal);
        const auto [host, port] = parse_host_port(args.connect);
        FrameSocket sock = FrameSocket::connect(host, port, 250, 20);
        // The evaluator's role seed mirrors local mode: run seed + 1.
        const ReceiverRunResult result = run_receiver(sock, config, spec, seed + 1, opts);
        std::cout << "p2-output: " << result.output.value() << "\n";
        if (!args.transcript.empty()) result.transcript.save(args.transcript);
        return 0;
    }

    throw ValidationError("unknown role '" + args.role + "'");
}

// --- analyze -----------------------------------------------------------------

struct AnalyzeArgs {
    std::string code_path;
    std::string revealed;
    std::string values;
    std::size_t sweep = 0;
    bool do_sweep = false;
    std::optional<std::uint64_t> seed;
};

int cmd_analyze(const AnalyzeArgs& args) {
    const LinearCode code = load_code(args.code_path);

    if (args.do_sweep) {
        SeededRng rng(resolve_seed(args.seed));
        const std::vector<SweepRow> rows = wtc2_sweep(code, args.sweep, rng);
        std::cout << "size max-leak mode sets\n";
        for (const SweepRow& row : rows) {
            std::cout << row.set_size << ' ' << row.max_leakage << ' '
                      << (row.exhaustive ? "exhaustive" : "sampled") << ' ' << row.sets_checked
                      << "\n";
        }
        return 0;
    }

    if (args.revealed.empty()) {
        throw ValidationError("analyze needs --revealed positions or --wtc2-sweep SIZE");
    }
    const std::vector<std::size_t> positions = parse_positions(args.revealed);

    if (args.values.empty()) {
        const std::size_t d = leakage_dimension(code, positions);
        std::cout << "revealed: " << args.revealed << "\n";
        std::cout << "leaked-dimension: " << d << "\n";
        std::cout << "distinct-messages: q^" << (code.r() - d) << "\n";
        return 0;
    }

    const FieldVector values = parse_vector(args.values, code.field());
    if (values.size() != positions.size()) {
        throw ValidationError("--revealed and --values must have the same length");
    }
    std::vector<std::pair<std::size_t, FieldElement>> pairs;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        pairs.emplace_back(positions[i], values.at(i));
    }
    const LeakageReport report = analyze_reveal(code, pairs);
    std::cout << "revealed: " << args.revealed << "\n";
    std::cout << "leaked-dimension: " << report.leaked_dimension << "\n";
    std::cout << "posterior-size: " << report.posterior_size << "\n";
    std::cout << "posterior-uniform: " << (report.posterior_uniform ? "true" : "false") << "\n";
    if (report.posterior_size <= 64) {
        for (const auto& [message, count] : posterior_messages(code, pairs)) {
            std::cout << "message: " << vector_text(message) << " completions: " << count << "\n";
        }
    }
    return 0;
}

// --- bounds ------------------------------------------------------------------

struct BoundsArgs {
    std::uint32_t q = 0;
    std::size_t n_min = 4;
    std::size_t n_max = 12;
    std::size_t k_min = 2;
    std::size_t k_max = 4;
};

int cmd_bounds(const BoundsArgs& args) {
    const double min_rate = min_bound_rate(args.q);
    const double max_rate = std::log(2.0) / std::log(static_cast<double>(args.q));
    std::cout.setf(std::ios::fixed);
    std::cout.precision(12);
    std::cout << "q: " << args.q << "\n";
    std::cout << "min-rate: " << min_rate << "\n";
    std::cout << "max-rate: " << max_rate << "\n";
    std::cout << "n k count margin guaranteed\n";
    for (std::size_t n = args.n_min; n <= args.n_max; ++n) {
        for (std::size_t k = args.k_min; k <= args.k_max && k <= n; ++k) {
            const BoundsRow row = bounds_row(n, k, args.q);
            std::cout << n << ' ' << k << ' ' << row.gaussian_nk << ' ' << row.margin << ' '
                      << (row.margin > 0 ? "yes" : "no") << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secure two-party linear function evaluation over coset-coded inputs"};
    app.require_subcommand(1);

    GenCodeArgs gen;
    CLI::App* gen_cmd = app.add_subcommand("gen-code", "Construct a code and certify it");
    gen_cmd->add_option("kind", gen.kind, "simplex | expand | search | example-9-4 | example-20-4")
        ->required();
    gen_cmd->add_option("--r", gen.r, "code dimension");
    gen_cmd->add_option("--q", gen.q, "field modulus");
    gen_cmd->add_option("--n", gen.n, "code length (search)");
    gen_cmd->add_option("--in", gen.in_path, "binary code file to expand");
    gen_cmd->add_option("--trials", gen.trials, "search attempts (default 1000)");
    gen_cmd->add_option("--seed", gen.seed, "rng seed (search)");
    gen_cmd->add_option("--out", gen.out_path, "write the code file here");

    std::string check_path;
    CLI::App* check_cmd = app.add_subcommand("check", "Certify a code file");
    check_cmd->add_option("--code", check_path, "code file")->required();

    RunArgs run;
    CLI::App* run_cmd = app.add_subcommand("run", "Run the two-party protocol");
    run_cmd->add_option("role", run.role, "local | p1 | p2")->required();
    run_cmd->add_option("--function", run.function, "scalar | euclid | hamming");
    run_cmd->add_option("--x", run.x_text, "encoder input");
    run_cmd->add_option("--y", run.y_text, "evaluator input");
    run_cmd->add_option("--code", run.code_path, "code file")->required();
    run_cmd->add_option("--seed", run.seed, "run seed (drawn and printed when omitted)");
    run_cmd->add_flag("--reveal", run.reveal, "also reveal the result to the encoder");
    run_cmd->add_option("--ot-mode", run.ot_mode, "batched | sequential");
    run_cmd->add_option("--force-z", run.force_z, "pin the coset encoding (testing)");
    run_cmd->add_flag("--allow-non-minimal", run.allow_non_minimal,
                      "run on an uncertified code (forfeits the privacy guarantee)");
    run_cmd->add_option("--listen", run.listen, "p1: port to listen on (9000 or :9000)");
    run_cmd->add_option("--connect", run.connect, "p2: host:port to connect to");
    run_cmd->add_option("--transcript", run.transcript, "socket mode: write own transcript");
    run_cmd->add_option("--transcript-p1", run.transcript_p1, "local mode: write p1 transcript");
    run_cmd->add_option("--transcript-p2", run.transcript_p2, "local mode: write p2 transcript");

    AnalyzeArgs analyze;
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Leakage analysis of revealed positions");
    analyze_cmd->add_option("--code", analyze.code_path, "code file")->required();
    analyze_cmd->add_option("--revealed", analyze.revealed, "1-based positions, comma-separated");
    analyze_cmd->add_option("--values", analyze.values, "observed values at those positions");
    analyze_cmd->add_option("--wtc2-sweep", analyze.sweep, "worst-case leakage per set size up to N")
        ->expected(1);
    analyze_cmd->add_option("--seed", analyze.seed, "rng seed for sampled sweeps");

    BoundsArgs bounds;
    CLI::App* bounds_cmd = app.add_subcommand("bounds", "Existence and cardinality bound table");
    bounds_cmd->add_option("--q", bounds.q, "field modulus")->required();
    bounds_cmd->add_option("--n-min", bounds.n_min, "table start length");
    bounds_cmd->add_option("--n-max", bounds.n_max, "table end length");
    bounds_cmd->add_option("--k-min", bounds.k_min, "table start dimension");
    bounds_cmd->add_option("--k-max", bounds.k_max, "table end dimension");

    try {
        app.parse(argc, argv);
        analyze.do_sweep = analyze_cmd->count("--wtc2-sweep") > 0;
        if (gen_cmd->parsed()) return cmd_gen_code(gen);
        if (check_cmd->parsed()) return cmd_check(check_path);
        if (run_cmd->parsed()) return cmd_run(run);
        if (analyze_cmd->parsed()) return cmd_analyze(analyze);
        if (bounds_cmd->parsed()) return cmd_bounds(bounds);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const SecurityRefusalError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const TransportError& e) {
        std::cerr << "transport error: " << e.what() << "\n";
        return 4;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
