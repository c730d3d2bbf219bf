#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#ifndef COSEC_CLI_PATH
#define COSEC_CLI_PATH ""
#endif

namespace {

std::string cli_path() {
    if (const char* env = std::getenv("COSEC_CLI")) return env;
    return COSEC_CLI_PATH;
}

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr combined
};

CommandResult run_cli(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CommandResult result;
    char buf[512];
    while (std::fgets(buf, sizeof(buf), pipe) != nullptr) result.output += buf;
    const int status = ::pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

/// Scratch directory per test process.
std::string work_dir() {
    static std::string dir = [] {
        char tmpl[] = "/tmp/cosec-cli-XXXXXX";
        const char* d = ::mkdtemp(tmpl);
        REQUIRE(d != nullptr);
        return std::string(d);
    }();
    return dir;
}

std::string path_of(const std::string& name) { return work_dir() + "/" + name; }

std::string read_file(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    std::string out;
    char buf[512];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof(buf), f)) > 0) out.append(buf, n);
    std::fclose(f);
    return out;
}

}  // namespace

TEST_CASE("cli binary is wired into the test run") {
    REQUIRE_FALSE(cli_path().empty());
    const CommandResult r = run_cli("--help");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "gen-code"));
}

TEST_CASE("gen-code writes certified code files") {
    const std::string simplex = path_of("simplex7.txt");
    const CommandResult gen = run_cli("gen-code simplex --r 3 --q 2 --out " + simplex);
    CHECK(gen.exit_code == 0);
    CHECK(contains(gen.output, "n: 7"));
    CHECK(contains(gen.output, "w_max: 4"));
    CHECK(contains(gen.output, "minimal: true"));
    CHECK(read_file(simplex) == "2 3 7\n0 0 0 1 1 1 1\n0 1 1 0 0 1 1\n1 0 1 0 1 0 1\n");

    const std::string nine = path_of("code94.txt");
    CHECK(run_cli("gen-code example-9-4 --out " + nine).exit_code == 0);

    const CommandResult expand = run_cli("gen-code expand --in " + nine + " --q 3");
    CHECK(expand.exit_code == 0);
    CHECK(contains(expand.output, "n: 20"));
    CHECK(contains(expand.output, "minimal: true"));

    const CommandResult search =
        run_cli("gen-code search --n 7 --r 3 --q 2 --trials 200 --seed 11");
    CHECK(search.exit_code == 0);
    CHECK(contains(search.output, "seed: 11"));
    CHECK(contains(search.output, "minimal: true"));

    CHECK(run_cli("gen-code simplex --q 2").exit_code == 2);
    CHECK(run_cli("gen-code nonsense").exit_code == 2);
}

TEST_CASE("check reports certificates, weights and distances") {
    const std::string simplex = path_of("simplex7.txt");
    run_cli("gen-code simplex --r 3 --q 2 --out " + simplex);
    const CommandResult r = run_cli("check --code " + simplex);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "minimal: true"));
    CHECK(contains(r.output, "intersecting: true"));
    CHECK(contains(r.output, "weights: {4x7}"));
    CHECK(contains(r.output, "ghw: 4 6 7"));

    const std::string identity = path_of("identity.txt");
    FILE* f = std::fopen(identity.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs("2 2 2\n1 0\n0 1\n", f);
    std::fclose(f);
    const CommandResult id = run_cli("check --code " + identity);
    CHECK(id.exit_code == 0);
    CHECK(contains(id.output, "minimal: false"));
    CHECK(contains(id.output, "witness-a: (1,1)"));
    CHECK(contains(id.output, "witness-b: (1,0)"));

    CHECK(run_cli("check --code " + path_of("missing.txt")).exit_code == 2);
}

TEST_CASE("run local computes the worked example") {
    const std::string simplex = path_of("simplex7.txt");
    run_cli("gen-code simplex --r 3 --q 2 --out " + simplex);

    const CommandResult r =
        run_cli("run local --function scalar --x 101 --y 110 --code " + simplex + " --seed 1");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "seed: 1"));
    CHECK(contains(r.output, "p2-output: 1"));
    CHECK_FALSE(contains(r.output, "p1-output"));

    const CommandResult reveal = run_cli("run local --function scalar --x 101 --y 110 --code " +
                                         simplex + " --seed 1 --reveal");
    CHECK(reveal.exit_code == 0);
    CHECK(contains(reveal.output, "p1-output: 1"));
}

TEST_CASE("run rejects bad inputs with exit code 2") {
    const std::string simplex = path_of("simplex7.txt");
    run_cli("gen-code simplex --r 3 --q 2 --out " + simplex);

    CHECK(run_cli("run local --function scalar --x 191 --y 110 --code " + simplex).exit_code == 2);
    CHECK(run_cli("run local --function scalar --x 10 --y 110 --code " + simplex).exit_code == 2);
    CHECK(run_cli("run local --function scalar --x 101 --y 000 --code " + simplex).exit_code == 2);
    CHECK(run_cli("run local --function hamming --x 101 --y 110 --code " + simplex).exit_code ==
          2);  // needs q > r
}

TEST_CASE("run refuses non-minimal codes with exit code 3 unless overridden") {
    const std::string identity = path_of("identity.txt");
    FILE* f = std::fopen(identity.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs("2 2 2\n1 0\n0 1\n", f);
    std::fclose(f);

    const std::string base = "run local --function scalar --x 11 --y 10 --code " + identity;
    CHECK(run_cli(base + " --seed 4").exit_code == 3);
    const CommandResult forced = run_cli(base + " --seed 4 --allow-non-minimal");
    CHECK(forced.exit_code == 0);
    CHECK(contains(forced.output, "p2-output: 1"));
}

TEST_CASE("deterministic seeds reproduce identical transcripts") {
    const std::string simplex = path_of("simplex7.txt");
    run_cli("gen-code simplex --r 3 --q 2 --out " + simplex);
    const std::string base = "run local --function scalar --x 111 --y 101 --code " + simplex +
                             " --seed 31 --transcript-p1 ";
    run_cli(base + path_of("a1.txt") + " --transcript-p2 " + path_of("a2.txt"));
    run_cli(base + path_of("b1.txt") + " --transcript-p2 " + path_of("b2.txt"));
    CHECK(read_file(path_of("a1.txt")) == read_file(path_of("b1.txt")));
    CHECK(read_file(path_of("a2.txt")) == read_file(path_of("b2.txt")));
    CHECK_FALSE(read_file(path_of("a1.txt")).empty());
}

TEST_CASE("socket roles reproduce the local run and map transport failures to 4") {
    const std::string simplex = path_of("simplex7.txt");
    run_cli("gen-code simplex --r 3 --q 2 --out " + simplex);
    const int port = 21000 + static_cast<int>(::getpid() % 20000);

    const std::string common =
        " --function scalar --code " + simplex + " --seed 77 --ot-mode sequential";
    const std::string p1_cmd = cli_path() + " run p1 --x 101 --listen :" + std::to_string(port) +
                               common + " --transcript " + path_of("sock1.txt") + " > " +
                               path_of("p1.out") + " 2>&1 &";
    REQUIRE(std::system(p1_cmd.c_str()) == 0);
    const CommandResult p2 = run_cli("run p2 --y 110 --connect 127.0.0.1:" + std::to_string(port) +
                                     common + " --transcript " + path_of("sock2.txt"));
    CHECK(p2.exit_code == 0);
    CHECK(contains(p2.output, "p2-output: 1"));

    // Wait for p1 to flush its transcript.
    for (int i = 0; i < 100 && read_file(path_of("p1.out")).find("complete") == std::string::npos;
         ++i) {
        ::usleep(20 * 1000);
    }

    run_cli("run local --function scalar --x 101 --y 110 --code " + simplex +
            " --seed 77 --ot-mode sequential --transcript-p1 " + path_of("loc1.txt") +
            " --transcript-p2 " + path_of("loc2.txt"));
    CHECK(read_file(path_of("sock1.txt")) == read_file(path_of("loc1.txt")));
    CHECK(read_file(path_of("sock2.txt")) == read_file(path_of("loc2.txt")));

    CHECK(run_cli("run p2 --y 110 --connect 127.0.0.1:1" + common).exit_code == 4);
}

TEST_CASE("analyze prints posteriors and sweeps") {
    const std::string simplex = path_of("simplex7.txt");
    run_cli("gen-code simplex --r 3 --q 2 --out " + simplex);

    const CommandResult post =
        run_cli("analyze --code " + simplex + " --revealed 2,3,4,5 --values 0,0,0,1");
    CHECK(post.exit_code == 0);
    CHECK(contains(post.output, "leaked-dimension: 1"));
    CHECK(contains(post.output, "posterior-size: 4"));
    CHECK(contains(post.output, "posterior-uniform: true"));
    CHECK(contains(post.output, "message: (1,0,1) completions: 2"));

    const CommandResult dims = run_cli("analyze --code " + simplex + " --revealed 1,2");
    CHECK(dims.exit_code == 0);
    CHECK(contains(dims.output, "leaked-dimension: 0"));

    const CommandResult sweep = run_cli("analyze --code " + simplex + " --wtc2-sweep 7 --seed 5");
    CHECK(sweep.exit_code == 0);
    CHECK(contains(sweep.output, "3 0 exhaustive 35"));
    CHECK(contains(sweep.output, "7 3 exhaustive 1"));

    CHECK(run_cli("analyze --code " + simplex).exit_code == 2);
    CHECK(run_cli("analyze --code " + simplex + " --revealed 9").exit_code == 2);
}

TEST_CASE("bounds prints the rate thresholds and margin table") {
    const CommandResult r = run_cli("bounds --q 2 --n-min 10 --n-max 10 --k-min 2 --k-max 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "min-rate: 0.207518749639"));
    CHECK(contains(r.output, "max-rate: 1.000000000000"));
    CHECK(contains(r.output, "10 2 174251 115202 yes"));

    CHECK(run_cli("bounds --q 6").exit_code == 2);
}
