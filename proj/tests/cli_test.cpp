#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks against the built CLI binary; the path arrives in the
// HAARMOD_CLI environment variable (set by ctest).

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int exit_code = -1;
    std::string output;
};

const char* cli_path() {
    return std::getenv("HAARMOD_CLI");
}

CliResult run_cli(const std::string& args, const std::string& extra_env = "") {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() / "haarmod_cli_test";
    fs::create_directories(dir);
    fs::path out = dir / ("out." + std::to_string(counter++));
    std::string cmd = extra_env + (extra_env.empty() ? "" : " ") + std::string(cli_path()) +
                      " " + args + " > " + out.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = status == -1 ? -1 : WEXITSTATUS(status);
    std::ifstream in(out, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    result.output = ss.str();
    return result;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("factor prints the prime factorization") {
    REQUIRE(cli_path() != nullptr);
    auto r = run_cli("factor 12");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "{\"m\":12,\"factors\":[[2,2],[3,1]]}\n");

    auto prime = run_cli("factor 97");
    CHECK(prime.exit_code == 0);
    CHECK(prime.output == "{\"m\":97,\"factors\":[[97,1]]}\n");
}

TEST_CASE("factor rejects invalid moduli with exit code 2") {
    CHECK(run_cli("factor 1").exit_code == 2);
    CHECK(run_cli("factor 0").exit_code == 2);
}

TEST_CASE("count reports exact group orders as decimal strings") {
    auto r = run_cli("count --ring zm:6 --n 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"order\":\"288\"") != std::string::npos);

    CHECK(run_cli("count --ring fq:2:1 --n 3").output.find("\"order\":\"168\"") !=
          std::string::npos);
    CHECK(run_cli("count --ring local_pp:2:2 --n 2").output.find("\"order\":\"96\"") !=
          std::string::npos);
    CHECK(run_cli("count --ring local_tp:2:1:2 --n 2").output.find("\"order\":\"96\"") !=
          std::string::npos);
}

TEST_CASE("sample runs are reproducible and default to s = n") {
    auto a = run_cli("sample --ring zm:12 --n 4 --s 2 --draws 50 --seed 9");
    auto b = run_cli("sample --ring zm:12 --n 4 --s 2 --draws 50 --seed 9");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("\"seed\":\"9\"") != std::string::npos);

    auto full = run_cli("sample --ring zm:6 --n 3 --draws 5 --seed 1");
    CHECK(full.exit_code == 0);
    CHECK(full.output.find("\"S\":3") != std::string::npos);

    CHECK(run_cli("sample --ring zm:6 --n 3 --draws 0 --seed 1").exit_code == 2);
}

TEST_CASE("the environment seed is used when no flag is given") {
    auto env_run = run_cli("sample --ring zm:6 --n 2 --draws 5", "HAAR_MODULAR_SEED=123");
    CHECK(env_run.exit_code == 0);
    CHECK(env_run.output.find("\"seed\":\"123\"") != std::string::npos);

    // an explicit flag wins over the environment
    auto flag_run = run_cli("sample --ring zm:6 --n 2 --draws 5 --seed 4",
                            "HAAR_MODULAR_SEED=123");
    CHECK(flag_run.output.find("\"seed\":\"4\"") != std::string::npos);

    // the default seed is the documented constant 0
    auto default_run = run_cli("sample --ring zm:6 --n 2 --draws 5");
    CHECK(default_run.output.find("\"seed\":\"0\"") != std::string::npos);
}

TEST_CASE("dist prints the exact corner law") {
    auto r = run_cli("dist --ring zm:2 --n 2 --s 1 --method enumerate");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("{\"corner\":[0],\"num\":\"1\",\"den\":\"3\"}") != std::string::npos);
    CHECK(r.output.find("{\"corner\":[1],\"num\":\"2\",\"den\":\"3\"}") != std::string::npos);
}

TEST_CASE("dist enumerate fails cleanly past the cap") {
    auto r = run_cli("dist --ring zm:12 --n 4 --s 1 --method enumerate");
    CHECK(r.exit_code == 1);
}

TEST_CASE("sweep emits the closed-form exact column") {
    auto r = run_cli("sweep --ring zm:2 --s 1 --n 2..10 --mode exact");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.output);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "N,mode,tv_num,tv_den,tv_float,draws,seed");
    std::uint32_t n = 2;
    while (std::getline(lines, line)) {
        std::uint64_t denom = 2ull * ((1ull << n) - 1);
        std::string expected = std::to_string(n) + ",exact,1," + std::to_string(denom) + ",,0,0";
        CHECK(line == expected);
        ++n;
    }
    CHECK(n == 11);
}

TEST_CASE("verify runs a named invariant suite") {
    auto r = run_cli("verify --suite counting");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("ok counting/") != std::string::npos);
    CHECK(r.output.find("PASSED") != std::string::npos);

    CHECK(run_cli("verify --suite no_such_suite").exit_code == 2);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("count --ring zm:6").exit_code == 2);          // missing --n
    CHECK(run_cli("count --ring nope:1 --n 2").exit_code == 2);  // bad ring flag
    CHECK(run_cli("dist --ring zm:4 --n 2 --s 1 --method formula").exit_code == 2);
}

TEST_CASE("files written with --out match stdout output") {
    fs::path dir = fs::temp_directory_path() / "haarmod_cli_test";
    fs::create_directories(dir);
    fs::path out = dir / "batch.jsonl";
    auto direct = run_cli("sample --ring fq:2:2 --n 3 --s 1 --draws 20 --seed 5");
    auto filed = run_cli("sample --ring fq:2:2 --n 3 --s 1 --draws 20 --seed 5 --out " +
                         out.string());
    CHECK(filed.exit_code == 0);
    std::ifstream in(out, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == direct.output);
}

TEST_SUITE_END();
