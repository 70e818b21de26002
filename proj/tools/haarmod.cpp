// haarmod: exact Haar samplers and corner-law tables for invertible-matrix
// groups over finite rings.
//
// Subcommands: factor, count, sample, dist, sweep, verify. Every command is
// byte-reproducible from its flags and seed. Exit codes: 0 success,
// 1 internal or verification failure, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "haarmod/counting.hpp"
#include "haarmod/errors.hpp"
#include "haarmod/json_io.hpp"
#include "haarmod/sampling.hpp"
#include "haarmod/stats.hpp"
#include "haarmod/verify.hpp"

namespace {

using namespace haarmod;

constexpr std::uint64_t kDefaultSeed = 0;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed) {
    if (flag_seed) return *flag_seed;
    if (const char* env = std::getenv("HAAR_MODULAR_SEED")) {
        std::string v(env);
        if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("HAAR_MODULAR_SEED must be an unsigned integer");
        return std::strtoull(v.c_str(), nullptr, 10);
    }
    return kDefaultSeed;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

// sizes as "2..10" (inclusive range) or "4,8,16,24"
std::vector<std::uint32_t> parse_sizes(const std::string& text) {
    std::vector<std::uint32_t> sizes;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        std::uint64_t lo = std::strtoull(text.substr(0, dots).c_str(), nullptr, 10);
        std::uint64_t hi = std::strtoull(text.substr(dots + 2).c_str(), nullptr, 10);
        if (lo < 1 || hi < lo) throw std::invalid_argument("bad size range: " + text);
        for (std::uint64_t n = lo; n <= hi; ++n) sizes.push_back(static_cast<std::uint32_t>(n));
        return sizes;
    }
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (cur.empty()) continue;
            std::uint64_t n = std::strtoull(cur.c_str(), nullptr, 10);
            if (n < 1) throw std::invalid_argument("bad size list: " + text);
            sizes.push_back(static_cast<std::uint32_t>(n));
            cur.clear();
        } else if (c >= '0' && c <= '9') {
            cur.push_back(c);
        } else {
            throw std::invalid_argument("bad size list: " + text);
        }
    }
    if (sizes.empty()) throw std::invalid_argument("empty size list");
    return sizes;
}

int run(int argc, char** argv) {
    CLI::App app{"Exact Haar sampling and corner laws for GL_N over finite rings"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "progress reporting on stderr");

    // factor
    auto* factor_cmd = app.add_subcommand("factor", "Prime factorization of a modulus");
    std::uint64_t factor_m = 0;
    factor_cmd->add_option("m", factor_m, "modulus, 2 <= m < 2^63")->required();
    std::string factor_out;
    factor_cmd->add_option("--out", factor_out, "write the report to a file");

    // count
    auto* count_cmd = app.add_subcommand("count", "Exact |GL_N(ring)|");
    std::string count_ring;
    std::uint32_t count_n = 0;
    std::string count_out;
    count_cmd->add_option("--ring", count_ring, "ring flag, e.g. zm:12")->required();
    count_cmd->add_option("--n", count_n, "matrix size N >= 1")->required();
    count_cmd->add_option("--out", count_out, "write the report to a file");

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "Corners of Haar draws, JSON lines");
    std::string sample_ring, sample_out;
    std::uint32_t sample_n = 0;
    std::optional<std::uint32_t> sample_s;
    std::uint64_t sample_draws = 0;
    std::optional<std::uint64_t> sample_seed;
    sample_cmd->add_option("--ring", sample_ring, "ring flag")->required();
    sample_cmd->add_option("--n", sample_n, "matrix size N")->required();
    sample_cmd->add_option("--s", sample_s, "corner size S (default: N)");
    sample_cmd->add_option("--draws", sample_draws, "number of draws >= 1")->required();
    sample_cmd->add_option("--seed", sample_seed, "RNG seed (default 0, or HAAR_MODULAR_SEED)");
    sample_cmd->add_option("--out", sample_out, "output file (default: stdout)");

    // dist
    auto* dist_cmd = app.add_subcommand("dist", "Exact corner distribution");
    std::string dist_ring, dist_method = "enumerate", dist_out;
    std::uint32_t dist_n = 0, dist_s = 0;
    dist_cmd->add_option("--ring", dist_ring, "ring flag")->required();
    dist_cmd->add_option("--n", dist_n, "matrix size N")->required();
    dist_cmd->add_option("--s", dist_s, "corner size S")->required();
    dist_cmd->add_option("--method", dist_method, "enumerate | formula")
        ->check(CLI::IsMember({"enumerate", "formula"}));
    dist_cmd->add_option("--out", dist_out, "output file (default: stdout)");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "TV distance to uniform per matrix size");
    std::string sweep_ring, sweep_sizes, sweep_mode = "exact", sweep_format = "csv", sweep_out;
    std::uint32_t sweep_s = 0;
    std::uint64_t sweep_draws = 100000;
    std::optional<std::uint64_t> sweep_seed;
    unsigned sweep_threads = 1;
    sweep_cmd->add_option("--ring", sweep_ring, "ring flag")->required();
    sweep_cmd->add_option("--s", sweep_s, "corner size S")->required();
    sweep_cmd->add_option("--n", sweep_sizes, "sizes, e.g. 2..10 or 4,8,16,24")->required();
    sweep_cmd->add_option("--mode", sweep_mode, "exact | mc")
        ->check(CLI::IsMember({"exact", "mc"}));
    sweep_cmd->add_option("--draws", sweep_draws, "draws per size in mc mode (default 1e5)");
    sweep_cmd->add_option("--seed", sweep_seed, "RNG seed (default 0, or HAAR_MODULAR_SEED)");
    sweep_cmd->add_option("--threads", sweep_threads, "worker threads (default 1)");
    sweep_cmd->add_option("--format", sweep_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--out", sweep_out, "output file (default: stdout)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Run an invariant suite");
    std::string verify_suite;
    std::optional<std::uint64_t> verify_seed;
    verify_cmd->add_option("--suite", verify_suite, "rings|matrices|sampling|counting|stats|all")
        ->required();
    verify_cmd->add_option("--seed", verify_seed, "RNG seed (default 0, or HAAR_MODULAR_SEED)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (factor_cmd->parsed()) {
        emit(factorization_to_json(factorize(factor_m)), factor_out);
        return 0;
    }

    if (count_cmd->parsed()) {
        if (count_n < 1) throw std::invalid_argument("count: --n must be at least 1");
        auto ring = parse_ring_flag(count_ring);
        nlohmann::ordered_json report{
            {"ring", nlohmann::ordered_json::parse(ring_to_json(*ring))},
            {"n", count_n},
            {"order", order_gl(*ring, count_n).get_str()}};
        emit(report.dump(), count_out);
        return 0;
    }

    if (sample_cmd->parsed()) {
        if (sample_n < 1) throw std::invalid_argument("sample: --n must be at least 1");
        if (sample_draws < 1) throw std::invalid_argument("sample: --draws must be at least 1");
        auto ring = parse_ring_flag(sample_ring);
        std::uint32_t s = sample_s.value_or(sample_n);
        RngStream rng(resolve_seed(sample_seed));
        SampleBatch batch = sample_truncated(ring, sample_n, s, sample_draws, rng);
        std::ostringstream text;
        write_sample_batch(text, batch);
        emit(text.str(), sample_out);
        return 0;
    }

    if (dist_cmd->parsed()) {
        auto ring = parse_ring_flag(dist_ring);
        DistMethod method =
            dist_method == "formula" ? DistMethod::Formula : DistMethod::Enumerate;
        std::function<void(double)> progress;
        int last_percent = -1;
        if (verbose && method == DistMethod::Enumerate) {
            progress = [&last_percent](double fraction) {
                int percent = static_cast<int>(fraction * 100);
                if (percent != last_percent) {
                    std::cerr << "\renumerating: " << percent << "%" << std::flush;
                    last_percent = percent;
                    if (percent == 100) std::cerr << "\n";
                }
            };
        }
        ExactDist dist = exact_corner_dist(ring, dist_n, dist_s, method, progress);
        dist.validate();
        emit(exact_dist_to_json(dist), dist_out);
        return 0;
    }

    if (sweep_cmd->parsed()) {
        auto ring = parse_ring_flag(sweep_ring);
        auto sizes = parse_sizes(sweep_sizes);
        SweepMode mode = sweep_mode == "mc" ? SweepMode::MonteCarlo : SweepMode::Exact;
        SweepResult result = convergence_sweep(ring, sweep_s, sizes, mode, sweep_draws,
                                               resolve_seed(sweep_seed), sweep_threads);
        emit(sweep_format == "json" ? sweep_to_json(result) : sweep_to_csv(result), sweep_out);
        return 0;
    }

    if (verify_cmd->parsed()) {
        auto checks = verify::run_suite(verify_suite, resolve_seed(verify_seed));
        bool all_passed = true;
        for (const auto& check : checks) {
            if (check.passed) {
                std::cout << "ok " << check.suite << "/" << check.name << "\n";
            } else {
                all_passed = false;
                std::cout << "FAIL " << check.suite << "/" << check.name << ": " << check.detail
                          << "\n";
            }
        }
        std::cout << (all_passed ? "PASSED" : "FAILED") << " (" << checks.size() << " checks)\n";
        return all_passed ? 0 : 1;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
