#include "haarmod/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "haarmod/errors.hpp"

namespace haarmod {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Distributions over same-size rings are comparable: corner keys are the
// rings' canonical integer encodings.
void check_comparable(const RingPtr& a, std::uint32_t sa, const RingPtr& b, std::uint32_t sb) {
    require(a != nullptr && b != nullptr, "stats: ring required");
    require(sa == sb, "stats: corner size mismatch");
    require(a->size() == b->size(), "stats: ring size mismatch");
}

}  // namespace

EmpiricalDist empirical_dist(const SampleBatch& batch) {
    require(batch.ring != nullptr, "empirical_dist: batch has no ring");
    require(!batch.corners.empty(), "empirical_dist: empty batch");
    EmpiricalDist emp;
    emp.ring = batch.ring;
    emp.s = batch.s;
    const std::size_t cells = std::size_t{batch.s} * batch.s;
    for (const auto& corner : batch.corners) {
        require(corner.size() == cells, "empirical_dist: corner size mismatch in batch");
        ++emp.counts[corner];
        ++emp.total;
    }
    return emp;
}

double tv_estimate(const EmpiricalDist& emp, const ExactDist& ref) {
    check_comparable(emp.ring, emp.s, ref.ring, ref.s);
    require(emp.total > 0, "tv_estimate: no draws");
    if (ref.residual_corners > 1)
        throw std::domain_error("tv_estimate: reference has an aggregated multi-corner class");
    // exact arithmetic on the plug-in frequencies, converted at the end
    BigRational acc = 0;
    BigCount n(static_cast<unsigned long>(emp.total));
    for (const auto& [key, prob] : ref.mass) {
        auto it = emp.counts.find(key);
        BigRational f = 0;
        if (it != emp.counts.end()) {
            f = BigRational(BigCount(static_cast<unsigned long>(it->second)), n);
            f.canonicalize();
        }
        acc += abs(f - prob);
    }
    // observed corners the reference gives zero (or residual) mass
    BigRational stray = 0;
    for (const auto& [key, count] : emp.counts) {
        if (ref.mass.find(key) == ref.mass.end()) {
            BigRational f(BigCount(static_cast<unsigned long>(count)), n);
            f.canonicalize();
            stray += f;
        }
    }
    if (ref.residual_corners == 1) {
        acc += abs(stray - ref.residual_mass);
    } else {
        acc += stray;
    }
    BigRational tv = acc / 2;
    tv.canonicalize();
    return tv.get_d();
}

double tv_estimate_vs_uniform(const EmpiricalDist& emp) {
    require(emp.ring != nullptr, "tv_estimate_vs_uniform: ring required");
    require(emp.total > 0, "tv_estimate_vs_uniform: no draws");
    BigCount space = order_m(*emp.ring, emp.s, emp.s);
    BigRational u(1, space);
    u.canonicalize();
    BigCount n(static_cast<unsigned long>(emp.total));
    BigRational acc = 0;
    for (const auto& [key, count] : emp.counts) {
        BigRational f(BigCount(static_cast<unsigned long>(count)), n);
        f.canonicalize();
        acc += abs(f - u);
    }
    BigCount unseen = space - BigCount(static_cast<unsigned long>(emp.counts.size()));
    acc += BigRational(unseen) * u;
    BigRational tv = acc / 2;
    tv.canonicalize();
    return tv.get_d();
}

// ---------------------------------------------------------------------------
// chi-squared machinery

namespace {

struct Cell {
    std::vector<std::uint64_t> key;
    double expected = 0;   // primary group
    double observed = 0;
    double expected2 = 0;  // second group (two-sample only)
    double observed2 = 0;
};

// Deterministic merge: while any cell is below the threshold, fold the
// smallest-expected non-bucket cell (ties: smallest key) into the bucket,
// the cell with the lexicographically last key.
void merge_cells(std::vector<Cell>& cells, bool two_sample) {
    if (cells.empty()) throw InsufficientDataError("chi-squared: no cells");
    auto min_expected = [&](const Cell& c) {
        return two_sample ? std::min(c.expected, c.expected2) : c.expected;
    };
    std::sort(cells.begin(), cells.end(),
              [](const Cell& a, const Cell& b) { return a.key < b.key; });
    while (cells.size() > 1) {
        double global_min = min_expected(cells[0]);
        for (std::size_t i = 1; i < cells.size(); ++i) {
            global_min = std::min(global_min, min_expected(cells[i]));
        }
        if (global_min >= 5.0) break;
        const std::size_t bucket = cells.size() - 1;
        std::size_t worst = 0;
        for (std::size_t i = 1; i < bucket; ++i) {
            if (min_expected(cells[i]) < min_expected(cells[worst])) worst = i;
        }
        cells[bucket].expected += cells[worst].expected;
        cells[bucket].observed += cells[worst].observed;
        cells[bucket].expected2 += cells[worst].expected2;
        cells[bucket].observed2 += cells[worst].observed2;
        cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(worst));
    }
    bool all_ok = cells.size() >= 2;
    for (const Cell& c : cells) all_ok = all_ok && min_expected(c) >= 5.0;
    if (!all_ok) {
        throw InsufficientDataError(
            "chi-squared: fewer than two cells with expected count >= 5 after merging");
    }
}

ChiSquared pearson(std::vector<Cell> cells, bool two_sample, double impossible_observed) {
    ChiSquared out;
    if (impossible_observed > 0) {
        out.statistic = std::numeric_limits<double>::infinity();
        out.df = cells.empty() ? 1 : cells.size();
        out.cells = cells.size() + 1;
        out.p_value = 0.0;
        return out;
    }
    merge_cells(cells, two_sample);
    double stat = 0;
    for (const Cell& c : cells) {
        double d = c.observed - c.expected;
        stat += d * d / c.expected;
        if (two_sample) {
            double d2 = c.observed2 - c.expected2;
            stat += d2 * d2 / c.expected2;
        }
    }
    out.statistic = stat;
    out.cells = cells.size();
    out.df = cells.size() - 1;
    out.p_value = chi_squared_p_value(stat, out.df);
    return out;
}

}  // namespace

ChiSquared chi_squared_test(const EmpiricalDist& emp, const ExactDist& ref) {
    check_comparable(emp.ring, emp.s, ref.ring, ref.s);
    require(emp.total > 0, "chi_squared_test: no draws");
    const double n = static_cast<double>(emp.total);
    std::vector<Cell> cells;
    cells.reserve(ref.mass.size() + 1);
    double accounted = 0;
    for (const auto& [key, prob] : ref.mass) {
        Cell c;
        c.key = key;
        c.expected = prob.get_d() * n;
        auto it = emp.counts.find(key);
        c.observed = it == emp.counts.end() ? 0.0 : static_cast<double>(it->second);
        accounted += c.observed;
        cells.push_back(std::move(c));
    }
    double stray = n - accounted;  // draws outside the listed support
    if (ref.residual_corners > 0) {
        Cell c;
        c.key = std::vector<std::uint64_t>(std::size_t{emp.s} * emp.s,
                                           emp.ring->size());  // sorts after any real key
        c.expected = ref.residual_mass.get_d() * n;
        c.observed = stray;
        cells.push_back(std::move(c));
        stray = 0;
    }
    return pearson(std::move(cells), false, stray);
}

ChiSquared chi_squared_vs_uniform(const EmpiricalDist& emp) {
    require(emp.ring != nullptr, "chi_squared_vs_uniform: ring required");
    require(emp.total > 0, "chi_squared_vs_uniform: no draws");
    BigCount space_big = order_m(*emp.ring, emp.s, emp.s);
    if (space_big > BigCount(1'000'000ul))
        throw TooLargeError("chi_squared_vs_uniform: too many corner cells to materialize");
    const std::uint64_t space = space_big.get_ui();
    const double expected = static_cast<double>(emp.total) / static_cast<double>(space);
    const std::uint64_t ring_size = emp.ring->size();
    const std::size_t cells_per_corner = std::size_t{emp.s} * emp.s;
    std::vector<Cell> cells;
    cells.reserve(space);
    std::vector<std::uint64_t> key(cells_per_corner, 0);
    for (std::uint64_t index = 0;; ++index) {
        Cell c;
        c.key = key;
        c.expected = expected;
        auto it = emp.counts.find(key);
        c.observed = it == emp.counts.end() ? 0.0 : static_cast<double>(it->second);
        cells.push_back(std::move(c));
        // next corner in lexicographic (row-major) order
        std::size_t d = cells_per_corner;
        while (d-- > 0) {
            if (++key[d] < ring_size) break;
            key[d] = 0;
            if (d == 0) {
                return pearson(std::move(cells), false, 0.0);
            }
        }
    }
}

ChiSquared chi_squared_two_sample(const EmpiricalDist& a, const EmpiricalDist& b) {
    check_comparable(a.ring, a.s, b.ring, b.s);
    require(a.total > 0 && b.total > 0, "chi_squared_two_sample: no draws");
    const double na = static_cast<double>(a.total), nb = static_cast<double>(b.total);
    std::map<std::vector<std::uint64_t>, std::pair<double, double>> merged;
    for (const auto& [key, count] : a.counts) merged[key].first = static_cast<double>(count);
    for (const auto& [key, count] : b.counts) merged[key].second = static_cast<double>(count);
    std::vector<Cell> cells;
    cells.reserve(merged.size());
    for (const auto& [key, obs] : merged) {
        double pooled = (obs.first + obs.second) / (na + nb);
        Cell c;
        c.key = key;
        c.observed = obs.first;
        c.expected = pooled * na;
        c.observed2 = obs.second;
        c.expected2 = pooled * nb;
        cells.push_back(std::move(c));
    }
    return pearson(std::move(cells), true, 0.0);
}

// ---------------------------------------------------------------------------
// regularized incomplete gamma

namespace {

constexpr int kGammaMaxIter = 10000;
constexpr double kGammaEps = 1e-16;

// lower regularized P(a, x) by series
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kGammaMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kGammaEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// upper regularized Q(a, x) by Lentz continued fraction
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kGammaMaxIter; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kGammaEps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
    if (a <= 0) throw std::invalid_argument("gamma_q: a must be positive");
    if (x < 0) throw std::invalid_argument("gamma_q: x must be non-negative");
    if (x == 0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_squared_p_value(double statistic, std::uint64_t df) {
    if (df == 0) throw std::invalid_argument("chi_squared_p_value: df must be positive");
    if (std::isinf(statistic)) return 0.0;
    return gamma_q(static_cast<double>(df) / 2.0, statistic / 2.0);
}

// ---------------------------------------------------------------------------
// convergence sweep

namespace {

ExactDist exact_dist_auto(const RingPtr& ring, std::uint32_t n, std::uint32_t s) {
    if (ring->is_field() && s == 1) return exact_corner_dist(ring, n, s, DistMethod::Formula);
    return exact_corner_dist(ring, n, s, DistMethod::Enumerate);
}

}  // namespace

SweepResult convergence_sweep(const RingPtr& ring, std::uint32_t s,
                              const std::vector<std::uint32_t>& n_values, SweepMode mode,
                              std::uint64_t draws, std::uint64_t seed, unsigned threads) {
    require(ring != nullptr, "convergence_sweep: ring required");
    require(!n_values.empty(), "convergence_sweep: no matrix sizes given");
    for (std::uint32_t n : n_values) {
        if (s < 1 || s > n)
            throw std::invalid_argument("convergence_sweep: need 1 <= s <= every n");
    }
    if (mode == SweepMode::MonteCarlo)
        require(draws >= 1, "convergence_sweep: Monte Carlo mode needs draws >= 1");

    SweepResult result;
    result.ring = ring;
    result.s = s;
    result.mode = mode;
    result.draws = mode == SweepMode::MonteCarlo ? draws : 0;
    result.seed = seed;
    result.rows.resize(n_values.size());

    RngStream root(seed);
    auto compute_row = [&](std::size_t i) {
        const std::uint32_t n = n_values[i];
        SweepRow row;
        row.n = n;
        row.mode = mode;
        row.seed = seed;
        if (mode == SweepMode::Exact) {
            row.draws = 0;
            row.tv_exact = tv_to_uniform(exact_dist_auto(ring, n, s));
        } else {
            row.draws = draws;
            // child stream labeled by n: result independent of thread count
            RngStream child = root.split("sweep/N=" + std::to_string(n));
            SampleBatch batch = sample_truncated(ring, n, s, draws, child);
            row.tv_mc = tv_estimate_vs_uniform(empirical_dist(batch));
        }
        result.rows[i] = std::move(row);
    };

    if (threads <= 1 || n_values.size() <= 1) {
        for (std::size_t i = 0; i < n_values.size(); ++i) compute_row(i);
        return result;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(n_values.size()));
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= n_values.size()) return;
                    compute_row(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return result;
}

}  // namespace haarmod
