#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "haarmod/counting.hpp"
#include "haarmod/sampling.hpp"

namespace haarmod {

/// Observed corner counts from a sample batch.
struct EmpiricalDist {
    RingPtr ring;
    std::uint32_t s = 0;
    std::uint64_t total = 0;
    std::map<std::vector<std::uint64_t>, std::uint64_t> counts;
};

EmpiricalDist empirical_dist(const SampleBatch& batch);

/// Plug-in total variation distance (1/2) sum_W |emp(W)/n - ref(W)|.
/// Biased upward at finite n; no correction is applied.
double tv_estimate(const EmpiricalDist& emp, const ExactDist& ref);
/// Same, against the uniform law on M_s(ring).
double tv_estimate_vs_uniform(const EmpiricalDist& emp);

struct ChiSquared {
    double statistic = 0;  // +inf when a probability-zero cell was observed
    std::uint64_t df = 0;
    double p_value = 1;
    std::uint64_t cells = 0;  // after merging
};

/// Pearson goodness of fit against an exact reference law. Cells with
/// expected count below 5 are merged deterministically: the cell of
/// smallest expected count (ties by smallest key) is folded into the
/// lexicographically last key until every cell reaches the threshold.
/// Throws InsufficientDataError when too few draws remain.
ChiSquared chi_squared_test(const EmpiricalDist& emp, const ExactDist& ref);

/// Goodness of fit against the uniform law on M_s(ring).
ChiSquared chi_squared_vs_uniform(const EmpiricalDist& emp);

/// Two-sample homogeneity test over the union of observed cells; same
/// merge rule applied to the smaller sample's expected counts.
ChiSquared chi_squared_two_sample(const EmpiricalDist& a, const EmpiricalDist& b);

/// Upper regularized incomplete gamma Q(a, x), absolute error <= 1e-10:
/// series for x < a + 1, continued fraction otherwise.
double gamma_q(double a, double x);

/// P(X > statistic) for a chi-squared variable with df degrees of freedom.
double chi_squared_p_value(double statistic, std::uint64_t df);

enum class SweepMode { Exact, MonteCarlo };

struct SweepRow {
    std::uint32_t n = 0;
    SweepMode mode = SweepMode::Exact;
    std::optional<BigRational> tv_exact;  // exact rows
    std::optional<double> tv_mc;          // Monte Carlo rows
    std::uint64_t draws = 0;
    std::uint64_t seed = 0;
};

/// Total variation distance to the uniform corner law, per matrix size.
struct SweepResult {
    RingPtr ring;
    std::uint32_t s = 0;
    SweepMode mode = SweepMode::Exact;
    std::uint64_t draws = 0;
    std::uint64_t seed = 0;
    std::vector<SweepRow> rows;
};

/// One row per n. Exact rows use the corner-law formula for fields at
/// s = 1 and enumeration otherwise; Monte Carlo rows sample `draws`
/// corners from a child stream labeled by n (so results are independent
/// of the thread count) and report the plug-in TV against uniform.
SweepResult convergence_sweep(const RingPtr& ring, std::uint32_t s,
                              const std::vector<std::uint32_t>& n_values, SweepMode mode,
                              std::uint64_t draws, std::uint64_t seed, unsigned threads = 1);

}  // namespace haarmod
