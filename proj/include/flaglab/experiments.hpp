#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "flaglab/certify.hpp"
#include "flaglab/homology.hpp"
#include "flaglab/rng.hpp"

namespace flaglab {

// Closed-form scales for the degree-k rational cohomology thresholds and the
// critical clique-count window. Logs are natural throughout; the constants
// do not survive any other base.

// ((k/2 + 1 + eps) ln n / n)^(1/(k+1)). Above this edge-probability scale
// the degree-k cohomology vanishes w.h.p. Errors when the value would
// exceed 1 (the regime is meaningless at such small n).
double upper_threshold(double n, int k, double eps);

// ((k + 1 + eps) / n)^(1/k). Below this scale the k-th cohomology vanishes
// w.h.p.; between the two scales it is nonzero w.h.p.
double lower_threshold(double n, int k, double eps);

// (((k/2+1) ln n + (k/2) ln ln n + c) / n)^(1/(k+1)): the window where the
// count of maximal (k+1)-cliques has a Poisson limit with mean
// poisson_mean(k, c).
double critical_p(double n, int k, double c);

// E[number of maximal (k+1)-cliques] = C(n, k+1) p^C(k+1,2) (1-p^(k+1))^(n-k-1),
// exact at every finite n.
double expected_maximal_cliques(double n, int k, double p);

// Limit of the above along p = critical_p(n, k, c):
// (k/2+1)^(k/2) / (k+1)! * exp(-c).
double poisson_mean(int k, double c);

// Limiting probability that G(n, c/n) has no cycles:
// sqrt(1-c) exp(c/2 + c^2/4), for 0 <= c < 1.
double pittel_probability(double c);

enum class Statistic {
    MaximalCliques,  // N_{k+1}
    BettiK,          // beta_k of the flag complex
    BettiProfile,    // indicator: reduced Betti support is exactly {k}
    Connected,
    Certified,      // vanishing certificate at D = k+1
    HasTCertified,  // property (T) certificate (k forced to 1)
};

std::string statistic_name(Statistic s);
Statistic statistic_from_name(const std::string& name);

struct TrialConfig {
    Statistic statistic = Statistic::Connected;
    int n = 0;
    int k = 1;
    // Exactly one of p / c must be given. c parameterizes the critical
    // window: p = critical_p(n, k, c).
    double p = -1.0;
    bool has_p = false;
    double c = 0.0;
    bool has_c = false;
    int trials = 0;
    std::uint64_t seed = 0;
    int cap = -1;  // default: k+1 for Betti/certify statistics
    bool audit = false;                          // Certified: also audit beta
    RankMethod method = RankMethod::Modular;     // Betti rank path
};

struct ExperimentRecord {
    TrialConfig config;
    double resolved_p = 0.0;
    std::vector<std::int64_t> values;  // indexed by stream
    double mean = 0.0;
    double variance = 0.0;       // sample variance (n-1 denominator)
    double ci_half_width = 0.0;  // 95% normal half-width
    std::map<std::int64_t, std::int64_t> histogram;
    std::int64_t audit_mismatches = 0;  // certified trials whose audited beta != 0
    double wall_seconds = 0.0;
};

// Monte Carlo over independent seed streams 0..trials-1. Parallel across
// trials; results are keyed by stream so aggregation is deterministic.
// Rejects infeasible configs (bad p, missing trials, cap below k+1) before
// sampling anything.
ExperimentRecord run_trials(const TrialConfig& config);
ExperimentRecord run_trials_serial(const TrialConfig& config);

// Whether a trial value counts as success for threshold sweeps: vanishing
// statistics succeed at 0, certificates and indicators at 1.
bool trial_success(Statistic s, std::int64_t value);

struct PoissonFit {
    double tv_distance = 0.0;
    double chi2 = 0.0;
    int dof = 0;
};

// Compares the empirical distribution of a nonnegative-integer statistic
// with Pois(mu); the Poisson tail is truncated where its mass drops below
// 1e-6.
PoissonFit poisson_fit(const ExperimentRecord& record, double mu);

struct SweepResult {
    std::vector<double> grid;       // p (or c) values, monotone
    bool grid_is_c = false;
    std::vector<ExperimentRecord> records;
    std::vector<double> success_fraction;
    double crossing = 0.0;  // interpolated location where success passes 1/2
    bool has_crossing = false;
};

// One record per grid point; base.has_p/has_c are ignored, the grid supplies
// the swept parameter. The crossing is linearly interpolated between the
// first adjacent pair of grid points whose success fractions straddle 1/2.
SweepResult sweep(const std::vector<double>& grid, bool grid_is_c, const TrialConfig& base);

// Serialization. JSONL: one {"stream","value"} line per trial. The summary
// embeds the full resolved config including the seed.
void write_record_jsonl(const ExperimentRecord& record, std::ostream& os);
void write_record_summary(const ExperimentRecord& record, std::ostream& os);
void write_sweep_summary(const SweepResult& sweep, std::ostream& os);
void write_sweep_csv(const SweepResult& sweep, std::ostream& os);

}  // namespace flaglab
