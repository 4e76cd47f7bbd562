#include "flaglab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "flaglab/graph.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace flaglab {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

double checked_root(double base, double inv_exponent, const char* what) {
    double value = std::pow(base, inv_exponent);
    if (!(value <= 1.0)) {
        std::ostringstream os;
        os << what << ": value " << value << " exceeds 1; n is too small for this scale";
        throw std::invalid_argument(os.str());
    }
    return value;
}

}  // namespace

double upper_threshold(double n, int k, double eps) {
    require(k >= 1, "upper_threshold: k must be >= 1");
    require(eps >= 0.0, "upper_threshold: eps must be >= 0");
    require(std::isfinite(n) && n > 1.0, "upper_threshold: n must be finite and > 1");
    double base = (k / 2.0 + 1.0 + eps) * std::log(n) / n;
    return checked_root(base, 1.0 / (k + 1), "upper_threshold");
}

double lower_threshold(double n, int k, double eps) {
    require(k >= 1, "lower_threshold: k must be >= 1");
    require(eps >= 0.0, "lower_threshold: eps must be >= 0");
    require(std::isfinite(n) && n > 0.0, "lower_threshold: n must be finite and positive");
    double base = (k + 1.0 + eps) / n;
    return checked_root(base, 1.0 / k, "lower_threshold");
}

double critical_p(double n, int k, double c) {
    require(k >= 1, "critical_p: k must be >= 1");
    require(std::isfinite(n) && n > std::exp(1.0), "critical_p: n must be finite and > e");
    require(std::isfinite(c), "critical_p: c must be finite");
    double ln_n = std::log(n);
    double numer = (k / 2.0 + 1.0) * ln_n + (k / 2.0) * std::log(ln_n) + c;
    require(numer > 0.0, "critical_p: c is so negative the window is empty");
    return checked_root(numer / n, 1.0 / (k + 1), "critical_p");
}

double expected_maximal_cliques(double n, int k, double p) {
    require(k >= 0, "expected_maximal_cliques: k must be >= 0");
    require(std::isfinite(n) && n >= 0.0, "expected_maximal_cliques: n must be finite and >= 0");
    require(p >= 0.0 && p <= 1.0, "expected_maximal_cliques: p must lie in [0, 1]");
    double binom = 1.0;
    for (int i = 0; i <= k; ++i) binom *= (n - i) / (i + 1.0);
    if (binom == 0.0) return 0.0;  // integer n <= k: no (k+1)-subsets at all
    double edges = k * (k + 1) / 2.0;
    double blocked = 1.0 - std::pow(p, k + 1);
    return binom * std::pow(p, edges) * std::pow(blocked, n - k - 1.0);
}

double poisson_mean(int k, double c) {
    require(k >= 1, "poisson_mean: k must be >= 1");
    require(std::isfinite(c), "poisson_mean: c must be finite");
    double factorial = 1.0;
    for (int i = 2; i <= k + 1; ++i) factorial *= i;
    return std::pow(k / 2.0 + 1.0, k / 2.0) / factorial * std::exp(-c);
}

double pittel_probability(double c) {
    require(c >= 0.0 && c < 1.0, "pittel_probability: c must lie in [0, 1)");
    return std::sqrt(1.0 - c) * std::exp(c / 2.0 + c * c / 4.0);
}

std::string statistic_name(Statistic s) {
    switch (s) {
        case Statistic::MaximalCliques: return "maximal-cliques";
        case Statistic::BettiK: return "betti";
        case Statistic::BettiProfile: return "profile";
        case Statistic::Connected: return "connected";
        case Statistic::Certified: return "certified";
        case Statistic::HasTCertified: return "property-t";
    }
    throw std::logic_error("statistic_name: unknown statistic");
}

Statistic statistic_from_name(const std::string& name) {
    if (name == "maximal-cliques") return Statistic::MaximalCliques;
    if (name == "betti") return Statistic::BettiK;
    if (name == "profile") return Statistic::BettiProfile;
    if (name == "connected") return Statistic::Connected;
    if (name == "certified") return Statistic::Certified;
    if (name == "property-t") return Statistic::HasTCertified;
    throw std::invalid_argument("unknown statistic: " + name);
}

namespace {

// Caps for the skeleton each statistic needs; -1 means no skeleton.
int default_cap(const TrialConfig& c) {
    switch (c.statistic) {
        case Statistic::MaximalCliques:
        case Statistic::Connected: return -1;
        case Statistic::BettiK: return c.k + 1;
        case Statistic::BettiProfile: return c.n > 0 ? c.n - 1 : 0;
        case Statistic::Certified: return c.k + 1;
        case Statistic::HasTCertified: return 2;
    }
    return -1;
}

struct ResolvedConfig {
    TrialConfig cfg;
    double p = 0.0;
    int cap = -1;
};

ResolvedConfig resolve(const TrialConfig& config) {
    require(config.n >= 1, "run_trials: n must be >= 1");
    require(config.trials >= 1, "run_trials: trials must be >= 1");
    require(config.has_p != config.has_c, "run_trials: exactly one of p and c must be set");
    require(config.k >= 0, "run_trials: k must be >= 0");
    if (config.statistic == Statistic::Certified)
        require(config.k >= 1, "run_trials: certification needs k >= 1");

    ResolvedConfig r;
    r.cfg = config;
    if (config.has_p) {
        require(config.p >= 0.0 && config.p <= 1.0, "run_trials: p must lie in [0, 1]");
        r.p = config.p;
    } else {
        r.p = critical_p(static_cast<double>(config.n), std::max(config.k, 1), config.c);
    }

    r.cap = config.cap >= 0 ? config.cap : default_cap(config);
    bool needs_betti = config.statistic == Statistic::BettiK ||
                       config.statistic == Statistic::BettiProfile;
    if (needs_betti)
        require(r.cap >= config.k + 1,
                "run_trials: cap must reach k+1 for Betti statistics");
    if (config.statistic == Statistic::HasTCertified)
        require(r.cap >= 2, "run_trials: property (T) checks need cap >= 2");
    return r;
}

std::int64_t evaluate_trial(const ResolvedConfig& r, int stream, std::int64_t* mismatch) {
    const TrialConfig& c = r.cfg;
    Graph g = Graph::sample_gnp(c.n, r.p, Seed{c.seed, static_cast<std::uint64_t>(stream)});
    switch (c.statistic) {
        case Statistic::MaximalCliques:
            return count_maximal_cliques(g, c.k + 1);
        case Statistic::Connected:
            return g.is_connected() ? 1 : 0;
        case Statistic::BettiK: {
            FlagSkeleton sk = FlagSkeleton::build(g, r.cap);
            return betti_at(sk, c.k, c.method);
        }
        case Statistic::BettiProfile: {
            FlagSkeleton sk = FlagSkeleton::build(g, r.cap);
            std::vector<std::int64_t> reduced = betti(sk, c.method).reduced();
            for (std::size_t d = 0; d < reduced.size(); ++d) {
                bool want_positive = static_cast<int>(d) == c.k;
                if ((reduced[d] > 0) != want_positive) return 0;
            }
            return 1;
        }
        case Statistic::Certified: {
            PipelineResult res = vanishing_pipeline(g, c.k, c.audit, c.method);
            if (res.audited && res.certificate.certified && res.betti_value != 0) ++*mismatch;
            return res.certificate.certified ? 1 : 0;
        }
        case Statistic::HasTCertified: {
            FlagSkeleton sk = FlagSkeleton::build(g, r.cap);
            return zuk_certify(sk).base.certified ? 1 : 0;
        }
    }
    throw std::logic_error("evaluate_trial: unknown statistic");
}

ExperimentRecord run_impl(const TrialConfig& config, bool parallel) {
    ResolvedConfig r = resolve(config);
    auto start = std::chrono::steady_clock::now();

    ExperimentRecord rec;
    rec.config = config;
    rec.resolved_p = r.p;
    rec.values.assign(config.trials, 0);

    std::vector<std::int64_t> mismatches(config.trials, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel && config.trials > 1)
#endif
    for (int s = 0; s < config.trials; ++s)
        rec.values[s] = evaluate_trial(r, s, &mismatches[s]);
    (void)parallel;

    double sum = 0.0;
    for (int s = 0; s < config.trials; ++s) {
        sum += static_cast<double>(rec.values[s]);
        rec.histogram[rec.values[s]] += 1;
        rec.audit_mismatches += mismatches[s];
    }
    rec.mean = sum / config.trials;
    if (config.trials > 1) {
        double ss = 0.0;
        for (std::int64_t v : rec.values) {
            double d = static_cast<double>(v) - rec.mean;
            ss += d * d;
        }
        rec.variance = ss / (config.trials - 1);
    }
    rec.ci_half_width = 1.96 * std::sqrt(rec.variance / config.trials);
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

}  // namespace

ExperimentRecord run_trials(const TrialConfig& config) { return run_impl(config, true); }
ExperimentRecord run_trials_serial(const TrialConfig& config) { return run_impl(config, false); }

bool trial_success(Statistic s, std::int64_t value) {
    switch (s) {
        case Statistic::MaximalCliques:
        case Statistic::BettiK: return value == 0;
        case Statistic::BettiProfile:
        case Statistic::Connected:
        case Statistic::Certified:
        case Statistic::HasTCertified: return value == 1;
    }
    throw std::logic_error("trial_success: unknown statistic");
}

PoissonFit poisson_fit(const ExperimentRecord& record, double mu) {
    require(std::isfinite(mu) && mu >= 0.0, "poisson_fit: mu must be finite and >= 0");
    require(!record.values.empty(), "poisson_fit: empty record");
    for (std::int64_t v : record.values)
        require(v >= 0, "poisson_fit: statistic must be nonnegative");

    std::int64_t max_obs = *std::max_element(record.values.begin(), record.values.end());
    double total = static_cast<double>(record.values.size());

    // Truncate the Poisson support where its remaining tail mass falls
    // below 1e-6 (and past every observed value); the leftover tail counts
    // as wholly unmatched mass in the TV distance.
    std::vector<double> pmf;
    double pj = std::exp(-mu);
    double cum = 0.0;
    for (std::int64_t j = 0;; ++j) {
        pmf.push_back(pj);
        cum += pj;
        if (j >= max_obs && 1.0 - cum < 1e-6) break;
        if (j > max_obs + 10000) break;  // guard for extreme mu
        pj *= mu / static_cast<double>(j + 1);
    }

    PoissonFit fit;
    double l1 = 0.0;
    for (std::size_t j = 0; j < pmf.size(); ++j) {
        auto it = record.histogram.find(static_cast<std::int64_t>(j));
        double emp = it == record.histogram.end() ? 0.0 : static_cast<double>(it->second) / total;
        l1 += std::abs(emp - pmf[j]);
    }
    fit.tv_distance = 0.5 * (l1 + std::max(0.0, 1.0 - cum));

    // Chi-square with bins merged left to right until each expects at least
    // 5 counts; everything past the last bin is pooled into it.
    std::vector<double> exp_bin;
    std::vector<double> obs_bin;
    double e_acc = 0.0, o_acc = 0.0;
    for (std::size_t j = 0; j < pmf.size(); ++j) {
        auto it = record.histogram.find(static_cast<std::int64_t>(j));
        e_acc += pmf[j] * total;
        o_acc += it == record.histogram.end() ? 0.0 : static_cast<double>(it->second);
        if (e_acc >= 5.0) {
            exp_bin.push_back(e_acc);
            obs_bin.push_back(o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    e_acc += std::max(0.0, 1.0 - cum) * total;
    for (const auto& [value, count] : record.histogram)
        if (value >= static_cast<std::int64_t>(pmf.size())) o_acc += static_cast<double>(count);
    if (exp_bin.empty() || e_acc >= 5.0) {
        exp_bin.push_back(e_acc);
        obs_bin.push_back(o_acc);
    } else {
        exp_bin.back() += e_acc;
        obs_bin.back() += o_acc;
    }
    for (std::size_t b = 0; b < exp_bin.size(); ++b) {
        if (exp_bin[b] <= 0.0) continue;
        double d = obs_bin[b] - exp_bin[b];
        fit.chi2 += d * d / exp_bin[b];
    }
    fit.dof = static_cast<int>(exp_bin.size()) - 1;
    return fit;
}

SweepResult sweep(const std::vector<double>& grid, bool grid_is_c, const TrialConfig& base) {
    require(!grid.empty(), "sweep: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        require(grid[i] > grid[i - 1], "sweep: grid must be strictly increasing");

    SweepResult out;
    out.grid = grid;
    out.grid_is_c = grid_is_c;
    out.records.reserve(grid.size());
    out.success_fraction.reserve(grid.size());

    for (std::size_t i = 0; i < grid.size(); ++i) {
        TrialConfig cfg = base;
        if (grid_is_c) {
            cfg.c = grid[i];
            cfg.has_c = true;
            cfg.has_p = false;
        } else {
            cfg.p = grid[i];
            cfg.has_p = true;
            cfg.has_c = false;
        }
        // Fresh master seed per grid point so points are independent.
        cfg.seed = base.seed + static_cast<std::uint64_t>(i);
        ExperimentRecord rec = run_trials(cfg);
        std::int64_t hits = 0;
        for (std::int64_t v : rec.values)
            if (trial_success(cfg.statistic, v)) ++hits;
        out.success_fraction.push_back(static_cast<double>(hits) / cfg.trials);
        out.records.push_back(std::move(rec));
    }

    for (std::size_t i = 0; i < grid.size(); ++i) {
        double a = out.success_fraction[i] - 0.5;
        if (a == 0.0) {
            out.crossing = grid[i];
            out.has_crossing = true;
            break;
        }
        if (i + 1 == grid.size()) break;
        double b = out.success_fraction[i + 1] - 0.5;
        if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
            double t = a / (a - b);  // b != a since they straddle zero
            out.crossing = grid[i] + t * (grid[i + 1] - grid[i]);
            out.has_crossing = true;
            break;
        }
    }
    return out;
}

namespace {

using nlohmann::json;

json config_json(const TrialConfig& c, double resolved_p) {
    json j;
    j["statistic"] = statistic_name(c.statistic);
    j["n"] = c.n;
    j["k"] = c.k;
    if (c.has_p) j["p"] = c.p;
    if (c.has_c) j["c"] = c.c;
    j["resolved_p"] = resolved_p;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["cap"] = c.cap;
    j["audit"] = c.audit;
    j["method"] = c.method == RankMethod::Modular ? "modular" : "exact-rational";
    return j;
}

json summary_json(const ExperimentRecord& r) {
    json j;
    j["config"] = config_json(r.config, r.resolved_p);
    j["mean"] = r.mean;
    j["variance"] = r.variance;
    j["ci_half_width"] = r.ci_half_width;
    json hist = json::object();
    for (const auto& [value, count] : r.histogram) hist[std::to_string(value)] = count;
    j["histogram"] = hist;
    j["audit_mismatches"] = r.audit_mismatches;
    j["wall_seconds"] = r.wall_seconds;
    return j;
}

}  // namespace

void write_record_jsonl(const ExperimentRecord& record, std::ostream& os) {
    for (std::size_t s = 0; s < record.values.size(); ++s) {
        json j;
        j["stream"] = s;
        j["value"] = record.values[s];
        os << j.dump() << '\n';
    }
}

void write_record_summary(const ExperimentRecord& record, std::ostream& os) {
    os << summary_json(record).dump(2) << '\n';
}

void write_sweep_summary(const SweepResult& sw, std::ostream& os) {
    json j;
    j["grid_parameter"] = sw.grid_is_c ? "c" : "p";
    json pts = json::array();
    for (std::size_t i = 0; i < sw.grid.size(); ++i) {
        json p = summary_json(sw.records[i]);
        p["grid"] = sw.grid[i];
        p["success_fraction"] = sw.success_fraction[i];
        pts.push_back(std::move(p));
    }
    j["points"] = pts;
    if (sw.has_crossing)
        j["crossing"] = sw.crossing;
    else
        j["crossing"] = nullptr;
    os << j.dump(2) << '\n';
}

void write_sweep_csv(const SweepResult& sw, std::ostream& os) {
    std::ostringstream line;
    line.imbue(std::locale::classic());
    line.precision(12);
    line << (sw.grid_is_c ? "c" : "p") << ",success_fraction,ci_half_width\n";
    for (std::size_t i = 0; i < sw.grid.size(); ++i) {
        double f = sw.success_fraction[i];
        double t = static_cast<double>(sw.records[i].config.trials);
        double ci = 1.96 * std::sqrt(f * (1.0 - f) / t);
        line << sw.grid[i] << ',' << f << ',' << ci << '\n';
    }
    os << line.str();
}

}  // namespace flaglab
