// Acceptance suite: end-to-end statistical and exactness checks at fixed
// seeds, one printed line per criterion. Hard criteria gate the exit code;
// the final criterion is a monitoring measurement with a soft floor and is
// reported but never gates.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "flaglab/certify.hpp"
#include "flaglab/complex.hpp"
#include "flaglab/experiments.hpp"
#include "flaglab/graph.hpp"
#include "flaglab/homology.hpp"
#include "flaglab/rng.hpp"
#include "flaglab/spectral.hpp"

using namespace flaglab;

namespace {

int hard_failures = 0;
int soft_failures = 0;

void report(int id, bool pass, const std::string& text, bool hard = true) {
    const char* tag = pass ? "PASS" : (hard ? "FAIL" : "SOFT");
    std::printf("[%2d] %s %s\n", id, tag, text.c_str());
    std::fflush(stdout);
    if (!pass) (hard ? hard_failures : soft_failures) += 1;
}

std::string fmt(const char* f, ...) {
    va_list args;
    va_start(args, f);
    char buf[512];
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

// All 2^15 graphs on 6 vertices: modular and exact Betti vectors agree,
// the Euler characteristic identity holds exactly, and consecutive
// boundary maps compose to zero.
void criterion_1() {
    long mismatches = 0, euler_bad = 0, dd_bad = 0;
    for (unsigned mask = 0; mask < 32768u; ++mask) {
        Graph g(6);
        int bit = 0;
        for (int u = 0; u < 6; ++u)
            for (int v = u + 1; v < 6; ++v, ++bit)
                if ((mask >> bit) & 1u) g.add_edge(u, v);
        FlagSkeleton sk = FlagSkeleton::build(g, 5);
        BettiVector bm = betti(sk, RankMethod::Modular);
        BettiVector be = betti(sk, RankMethod::ExactRational);
        if (bm.betti != be.betti) ++mismatches;
        std::int64_t euler_f = 0, euler_b = 0;
        for (std::size_t d = 0; d < bm.f.size(); ++d) {
            std::int64_t s = (d % 2 == 0) ? 1 : -1;
            euler_f += s * bm.f[d];
            euler_b += s * bm.betti[d];
        }
        if (euler_f != euler_b) ++euler_bad;
        for (int d = 1; d < 5; ++d)
            if (!boundary_product_is_zero(sk, d)) ++dd_bad;
    }
    report(1, mismatches == 0 && euler_bad == 0 && dd_bad == 0,
           fmt("exhaustive 6-vertex sweep (32768 graphs): modular/exact Betti mismatches %ld, "
               "Euler violations %ld, nonzero boundary squares %ld",
               mismatches, euler_bad, dd_bad));
}

// Certifier soundness with zero tolerance: across 1000 sampled flag
// complexes (600 at k=1 over n in [10,80], p in [0.1,0.9]; 400 at k=2 with
// p capped so the 3-face count stays tractable), every certified instance
// must have beta_k = 0 under the exact rational audit.
void criterion_2() {
    long total = 0, certified = 0, violations = 0;
    for (int i = 0; i < 600; ++i) {
        Rng rng(Seed{777, std::uint64_t(i)});
        int n = 10 + int(std::floor(rng.uniform() * 71.0));
        double p = 0.1 + 0.8 * rng.uniform();
        Graph g = Graph::sample_gnp(n, p, Seed{778, std::uint64_t(i)});
        PipelineResult res = vanishing_pipeline(g, 1, true, RankMethod::ExactRational);
        ++total;
        if (res.certificate.certified) {
            ++certified;
            if (res.betti_value != 0) ++violations;
        }
    }
    for (int i = 0; i < 400; ++i) {
        Rng rng(Seed{779, std::uint64_t(i)});
        int n = 10 + int(std::floor(rng.uniform() * 71.0));
        double quads = 1.0;
        for (int j = 0; j < 4; ++j) quads *= (n - j) / (j + 1.0);
        double p_max = std::min(0.9, std::pow(30000.0 / quads, 1.0 / 6.0));
        double p = 0.1 + (p_max - 0.1) * rng.uniform();
        Graph g = Graph::sample_gnp(n, p, Seed{780, std::uint64_t(i)});
        PipelineResult res = vanishing_pipeline(g, 2, true, RankMethod::ExactRational);
        ++total;
        if (res.certificate.certified) {
            ++certified;
            if (res.betti_value != 0) ++violations;
        }
    }
    report(2, violations == 0 && certified > 0,
           fmt("certifier soundness: %ld/%ld instances certified, %ld audit violations "
               "(tolerance 0)",
               certified, total, violations));
}

// Criteria 3 and 4 share one run: maximal-edge counts at n=200 in the
// critical window. The sample mean must sit within 3 standard errors of
// the exact finite-n expectation, and the empirical distribution within
// total-variation 0.08 of the limiting Poisson law.
void criteria_3_4() {
    TrialConfig cfg;
    cfg.statistic = Statistic::MaximalCliques;
    cfg.n = 200;
    cfg.k = 1;
    cfg.c = 0.0;
    cfg.has_c = true;
    cfg.trials = 3000;
    cfg.seed = 1;
    ExperimentRecord rec = run_trials(cfg);

    double want = expected_maximal_cliques(200.0, 1, rec.resolved_p);
    double se = std::sqrt(rec.variance / cfg.trials);
    double dev = std::abs(rec.mean - want);
    report(3, dev <= 3.0 * se,
           fmt("maximal-edge expectation at n=200, p=%.5f: mean %.4f vs exact %.4f "
               "(|dev| %.4f <= 3 SE = %.4f)",
               rec.resolved_p, rec.mean, want, dev, 3.0 * se));

    double mu = poisson_mean(1, 0.0);
    PoissonFit fit = poisson_fit(rec, mu);
    report(4, fit.tv_distance <= 0.08,
           fmt("Poisson limit fit (same run): TV distance %.4f to Pois(%.5f), tolerance 0.08",
               fit.tv_distance, mu));
}

// Connectivity threshold at n=2000: success fraction at least 0.9 just
// above the ln n / n scale and at most 0.1 just below it.
void criterion_5() {
    double lnn = std::log(2000.0);
    TrialConfig cfg;
    cfg.statistic = Statistic::Connected;
    cfg.n = 2000;
    cfg.trials = 300;
    cfg.seed = 2;
    cfg.has_p = true;

    cfg.p = 1.3 * lnn / 2000.0;
    double hi = run_trials(cfg).mean;
    cfg.p = 0.7 * lnn / 2000.0;
    double lo = run_trials(cfg).mean;
    report(5, hi >= 0.9 && lo <= 0.1,
           fmt("connectivity threshold at n=2000: fraction %.4f >= 0.9 at 1.3 ln n / n, "
               "%.4f <= 0.1 at 0.7 ln n / n",
               hi, lo));
}

// Degree-1 vanishing window at n=150: the fraction of trials with
// beta_1 = 0 is at least 0.8 at 1.15x the upper scale and at most 0.3 at
// 0.85x of it.
void criterion_6() {
    double up = upper_threshold(150.0, 1, 0.0);
    TrialConfig cfg;
    cfg.statistic = Statistic::BettiK;
    cfg.n = 150;
    cfg.k = 1;
    cfg.trials = 200;
    cfg.seed = 42;
    cfg.has_p = true;

    auto zero_fraction = [&cfg](double p) {
        cfg.p = p;
        ExperimentRecord r = run_trials(cfg);
        long zeros = 0;
        for (std::int64_t v : r.values) zeros += v == 0;
        return double(zeros) / cfg.trials;
    };
    double above = zero_fraction(1.15 * up);
    double below = zero_fraction(0.85 * up);
    report(6, above >= 0.8 && below <= 0.3,
           fmt("beta_1 vanishing window at n=150 (upper scale %.5f): zero fraction %.3f >= 0.8 "
               "above it, %.3f <= 0.3 below it",
               up, above, below));
}

// Sparse acyclicity at n=3000, c=0.5: the empirical forest probability
// matches the closed form within 0.03, and the forest test agrees with the
// degree-1 rank computation on 100 spot-checked trials.
void criterion_7() {
    const int trials = 2000;
    long forests = 0, disagreements = 0;
    for (int i = 0; i < trials; ++i) {
        Graph g = Graph::sample_gnp(3000, 0.5 / 3000.0, Seed{99, std::uint64_t(i)});
        std::int64_t rank = g.cycle_rank();
        forests += rank == 0;
        if (i < 100) {
            FlagSkeleton sk = FlagSkeleton::build(g, 1);
            if (betti(sk).betti[1] != rank) ++disagreements;
        }
    }
    double frac = double(forests) / trials;
    double want = pittel_probability(0.5);
    report(7, std::abs(frac - want) <= 0.03 && disagreements == 0,
           fmt("acyclicity probability at n=3000, c=0.5: %.4f vs closed form %.5f "
               "(tolerance 0.03), rank spot-check disagreements %ld/100",
               frac, want, disagreements));
}

// Eigenvalue perturbation bound: for 500 random connected graphs with
// minimum degree 2 and one random edge deleted, the summed squared
// eigenvalue shifts never exceed the squared Frobenius norm of the
// Laplacian difference (plus 1e-8 slack).
void criterion_8() {
    long checked = 0, failures = 0;
    std::uint64_t attempt = 0;
    while (checked < 500) {
        Rng rng(Seed{1234, 2 * attempt + 1});
        int n = 10 + int(std::floor(rng.uniform() * 51.0));  // 10..60
        double p = 0.3 + 0.4 * rng.uniform();
        Graph g = Graph::sample_gnp(n, p, Seed{1234, 2 * attempt});
        ++attempt;
        if (!g.is_connected() || g.min_degree() < 2) continue;
        int u = 0, v = 0;
        do {
            u = int(rng.below(std::uint64_t(n)));
            v = int(rng.below(std::uint64_t(n)));
        } while (u == v || !g.has_edge(std::min(u, v), std::max(u, v)));
        PerturbationReport rep = perturbation_check(g, std::min(u, v), std::max(u, v));
        ++checked;
        if (!rep.ok) ++failures;
    }
    report(8, failures == 0,
           fmt("eigenvalue perturbation bound: %ld violations over 500 random edge deletions",
               failures));
}

// Spectral golden values: complete-graph gaps, the 4-cycle spectrum, and
// kernel multiplicity equal to the component count on 1000 random graphs
// with no isolated vertices.
void criterion_9() {
    bool ok = true;
    std::string detail;
    for (int n = 3; n <= 12; ++n) {
        double gap = lambda2(Graph::complete(n));
        if (std::abs(gap - double(n) / (n - 1)) > 1e-9) {
            ok = false;
            detail += fmt(" K_%d gap %.12f;", n, gap);
        }
    }
    Spectrum c4 = spectrum(NormalizedLaplacian(Graph::cycle(4)));
    const double want[4] = {0.0, 1.0, 1.0, 2.0};
    for (int i = 0; i < 4; ++i)
        if (std::abs(c4.eigenvalues[i] - want[i]) > 1e-9) {
            ok = false;
            detail += fmt(" C4 eig%d %.12f;", i, c4.eigenvalues[i]);
        }

    long kernel_bad = 0;
    for (int i = 0; i < 1000; ++i) {
        Rng rng(Seed{555, std::uint64_t(i)});
        int n = 5 + int(std::floor(rng.uniform() * 56.0));  // 5..60
        double p = 0.02 + 0.28 * rng.uniform();
        Graph g = Graph::sample_gnp(n, p, Seed{556, std::uint64_t(i)});
        for (int v = 0; v < n; ++v)
            if (g.degree(v) == 0) {
                int u = v;
                while (u == v) u = int(rng.below(std::uint64_t(n)));
                g.add_edge(std::min(u, v), std::max(u, v));
            }
        Spectrum sp = spectrum(NormalizedLaplacian(g));
        if (sp.kernel_multiplicity() != g.component_count()) ++kernel_bad;
    }
    if (kernel_bad != 0) ok = false;
    report(9, ok,
           fmt("spectral golden values: complete-graph gaps and C4 spectrum within 1e-9, "
               "kernel multiplicity mismatches %ld/1000%s",
               kernel_bad, detail.c_str()));
}

// Monitoring criterion (soft floor, asymptotic): fraction of trials at
// n=120, p=0.35 whose reduced Betti support is exactly {1}. The measured
// fraction is always recorded here; the 0.70 floor reflects the limiting
// regime, which this finite scale has not reached, so the line never gates
// the suite.
void criterion_10() {
    TrialConfig cfg;
    cfg.statistic = Statistic::BettiProfile;
    cfg.n = 120;
    cfg.k = 1;
    cfg.p = 0.35;
    cfg.has_p = true;
    cfg.trials = 200;
    cfg.seed = 4;
    ExperimentRecord rec = run_trials(cfg);
    report(10, rec.mean >= 0.70,
           fmt("reduced Betti support {1} fraction at n=120, p=0.35: measured %.3f "
               "(soft floor 0.70, asymptotic monitoring; recorded regardless)",
               rec.mean),
           /*hard=*/false);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criteria_3_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();

    std::printf("acceptance: %d hard failure(s), %d soft monitoring miss(es)\n", hard_failures,
                soft_failures);
    return hard_failures == 0 ? 0 : 1;
}
