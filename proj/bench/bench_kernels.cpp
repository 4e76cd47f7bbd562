// Times the OpenMP kernels against their serial reference implementations.
// Results must agree exactly; the table reports both timings and the ratio.

#include <chrono>
#include <cstdio>
#include <string>

#include "flaglab/complex.hpp"
#include "flaglab/experiments.hpp"
#include "flaglab/graph.hpp"
#include "flaglab/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace flaglab;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = Clock::now();
        f();
        double s = std::chrono::duration<double>(Clock::now() - t0).count();
        if (s < best) best = s;
    }
    return best;
}

void row(const std::string& name, double serial, double parallel, bool agree) {
    std::printf("%-28s %10.4fs %10.4fs %8.2fx   %s\n", name.c_str(), serial, parallel,
                serial / parallel, agree ? "results agree" : "RESULTS DIFFER");
}

}  // namespace

int main() {
    int threads = 1;
#ifdef _OPENMP
#pragma omp parallel
#pragma omp single
    threads = omp_get_num_threads();
#endif
    std::printf("kernel benchmark, %d thread(s)\n", threads);
    std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "parallel", "ratio");

    {
        Graph g = Graph::sample_gnp(400, 0.25, Seed{7, 0});
        FlagSkeleton ref = FlagSkeleton::build_serial(g, 3);
        FlagSkeleton par = FlagSkeleton::build(g, 3);
        double ts = time_best_of(3, [&] { FlagSkeleton::build_serial(g, 3); });
        double tp = time_best_of(3, [&] { FlagSkeleton::build(g, 3); });
        row("skeleton build n=400", ts, tp, ref.f_vector() == par.f_vector());
    }
    {
        Graph g = Graph::sample_gnp(300, 0.45, Seed{8, 0});
        std::int64_t ref = count_maximal_cliques_serial(g, 4);
        std::int64_t par = count_maximal_cliques(g, 4);
        double ts = time_best_of(3, [&] { count_maximal_cliques_serial(g, 4); });
        double tp = time_best_of(3, [&] { count_maximal_cliques(g, 4); });
        row("maximal 4-cliques n=300", ts, tp, ref == par);
    }
    {
        TrialConfig cfg;
        cfg.statistic = Statistic::BettiK;
        cfg.n = 80;
        cfg.k = 1;
        cfg.p = 0.2;
        cfg.has_p = true;
        cfg.trials = 60;
        cfg.seed = 9;
        ExperimentRecord ref = run_trials_serial(cfg);
        ExperimentRecord par = run_trials(cfg);
        double ts = time_best_of(2, [&] { run_trials_serial(cfg); });
        double tp = time_best_of(2, [&] { run_trials(cfg); });
        row("betti trials n=80 x60", ts, tp, ref.values == par.values);
    }
    return 0;
}
