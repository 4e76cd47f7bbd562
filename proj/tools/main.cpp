// Command-line front end: graph/complex generation, structural analysis,
// vanishing certification, threshold sweeps, and Poisson-window experiments.
// Exit codes: 0 success or certified, 2 not-certified, 1 any error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flaglab/certify.hpp"
#include "flaglab/complex.hpp"
#include "flaglab/experiments.hpp"
#include "flaglab/graph.hpp"
#include "flaglab/homology.hpp"
#include "flaglab/spectral.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using nlohmann::json;
using namespace flaglab;

// FLAGLAB_THREADS caps the OpenMP team size for every subcommand.
void apply_thread_env() {
#ifdef _OPENMP
    if (const char* env = std::getenv("FLAGLAB_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) omp_set_num_threads(t);
    }
#endif
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return read_edge_list(in);
}

struct GenOpts {
    int n = 0;
    int k = 1;
    double p = 0.0;
    double c = 0.0;
    bool has_p = false;
    bool has_c = false;
    std::uint64_t seed = 0;
    int cap = -1;
    std::string format = "edge-list";
    std::string out;
};

int run_gen(const GenOpts& o) {
    if (o.has_p == o.has_c)
        throw std::invalid_argument("gen: exactly one of --p and --c must be given");
    double p = o.has_p ? o.p : critical_p(double(o.n), o.k, o.c);
    Graph g = Graph::sample_gnp(o.n, p, Seed{o.seed, 0});

    json cfg;
    cfg["command"] = "gen";
    cfg["n"] = o.n;
    if (o.has_p) cfg["p"] = o.p;
    if (o.has_c) {
        cfg["c"] = o.c;
        cfg["k"] = o.k;
    }
    cfg["resolved_p"] = p;
    cfg["seed"] = o.seed;
    cfg["format"] = o.format;

    std::ostringstream body;
    if (o.format == "edge-list") {
        body << "# config " << cfg.dump() << '\n';
        write_edge_list(g, body);
    } else {
        if (o.cap < 0)
            throw std::invalid_argument("gen: --cap is required with --format json");
        cfg["cap"] = o.cap;
        FlagSkeleton sk = FlagSkeleton::build(g, o.cap);
        std::ostringstream raw;
        write_complex_json(sk, raw);
        json j = json::parse(raw.str());
        j["config"] = cfg;
        body << j.dump(2) << '\n';
    }
    emit(o.out, body.str());
    return 0;
}

struct AnalyzeOpts {
    std::string input;
    int cap = -1;
    int k = 1;
    double eps = 0.0;
    bool betti_flag = false;
    bool lambda2_flag = false;
    bool thresholds_flag = false;
    int maximal_size = 0;
    bool has_maximal = false;
    std::vector<int> link;
    bool exact = false;
    std::vector<std::uint32_t> primes;
    std::string out;
};

int run_analyze(const AnalyzeOpts& o) {
    Graph g = load_graph(o.input);
    int n = g.vertex_count();
    int cap = o.cap >= 0 ? o.cap : std::max(n - 1, 0);
    RankMethod method = o.exact ? RankMethod::ExactRational : RankMethod::Modular;
    std::vector<std::uint32_t> primes =
        o.primes.empty() ? std::vector<std::uint32_t>{kRankPrimes[0], kRankPrimes[1]} : o.primes;

    json cfg;
    cfg["command"] = "analyze";
    cfg["input"] = o.input;
    cfg["cap"] = cap;
    cfg["method"] = o.exact ? "exact-rational" : "modular";
    cfg["primes"] = primes;
    if (o.thresholds_flag) {
        cfg["k"] = o.k;
        cfg["eps"] = o.eps;
    }

    json report;
    report["config"] = cfg;
    report["n"] = n;
    report["m"] = g.edge_count();

    FlagSkeleton sk = FlagSkeleton::build(g, cap);
    std::vector<std::int64_t> f = sk.f_vector();
    // Trim dimensions past the last nonempty one so reports stay readable.
    std::size_t dims = f.size();
    while (dims > 1 && f[dims - 1] == 0) --dims;
    report["f_vector"] = std::vector<std::int64_t>(f.begin(), f.begin() + dims);

    if (o.betti_flag) {
        BettiVector bv = betti(sk, method, primes);
        report["betti"] = std::vector<std::int64_t>(bv.betti.begin(), bv.betti.begin() + dims);
        report["betti_method"] = bv.method;
    }
    if (o.has_maximal) {
        json mc;
        mc["size"] = o.maximal_size;
        mc["count"] = count_maximal_cliques(g, o.maximal_size);
        report["maximal_cliques"] = mc;
    }
    if (o.lambda2_flag) report["lambda2"] = lambda2(g);
    if (!o.link.empty()) {
        LinkGraph lg = link_graph(sk, o.link);
        json jl;
        jl["face"] = o.link;
        jl["n"] = lg.graph.vertex_count();
        jl["m"] = lg.graph.edge_count();
        jl["vertices"] = lg.vertices;
        try {
            jl["lambda2"] = lambda2(lg.graph);
        } catch (const std::exception& e) {
            jl["lambda2"] = nullptr;
            jl["lambda2_error"] = e.what();
        }
        report["link"] = jl;
    }
    if (o.thresholds_flag) {
        json t;
        t["upper"] = upper_threshold(double(n), o.k, o.eps);
        t["lower"] = lower_threshold(double(n), o.k, o.eps);
        t["critical"] = critical_p(double(n), o.k, 0.0);
        report["thresholds"] = t;
    }

    emit(o.out, report.dump(2) + "\n");
    return 0;
}

struct CertifyOpts {
    std::string input;
    int k = 1;
    bool property_t = false;
    bool audit = false;
    std::string out;
};

int run_certify(const CertifyOpts& o) {
    if (o.property_t && o.k != 1)
        throw std::invalid_argument("certify: --property-t requires --k 1");
    Graph g = load_graph(o.input);
    PipelineResult res = vanishing_pipeline(g, o.k, o.audit);

    std::ostringstream raw;
    if (o.property_t)
        write_certificate_json(PropertyTCertificate{res.certificate}, raw);
    else
        write_certificate_json(res.certificate, raw);
    json j = json::parse(raw.str());
    if (res.audited) j["audit_betti"] = res.betti_value;

    json cfg;
    cfg["command"] = "certify";
    cfg["input"] = o.input;
    cfg["k"] = o.k;
    cfg["property_t"] = o.property_t;
    cfg["audit"] = o.audit;
    j["config"] = cfg;

    emit(o.out, j.dump(2) + "\n");
    return res.certificate.certified ? 0 : 2;
}

struct SweepOpts {
    std::string statistic = "connected";
    int n = 0;
    int k = 1;
    std::string grid_arg;
    std::string param = "p";
    int trials = 100;
    std::uint64_t seed = 0;
    int cap = -1;
    bool audit = false;
    bool exact = false;
    std::string format = "json";
    std::string out;
};

std::vector<double> parse_grid(const std::string& arg) {
    std::vector<double> grid;
    std::stringstream ss(arg);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        double v = 0.0;
        std::size_t used = 0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != token.size())
            throw std::invalid_argument("sweep: bad grid value: " + token);
        grid.push_back(v);
    }
    if (grid.empty()) throw std::invalid_argument("sweep: --grid must be nonempty");
    return grid;
}

int run_sweep(const SweepOpts& o) {
    std::vector<double> grid = parse_grid(o.grid_arg);
    TrialConfig base;
    base.statistic = statistic_from_name(o.statistic);
    base.n = o.n;
    base.k = o.k;
    base.trials = o.trials;
    base.seed = o.seed;
    base.cap = o.cap;
    base.audit = o.audit;
    base.method = o.exact ? RankMethod::ExactRational : RankMethod::Modular;
    SweepResult sw = sweep(grid, o.param == "c", base);

    std::ostringstream summary;
    write_sweep_summary(sw, summary);
    std::ostringstream csv;
    write_sweep_csv(sw, csv);

    if (o.out.empty()) {
        std::cout << (o.format == "csv" ? csv.str() : summary.str());
        return 0;
    }
    std::ostringstream jsonl;
    for (std::size_t i = 0; i < sw.records.size(); ++i) {
        for (std::size_t s = 0; s < sw.records[i].values.size(); ++s) {
            json line;
            line["grid"] = sw.grid[i];
            line["stream"] = s;
            line["value"] = sw.records[i].values[s];
            jsonl << line.dump() << '\n';
        }
    }
    emit(o.out + ".summary.json", summary.str());
    emit(o.out + ".csv", csv.str());
    emit(o.out + ".jsonl", jsonl.str());
    return 0;
}

struct PoissonOpts {
    int n = 0;
    int k = 1;
    double c = 0.0;
    int trials = 200;
    std::uint64_t seed = 0;
    std::string out;
};

int run_poisson(const PoissonOpts& o) {
    TrialConfig cfg;
    cfg.statistic = Statistic::MaximalCliques;
    cfg.n = o.n;
    cfg.k = o.k;
    cfg.c = o.c;
    cfg.has_c = true;
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    ExperimentRecord rec = run_trials(cfg);

    double mu = poisson_mean(o.k, o.c);
    PoissonFit fit = poisson_fit(rec, mu);

    std::ostringstream raw;
    write_record_summary(rec, raw);
    json j = json::parse(raw.str());
    j["mu"] = mu;
    j["tv_distance"] = fit.tv_distance;
    j["chi2"] = fit.chi2;
    j["dof"] = fit.dof;
    j["expected_mean"] = expected_maximal_cliques(double(o.n), o.k, rec.resolved_p);

    if (o.out.empty()) {
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    std::ostringstream jsonl;
    write_record_jsonl(rec, jsonl);
    emit(o.out + ".summary.json", j.dump(2) + "\n");
    emit(o.out + ".jsonl", jsonl.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_env();

    CLI::App app{"random flag complex laboratory"};
    app.require_subcommand(1);

    GenOpts gen;
    CLI::App* cmd_gen = app.add_subcommand("gen", "sample a random graph or flag complex");
    cmd_gen->add_option("--n", gen.n, "number of vertices")->required();
    CLI::Option* gen_p = cmd_gen->add_option("--p", gen.p, "edge probability");
    CLI::Option* gen_c = cmd_gen->add_option("--c", gen.c, "critical-window offset (resolves p)");
    cmd_gen->add_option("--k", gen.k, "degree for the critical window (with --c)");
    cmd_gen->add_option("--seed", gen.seed, "master seed");
    cmd_gen->add_option("--cap", gen.cap, "dimension cap (json format)");
    cmd_gen->add_option("--format", gen.format, "edge-list or json")
        ->check(CLI::IsMember({"edge-list", "json"}));
    cmd_gen->add_option("--out", gen.out, "output path (default stdout)");

    AnalyzeOpts an;
    CLI::App* cmd_an = app.add_subcommand("analyze", "f-vector, Betti numbers, gaps of a graph");
    cmd_an->add_option("input", an.input, "edge-list file")->required();
    cmd_an->add_option("--cap", an.cap, "dimension cap (default: full complex)");
    cmd_an->add_flag("--betti", an.betti_flag, "compute the Betti vector");
    CLI::Option* an_mc =
        cmd_an->add_option("--maximal-cliques", an.maximal_size, "count maximal cliques of this size");
    cmd_an->add_flag("--lambda2", an.lambda2_flag, "spectral gap of the graph");
    cmd_an->add_option("--link", an.link, "face whose link to analyze, e.g. --link 0,3")
        ->delimiter(',');
    cmd_an->add_flag("--thresholds", an.thresholds_flag, "closed-form threshold scales");
    cmd_an->add_option("--k", an.k, "degree for --thresholds");
    cmd_an->add_option("--eps", an.eps, "slack for --thresholds");
    cmd_an->add_flag("--exact", an.exact, "exact rational ranks instead of modular");
    cmd_an->add_option("--primes", an.primes, "modular rank primes")->delimiter(',');
    cmd_an->add_option("--out", an.out, "output path (default stdout)");

    CertifyOpts ce;
    CLI::App* cmd_ce = app.add_subcommand("certify", "spectral-gap cohomology vanishing certificate");
    cmd_ce->add_option("input", ce.input, "edge-list file")->required();
    cmd_ce->add_option("--k", ce.k, "certify vanishing of degree-k cohomology");
    cmd_ce->add_flag("--property-t", ce.property_t, "report as a property (T) certificate (k=1)");
    cmd_ce->add_flag("--audit", ce.audit, "cross-check with a Betti number computation");
    cmd_ce->add_option("--out", ce.out, "output path (default stdout)");

    SweepOpts sw;
    CLI::App* cmd_sw = app.add_subcommand("sweep", "success fraction of a statistic over a grid");
    cmd_sw->add_option("--statistic", sw.statistic,
                       "maximal-cliques | betti | profile | connected | certified | property-t");
    cmd_sw->add_option("--n", sw.n, "number of vertices")->required();
    cmd_sw->add_option("--k", sw.k, "degree");
    cmd_sw->add_option("--grid", sw.grid_arg, "grid values, e.g. --grid 0.1,0.2")->required();
    cmd_sw->add_option("--param", sw.param, "grid parameter: p or c")
        ->check(CLI::IsMember({"p", "c"}));
    cmd_sw->add_option("--trials", sw.trials, "trials per grid point");
    cmd_sw->add_option("--seed", sw.seed, "master seed");
    cmd_sw->add_option("--cap", sw.cap, "dimension cap override");
    cmd_sw->add_flag("--audit", sw.audit, "audit certified trials");
    cmd_sw->add_flag("--exact", sw.exact, "exact rational ranks instead of modular");
    cmd_sw->add_option("--format", sw.format, "stdout format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd_sw->add_option("--out", sw.out, "output prefix (.summary.json/.csv/.jsonl)");

    PoissonOpts po;
    CLI::App* cmd_po = app.add_subcommand("poisson", "maximal-clique counts in the critical window");
    cmd_po->add_option("--n", po.n, "number of vertices")->required();
    cmd_po->add_option("--k", po.k, "degree");
    cmd_po->add_option("--c", po.c, "critical-window offset");
    cmd_po->add_option("--trials", po.trials, "number of trials");
    cmd_po->add_option("--seed", po.seed, "master seed");
    cmd_po->add_option("--out", po.out, "output prefix (.summary.json/.jsonl)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // stable contract: every usage error is 1
    }

    try {
        if (*cmd_gen) {
            gen.has_p = gen_p->count() > 0;
            gen.has_c = gen_c->count() > 0;
            return run_gen(gen);
        }
        if (*cmd_an) {
            an.has_maximal = an_mc->count() > 0;
            return run_analyze(an);
        }
        if (*cmd_ce) return run_certify(ce);
        if (*cmd_sw) return run_sweep(sw);
        if (*cmd_po) return run_poisson(po);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
