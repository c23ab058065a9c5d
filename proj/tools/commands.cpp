#include "commands.hpp"

#include "l0fusion/csv.hpp"
#include "l0fusion/metrics.hpp"
#include "l0fusion/numerics.hpp"
#include "l0fusion/screening.hpp"
#include "l0fusion/simgen.hpp"
#include "l0fusion/solver.hpp"
#include "l0fusion/tuning.hpp"
#include "l0fusion/warmstart.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <vector>

namespace l0fuse_cli {

using namespace l0fusion;

int worker_count(int requested) {
    int n = requested > 0 ? requested
                          : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("L0FUSE_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    return n;
}

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// Runs tasks 0..count-1 on a pool; results are collected by the tasks
// themselves into pre-sized vectors, so output order is by task id.
void run_parallel(int count, int threads, const std::function<void(int)>& task) {
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(threads, count); ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                task(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

std::string quantile_field(std::vector<double> v, double f) {
    if (v.empty()) return "";
    std::sort(v.begin(), v.end());
    const double pos = f * static_cast<double>(v.size() - 1);
    const size_t lo = static_cast<size_t>(pos);
    const size_t hi = std::min(lo + 1, v.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return csv_field(v[lo] * (1.0 - w) + v[hi] * w);
}

struct SimulateOpts {
    std::string preset = "equal";
    int n = 120, p = 80, q = 0;
    double rho = 0.0, signal_r = 0.8, sigma = 1.0;
    int reps = 200;
    int K = 4, s = -1;
    double gap_tol = 0.0, time_limit = 5.0;
    bool screen = false;
    int pi = 0, expansion = 0;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out = "simulate.csv";
    bool print_config = false;
};

SimConfig build_sim_config(const SimulateOpts& o, int replicate) {
    SimConfig cfg;
    cfg.n = o.n;
    cfg.p = o.p;
    cfg.q = o.q;
    cfg.rho = o.rho;
    cfg.sigma = o.sigma;
    cfg.seed = o.seed + static_cast<std::uint64_t>(replicate) * 1000003ULL;
    const double r = o.signal_r;
    if (o.preset == "equal") {
        const int sz = o.p / 4;
        cfg.group_sizes = {sz, sz, sz, sz};
        cfg.group_values = {-2 * r, -r, r, 2 * r};
    } else if (o.preset == "unequal") {
        if (o.p < 80) throw CLI::ValidationError("--preset unequal requires p >= 80");
        cfg.group_sizes = {1, 20, 20, 39};
        cfg.group_values = {-4 * r, -r, r, 2 * r};
    } else if (o.preset == "ultra") {
        cfg.group_sizes = {15, 15, 15, 15};
        cfg.group_values = {-2 * r, -r, r, 2 * r};
    } else {
        throw CLI::ValidationError("unknown preset '" + o.preset + "'");
    }
    return cfg;
}

void run_simulate(const SimulateOpts& o) {
    CsvWriter out(o.out);
    const std::vector<std::string> cols = {
        "replicate", "seed",      "n",         "p",        "q",          "K",
        "s",         "rho",       "signal_r",  "sigma",    "screen_size", "tpp",
        "nmi",       "nmi_zero",  "objective", "mip_gap",  "termination", "oracle_match",
        "time_screen", "time_fit"};
    out.header(cols);

    struct Row {
        std::vector<std::string> fields;
        double nmi_zero = 0.0, objective = 0.0, gap = 0.0;
    };
    std::vector<Row> rows(static_cast<size_t>(o.reps));
    std::mutex err_mutex;
    std::string first_error;

    run_parallel(o.reps, worker_count(o.threads), [&](int rep) {
        try {
            SimConfig cfg = build_sim_config(o, rep);
            Dataset data = gen_dataset(cfg);
            const VectorXd beta_star = make_beta(cfg.p, cfg.group_sizes, cfg.group_values);
            std::vector<int> s0;
            for (int j = 0; j < cfg.p; ++j)
                if (beta_star[j] != 0.0) s0.push_back(j);

            int s_budget = o.s >= 0 ? o.s : static_cast<int>(s0.size());
            Dataset fit_data = data;
            std::vector<int> kept(static_cast<size_t>(cfg.p));
            std::iota(kept.begin(), kept.end(), 0);
            double t_screen = 0.0;
            std::string screen_size_field, tpp_field;

            if (o.screen) {
                const double t0 = now_seconds();
                ScreeningConfig scfg;
                scfg.pi = o.pi > 0 ? o.pi : std::min(100, static_cast<int>(s0.size()));
                scfg.l = o.expansion;
                const ScreeningResult sres = screen_with_covariates(data, scfg);
                t_screen = now_seconds() - t0;
                kept = sres.support;
                screen_size_field = std::to_string(kept.size());
                tpp_field = csv_field(tpp(kept, s0));
                Dataset reduced;
                reduced.y = data.y;
                reduced.Z = data.Z;
                reduced.X.resize(data.n(), static_cast<Eigen::Index>(kept.size()));
                for (size_t c = 0; c < kept.size(); ++c)
                    reduced.X.col(static_cast<Eigen::Index>(c)) = data.X.col(kept[c]);
                fit_data = std::move(reduced);
                s_budget = std::min(s_budget, static_cast<int>(kept.size()));
            }

            SolveOptions sopts;
            sopts.gap_tol = o.gap_tol;
            if (o.time_limit > 0) sopts.time_limit = o.time_limit;
            const double t1 = now_seconds();
            auto [fit, report] = solve_exact(fit_data, Budget{o.K, s_budget}, sopts);
            const double t_fit = now_seconds() - t1;

            // Re-embed the reduced fit into the ambient coordinate system.
            VectorXd beta_hat = VectorXd::Zero(cfg.p);
            const VectorXd beta_fit = to_beta(fit);
            for (size_t c = 0; c < kept.size(); ++c) beta_hat[kept[c]] = beta_fit[static_cast<Eigen::Index>(c)];

            PartitionPair pp;
            pp.p = cfg.p;
            pp.g1 = grouping_of(beta_hat).groups;
            {
                std::vector<int> zeros;
                for (int j = 0; j < cfg.p; ++j)
                    if (beta_hat[j] == 0.0) zeros.push_back(j);
                if (!zeros.empty()) pp.g1.push_back(std::move(zeros));
            }
            pp.g2 = grouping_of(beta_star).groups;
            {
                std::vector<int> zeros;
                for (int j = 0; j < cfg.p; ++j)
                    if (beta_star[j] == 0.0) zeros.push_back(j);
                if (!zeros.empty()) pp.g2.push_back(std::move(zeros));
            }
            const double nmi_zero = nmi(pp);
            const bool oracle_match = same_grouping(beta_hat, beta_star);

            Row row;
            row.nmi_zero = nmi_zero;
            row.objective = report.incumbent_objective;
            row.gap = report.mip_gap;
            row.fields = {std::to_string(rep),
                          std::to_string(cfg.seed),
                          std::to_string(cfg.n),
                          std::to_string(cfg.p),
                          std::to_string(cfg.q),
                          std::to_string(o.K),
                          std::to_string(s_budget),
                          csv_field(cfg.rho),
                          csv_field(o.signal_r),
                          csv_field(cfg.sigma),
                          screen_size_field,
                          tpp_field,
                          csv_field(nmi_zero),
                          csv_field(nmi_zero),
                          csv_field(report.incumbent_objective),
                          csv_field(report.mip_gap),
                          to_string(report.termination),
                          oracle_match ? "1" : "0",
                          csv_field(t_screen),
                          csv_field(t_fit)};
            rows[static_cast<size_t>(rep)] = std::move(row);
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (first_error.empty()) first_error = e.what();
        }
    });
    if (!first_error.empty()) throw std::runtime_error(first_error);

    std::vector<double> nmis, objs, gaps;
    for (auto& row : rows) {
        out.row(row.fields);
        nmis.push_back(row.nmi_zero);
        objs.push_back(row.objective);
        gaps.push_back(row.gap);
    }
    auto summary = [&](const char* name, double f) {
        std::vector<std::string> fields(cols.size(), "");
        fields[0] = name;
        fields[13] = quantile_field(nmis, f);
        fields[14] = quantile_field(objs, f);
        fields[15] = quantile_field(gaps, f);
        out.row(fields);
    };
    summary("q1", 0.25);
    summary("median", 0.5);
    summary("q3", 0.75);
    std::cout << "wrote " << o.out << " (" << o.reps << " replicates)\n";
}

struct FitOpts {
    std::string data_path;
    int K = 1, s = -1;
    double gap_tol = 0.0, time_limit = 0.0;
    bool no_warm_start = false;
    std::vector<std::vector<int>> must_link, cannot_link;
    std::string out;
};

void print_fit(std::ostream& os, const Dataset& data, const FusedParams& fit,
               const SolverReport& report, const std::vector<int>* names = nullptr) {
    os << "objective " << csv_field(report.incumbent_objective) << "\n";
    os << "lower_bound " << csv_field(report.lower_bound) << "\n";
    os << "mip_gap " << csv_field(report.mip_gap) << "\n";
    os << "nodes " << report.nodes_explored << "\n";
    os << "wall_time " << csv_field(report.wall_time) << "\n";
    os << "termination " << to_string(report.termination) << "\n";
    for (int k = 0; k < fit.num_groups(); ++k) {
        os << "group " << (k + 1) << " value " << csv_field(fit.gamma[k]) << " members";
        int size = 0;
        for (int j = 0; j < fit.p(); ++j)
            if (fit.labels[j] == k + 1) {
                os << " x" << (names ? (*names)[static_cast<size_t>(j)] + 1 : j + 1);
                ++size;
            }
        os << " group_effect " << csv_field(fit.gamma[k] * size) << "\n";
    }
    for (int k = 0; k < static_cast<int>(fit.alpha.size()); ++k)
        os << "alpha z" << (k + 1) << " " << csv_field(fit.alpha[k]) << "\n";
    (void)data;
}

void run_fit(const FitOpts& o) {
    const CsvDataset csv = read_dataset_csv(o.data_path);
    const Dataset& data = csv.data;
    SolveOptions opts;
    opts.gap_tol = o.gap_tol;
    opts.use_warm_start = !o.no_warm_start;
    if (o.time_limit > 0) opts.time_limit = o.time_limit;
    for (const auto& pr : o.must_link) opts.must_link.emplace_back(pr[0] - 1, pr[1] - 1);
    for (const auto& pr : o.cannot_link) opts.cannot_link.emplace_back(pr[0] - 1, pr[1] - 1);
    const int s = o.s >= 0 ? o.s : data.p();
    auto [fit, report] = solve_exact(data, Budget{o.K, s}, opts);
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        print_fit(f, data, fit, report);
    }
    print_fit(std::cout, data, fit, report);
    if (csv.beta_true) {
        std::cout << "nmi_zero " << csv_field(nmi_with_zero_group(to_beta(fit), *csv.beta_true))
                  << "\n";
    }
}

struct ScreenOpts {
    std::string data_path;
    int pi = 1, expansion = 0;
    std::string out;
};

void run_screen(const ScreenOpts& o) {
    const CsvDataset csv = read_dataset_csv(o.data_path);
    ScreeningConfig cfg;
    cfg.pi = o.pi;
    cfg.l = o.expansion;
    const ScreeningResult res = screen_with_covariates(csv.data, cfg);
    std::ostream* os = &std::cout;
    std::ofstream f;
    if (!o.out.empty()) {
        f.open(o.out);
        os = &f;
    }
    *os << "support";
    for (int j : res.support) *os << " x" << (j + 1);
    *os << "\niterations " << res.iterations << "\nconverged " << (res.converged ? 1 : 0) << "\n";
    if (csv.beta_true) {
        std::vector<int> s0;
        for (int j = 0; j < csv.beta_true->size(); ++j)
            if ((*csv.beta_true)[j] != 0.0) s0.push_back(j);
        if (!s0.empty()) *os << "tpp " << csv_field(tpp(res.support, s0)) << "\n";
    }
    if (!o.out.empty())
        std::cout << "wrote " << o.out << "\n";
}

struct MetricsOpts {
    std::string hat_path, true_path;
};

VectorXd read_vector_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<double> vals;
    double v;
    while (in >> v) vals.push_back(v);
    if (vals.empty()) throw std::runtime_error(path + ": no numeric values");
    VectorXd out(static_cast<Eigen::Index>(vals.size()));
    for (size_t i = 0; i < vals.size(); ++i) out[static_cast<Eigen::Index>(i)] = vals[i];
    return out;
}

void run_metrics(const MetricsOpts& o) {
    const VectorXd bh = read_vector_file(o.hat_path);
    const VectorXd bt = read_vector_file(o.true_path);
    if (bh.size() != bt.size()) throw std::runtime_error("coefficient files differ in length");
    std::cout << "nmi_zero " << csv_field(nmi_with_zero_group(bh, bt)) << "\n";
    std::cout << "grouping_distance " << grouping_distance(bh, bt) << "\n";
    std::cout << "same_grouping " << (same_grouping(bh, bt) ? 1 : 0) << "\n";
    std::vector<int> shat, s0;
    for (int j = 0; j < bh.size(); ++j) {
        if (bh[j] != 0.0) shat.push_back(j);
        if (bt[j] != 0.0) s0.push_back(j);
    }
    if (!s0.empty()) std::cout << "tpp " << csv_field(tpp(shat, s0)) << "\n";
}

struct TuneOpts {
    std::string data_path;
    std::vector<int> K_grid, s_grid;
    std::string method = "bic";
    int folds = 10;
    std::uint64_t seed = 1;
    double time_limit = 0.0;
    std::string out;
};

void run_tune(const TuneOpts& o) {
    const CsvDataset csv = read_dataset_csv(o.data_path);
    TuneConfig cfg;
    cfg.K_grid = o.K_grid;
    cfg.s_grid = o.s_grid.empty() ? std::vector<int>{csv.data.p()} : o.s_grid;
    cfg.method = o.method == "cv" ? TuneMethod::cv : TuneMethod::bic;
    cfg.folds = o.folds;
    cfg.seed = o.seed;
    SolveOptions sopts;
    if (o.time_limit > 0) sopts.time_limit = o.time_limit;
    const TuneResult res = tune(csv.data, cfg, [&](const Dataset& d, const Budget& b) {
        return solve_exact(d, b, sopts).first;
    });
    std::cout << "K " << res.K << "\ns " << res.s << "\n";
    if (!o.out.empty()) {
        CsvWriter w(o.out);
        w.header({"K", "s", "score"});
        for (const auto& t : res.table)
            w.row({std::to_string(t.K), std::to_string(t.s), csv_field(t.score)});
        std::cout << "wrote " << o.out << "\n";
    }
}

struct ExportOpts {
    std::string data_path;
    int K = 1, s = -1;
    double big_m = 0.0, delta = 1e-6;
    std::string out = "model.lp";
};

void run_export(const ExportOpts& o) {
    const CsvDataset csv = read_dataset_csv(o.data_path);
    const int s = o.s >= 0 ? o.s : csv.data.p();
    const double bigM = o.big_m > 0 ? o.big_m : default_big_m(csv.data);
    const std::string text = export_mio(csv.data, Budget{o.K, s}, bigM, o.delta);
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + o.out + " for writing");
    f << text;
    std::cout << "wrote " << o.out << " (bigM " << csv_field(bigM) << ")\n";
}

struct PipelineOpts {
    std::string data_path;
    int s_hat = 20;
    std::vector<int> K_grid = {1, 2, 3, 4, 5};
    int folds = 10;
    double gap_tol = 0.0, time_limit = 5.0;
    std::uint64_t seed = 1;
    std::string out;
};

void run_pipeline(const PipelineOpts& o) {
    const CsvDataset csv = read_dataset_csv(o.data_path);
    const Dataset& data = csv.data;
    const int s_hat = std::min(o.s_hat, 100);  // sparsity cap before grouping

    ScreeningConfig scfg;
    scfg.pi = std::min(s_hat, data.p());
    const ScreeningResult sres = screen_with_covariates(data, scfg);

    Dataset reduced;
    reduced.y = data.y;
    reduced.Z = data.Z;
    reduced.X.resize(data.n(), static_cast<Eigen::Index>(sres.support.size()));
    for (size_t c = 0; c < sres.support.size(); ++c)
        reduced.X.col(static_cast<Eigen::Index>(c)) = data.X.col(sres.support[c]);

    SolveOptions sopts;
    sopts.gap_tol = o.gap_tol;
    if (o.time_limit > 0) sopts.time_limit = o.time_limit;

    TuneConfig tcfg;
    tcfg.K_grid = o.K_grid;
    tcfg.s_grid = {reduced.p()};
    tcfg.method = TuneMethod::cv;
    tcfg.folds = o.folds;
    tcfg.seed = o.seed;
    const TuneResult tres = tune(reduced, tcfg, [&](const Dataset& d, const Budget& b) {
        return solve_exact(d, b, sopts).first;
    });

    auto [fit, report] = solve_exact(reduced, Budget{tres.K, reduced.p()}, sopts);

    std::ostream* os = &std::cout;
    std::ofstream f;
    if (!o.out.empty()) {
        f.open(o.out);
        os = &f;
    }
    *os << "screened";
    for (int j : sres.support) *os << " x" << (j + 1);
    *os << "\nselected_K " << tres.K << "\n";
    print_fit(*os, reduced, fit, report, &sres.support);
    if (csv.beta_true) {
        VectorXd beta_hat = VectorXd::Zero(data.p());
        const VectorXd bfit = to_beta(fit);
        for (size_t c = 0; c < sres.support.size(); ++c)
            beta_hat[sres.support[c]] = bfit[static_cast<Eigen::Index>(c)];
        *os << "nmi_zero " << csv_field(nmi_with_zero_group(beta_hat, *csv.beta_true)) << "\n";
        std::vector<int> s0;
        for (int j = 0; j < csv.beta_true->size(); ++j)
            if ((*csv.beta_true)[j] != 0.0) s0.push_back(j);
        if (!s0.empty()) *os << "tpp " << csv_field(tpp(sres.support, s0)) << "\n";
    }
    if (!o.out.empty()) std::cout << "wrote " << o.out << "\n";
}

template <typename Opts>
void add_print_config(CLI::App* cmd, std::shared_ptr<Opts> opts) {
    cmd->add_flag("--print-config", opts->print_config, "Print effective settings and exit");
}

}  // namespace

void register_simulate(CLI::App& app) {
    auto opts = std::make_shared<SimulateOpts>();
    CLI::App* cmd = app.add_subcommand("simulate", "Monte Carlo study: generate, fit, score");
    cmd->configurable();
    cmd->add_option("--preset", opts->preset, "equal | unequal | ultra")->capture_default_str();
    cmd->configurable();
    cmd->add_option("--n", opts->n)->capture_default_str();
    cmd->configurable();
    cmd->add_option("--p", opts->p)->capture_default_str();
    cmd->configurable();
    cmd->add_option("--q", opts->q)->capture_default_str();
    cmd->configurable();
    cmd->add_option("--rho", opts->rho, "AR(1) design correlation")->capture_default_str();
    cmd->configurable();
    cmd->add_option("--signal-r", opts->signal_r, "signal strength r")->capture_default_str();
    cmd->configurable();
    cmd->add_option("--sigma", opts->sigma)->capture_default_str();
    cmd->configurable();
    cmd->add_option("--reps", opts->reps)->capture_default_str();
    cmd->configurable();
    cmd->add_option("--K", opts->K)->capture_default_str();
    cmd->configurable();
    cmd->add_option("--s", opts->s, "sparsity budget; -1 = true sparsity")->capture_default_str();
    cmd->configurable();
    cmd->add_option("--gap-tol", opts->gap_tol)->capture_default_str();
    cmd->configurable();
    cmd->add_option("--time-limit", opts->time_limit, "seconds per solve")->capture_default_str();
    cmd->add_flag("--screen", opts->screen, "run the screening stage first");
    cmd->configurable();
    cmd->add_option("--pi", opts->pi, "screening projection size; 0 = true sparsity");
    cmd->configurable();
    cmd->add_option("--expansion", opts->expansion, "screening expansion size; 0 = ceil(pi/2)");
    cmd->configurable();
    cmd->add_option("--seed", opts->seed)->capture_default_str();
    cmd->configurable();
    cmd->add_option("--threads", opts->threads, "0 = hardware concurrency")->capture_default_str();
    cmd->configurable();
    cmd->add_option("--out", opts->out)->capture_default_str();
    add_print_config(cmd, opts);
    cmd->callback([opts, cmd]() {
        if (opts->print_config) {
            std::cout << cmd->config_to_str(true, true);
            return;
        }
        run_simulate(*opts);
    });
}

void register_pipeline(CLI::App& app) {
    auto opts = std::make_shared<PipelineOpts>();
    CLI::App* cmd = app.add_subcommand("pipeline", "Screen with CoSaMP, then group");
    cmd->configurable();
    cmd->add_option("--data", opts->data_path, "dataset CSV")->required();
    cmd->configurable();
    cmd->add_option("--s-hat", opts->s_hat, "sparsity estimate (capped at 100)")
        ->capture_default_str();
    cmd->configurable();
    cmd->add_option("--K-grid", opts->K_grid)->delimiter(',')->capture_default_str();
    cmd->configurable();
    cmd->add_option("--folds", opts->folds)->capture_default_str();
    cmd->configurable();
    cmd->add_option("--gap-tol", opts->gap_tol)->capture_default_str();
    cmd->configurable();
    cmd->add_option("--time-limit", opts->time_limit)->capture_default_str();
    cmd->configurable();
    cmd->add_option("--seed", opts->seed)->capture_default_str();
    cmd->configurable();
    cmd->add_option("--out", opts->out);
    cmd->callback([opts]() { run_pipeline(*opts); });
}

void register_fit(CLI::App& app) {
    auto opts = std::make_shared<FitOpts>();
    CLI::App* cmd = app.add_subcommand("fit", "Exact fit at a fixed budget");
    cmd->configurable();
    cmd->add_option("--data", opts->data_path, "dataset CSV")->required();
    cmd->configurable();
    cmd->add_option("--K", opts->K)->required();
    cmd->configurable();
    cmd->add_option("--s", opts->s, "-1 = p")->capture_default_str();
    cmd->configurable();
    cmd->add_option("--gap-tol", opts->gap_tol)->capture_default_str();
    cmd->configurable();
    cmd->add_option("--time-limit", opts->time_limit)->capture_default_str();
    cmd->add_flag("--no-warm-start", opts->no_warm_start);
    cmd->configurable();
    cmd->add_option("--must-link", opts->must_link, "1-based feature pair, e.g. --must-link 1 2")
        ->expected(2)->take_all();
    cmd->configurable();
    cmd->add_option("--cannot-link", opts->cannot_link, "1-based feature pair")
        ->expected(2)->take_all();
    cmd->configurable();
    cmd->add_option("--out", opts->out);
    cmd->callback([opts]() { run_fit(*opts); });
}

void register_screen(CLI::App& app) {
    auto opts = std::make_shared<ScreenOpts>();
    CLI::App* cmd = app.add_subcommand("screen", "CoSaMP variable screening");
    cmd->configurable();
    cmd->add_option("--data", opts->data_path, "dataset CSV")->required();
    cmd->configurable();
    cmd->add_option("--pi", opts->pi, "projection size")->required();
    cmd->configurable();
    cmd->add_option("--expansion", opts->expansion, "0 = ceil(pi/2)")->capture_default_str();
    cmd->configurable();
    cmd->add_option("--out", opts->out);
    cmd->callback([opts]() { run_screen(*opts); });
}

void register_metrics(CLI::App& app) {
    auto opts = std::make_shared<MetricsOpts>();
    CLI::App* cmd = app.add_subcommand("metrics", "Grouping metrics for two coefficient files");
    cmd->configurable();
    cmd->add_option("--beta-hat", opts->hat_path, "one value per line")->required();
    cmd->configurable();
    cmd->add_option("--beta-true", opts->true_path, "one value per line")->required();
    cmd->callback([opts]() { run_metrics(*opts); });
}

void register_tune(CLI::App& app) {
    auto opts = std::make_shared<TuneOpts>();
    CLI::App* cmd = app.add_subcommand("tune", "Select (K, s) by BIC or cross-validation");
    cmd->configurable();
    cmd->add_option("--data", opts->data_path, "dataset CSV")->required();
    cmd->configurable();
    cmd->add_option("--K-grid", opts->K_grid)->delimiter(',')->required();
    cmd->configurable();
    cmd->add_option("--s-grid", opts->s_grid)->delimiter(',');
    cmd->configurable();
    cmd->add_option("--method", opts->method, "bic | cv")->capture_default_str();
    cmd->configurable();
    cmd->add_option("--folds", opts->folds)->capture_default_str();
    cmd->configurable();
    cmd->add_option("--seed", opts->seed)->capture_default_str();
    cmd->configurable();
    cmd->add_option("--time-limit", opts->time_limit)->capture_default_str();
    cmd->configurable();
    cmd->add_option("--out", opts->out, "score table CSV");
    cmd->callback([opts]() { run_tune(*opts); });
}

void register_export_mio(CLI::App& app) {
    auto opts = std::make_shared<ExportOpts>();
    CLI::App* cmd = app.add_subcommand("export-mio", "Write the LP-format model file");
    cmd->configurable();
    cmd->add_option("--data", opts->data_path, "dataset CSV")->required();
    cmd->configurable();
    cmd->add_option("--K", opts->K)->required();
    cmd->configurable();
    cmd->add_option("--s", opts->s, "-1 = p")->capture_default_str();
    cmd->configurable();
    cmd->add_option("--big-m", opts->big_m, "0 = coefficient-scale heuristic")
        ->capture_default_str();
    cmd->configurable();
    cmd->add_option("--delta", opts->delta, "strict ordering margin")->capture_default_str();
    cmd->configurable();
    cmd->add_option("--out", opts->out)->capture_default_str();
    cmd->callback([opts]() { run_export(*opts); });
}

}  // namespace l0fuse_cli
