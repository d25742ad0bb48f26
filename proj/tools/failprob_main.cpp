// failprob: failure-probability estimation with Kriging surrogates.
//
// Subcommands: fit, estimate, sur, mc-baseline, lhs, oracle.
// Exit codes: 0 success, 2 configuration error, 3 oracle failure,
// 4 numerical failure.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "failprob/cloud.hpp"
#include "failprob/config.hpp"
#include "failprob/errors.hpp"
#include "failprob/format.hpp"
#include "failprob/gp.hpp"
#include "failprob/input_model.hpp"
#include "failprob/oracles.hpp"
#include "failprob/problems.hpp"
#include "failprob/sur.hpp"

namespace fs = std::filesystem;
using namespace failprob;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
};

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
}

// Design CSV: header x0..x{d-1},y0..; one row per point.
void parse_design_csv(const std::string& path, Eigen::MatrixXd& X, Eigen::MatrixXd& Y) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open design file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty design file: " + path);
    int d = 0, r = 0;
    {
        std::istringstream hs(line);
        std::string col;
        while (std::getline(hs, col, ',')) {
            if (!col.empty() && col[0] == 'x')
                ++d;
            else if (!col.empty() && col[0] == 'y')
                ++r;
            else
                throw ConfigError("design header columns must be x*/y*: " + col);
        }
    }
    if (d < 1 || r < 1) throw ConfigError("design file needs x and y columns");
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<double> row;
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (static_cast<int>(row.size()) != d + r)
            throw ConfigError("design row has wrong arity: " + line);
        rows.push_back(std::move(row));
    }
    X.resize(rows.size(), d);
    Y.resize(rows.size(), r);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int k = 0; k < d; ++k) X(i, k) = rows[i][k];
        for (int k = 0; k < r; ++k) Y(i, k) = rows[i][d + k];
    }
}

Marginal parse_marginal(const std::string& text) {
    std::istringstream in(text);
    std::string kind;
    std::getline(in, kind, ',');
    std::vector<double> args;
    std::string tok;
    while (std::getline(in, tok, ',')) args.push_back(std::stod(tok));
    if (kind == "normal" && args.size() == 2) return Marginal::normal(args[0], args[1]);
    if (kind == "uniform" && args.size() == 2) return Marginal::uniform(args[0], args[1]);
    if (kind == "truncated-normal" && args.size() == 4)
        return Marginal::truncated_normal(args[0], args[1], args[2], args[3]);
    throw ConfigError("bad marginal spec: " + text +
                      " (expected normal,m,s | uniform,a,b | truncated-normal,m,s,lo,hi)");
}

ProblemSpec problem_from_config(const Config& cfg) {
    const std::string name = cfg.get_or("problem", "name", "bump1d");
    if (is_builtin_problem(name)) return builtin_problem(name);
    if (name == "external") {
        const std::string command = cfg.get("problem", "command");
        const double timeout = cfg.get_double_or("problem", "timeout", 60.0);
        InputModel model;
        for (int k = 0;; ++k) {
            const auto m = cfg.find("problem", "marginal" + std::to_string(k));
            if (!m) break;
            model.marginals.push_back(parse_marginal(*m));
        }
        if (model.marginals.empty())
            throw ConfigError("external problem needs marginal0, marginal1, ... entries");
        std::vector<double> thresholds =
            cfg.get_doubles_or("problem", "thresholds", {});
        if (thresholds.empty()) throw ConfigError("external problem needs thresholds");
        return external_problem(command, model, thresholds, timeout);
    }
    throw ConfigError("unknown problem: " + name);
}

FitConfig fit_from_config(const Config& cfg, std::uint64_t seed) {
    FitConfig fc;
    fc.family = kernel_family_from_name(cfg.get_or("fit", "kernel", "matern52"));
    fc.isotropic = cfg.get_bool_or("fit", "isotropic", false);
    fc.starts = static_cast<int>(cfg.get_long_or("fit", "starts", 8));
    fc.max_evals_per_start =
        static_cast<int>(cfg.get_long_or("fit", "max_evals_per_start", 240));
    fc.seed = seed;
    return fc;
}

CandidateSource candidate_source_from_name(const std::string& name) {
    if (name == "cloud-subset") return CandidateSource::cloud_subset;
    if (name == "fresh-grid") return CandidateSource::fresh_grid;
    if (name == "continuous-search") return CandidateSource::continuous_search;
    throw ConfigError("unknown candidate source: " + name);
}

SurConfig sur_from_config(const Config& cfg, std::uint64_t seed) {
    SurConfig sc;
    sc.criterion = criterion_from_name(cfg.get_or("sur", "criterion", "J_Rn"));
    sc.quadrature_order = static_cast<int>(cfg.get_long_or("sur", "quadrature", 12));
    sc.candidate_source = candidate_source_from_name(
        cfg.get_or("sur", "candidate_source", "cloud-subset"));
    sc.budget = static_cast<int>(cfg.get_long_or("sur", "budget", 0));
    sc.stop_width = cfg.get_double_or("sur", "stop_width", 0.0);
    sc.cloud_size = cfg.get_long_or("sur", "cloud_size", 10000);
    sc.candidate_count = static_cast<int>(cfg.get_long_or("sur", "candidates", 512));
    sc.candidate_refresh = static_cast<int>(cfg.get_long_or("sur", "candidate_refresh", 5));
    sc.refit_every = static_cast<int>(cfg.get_long_or("sur", "refit_every", 1));
    sc.alphas = cfg.get_doubles_or("estimate", "alpha", default_alpha_levels());
    sc.ci_alpha = cfg.get_double_or("estimate", "ci_alpha", 0.05);
    const std::string beta = cfg.get_or("estimate", "beta", "0.5");
    if (beta == "optimize") {
        sc.beta_mode = BetaMode::optimize;
    } else {
        sc.beta_mode = BetaMode::fixed;
        sc.beta = std::stod(beta);
    }
    sc.seed = seed;
    sc.fit = fit_from_config(cfg, seed);
    return sc;
}

Config merged_config(const CommonOpts& common) {
    Config cfg;
    if (!common.config_path.empty()) cfg = Config::load(common.config_path);
    return cfg;
}

// ---------------------------------------------------------------------------

int cmd_fit(const CommonOpts& common, const std::string& design_path,
            const std::string& kernel_name, bool isotropic, const std::string& out_path) {
    Config cfg = merged_config(common);
    Eigen::MatrixXd X, Y;
    parse_design_csv(design_path, X, Y);

    FitConfig fc = fit_from_config(cfg, common.seed);
    fc.isotropic = isotropic || fc.isotropic;

    for (int r = 0; r < Y.cols(); ++r) {
        Design d{X, Y.col(r)};
        if (kernel_name == "auto")
            fc.family = select_kernel_loo(d, fc);
        else
            fc.family = kernel_family_from_name(kernel_name);
        const KrigingPosterior post = KrigingPosterior::fit(d, fc);
        fs::path out = out_path;
        if (Y.cols() > 1)
            out = fs::path(common.out_dir) /
                  (out.stem().string() + "_" + std::to_string(r) + out.extension().string());
        post.save(out.string());
        std::cout << "fitted response " << r << ": kernel "
                  << kernel_family_name(post.kernel().family) << ", variance "
                  << g17(post.kernel().variance) << ", trend " << g17(post.trend()) << " -> "
                  << out.string() << "\n";
    }
    return 0;
}

int cmd_estimate(const CommonOpts& common, std::vector<std::string> model_paths,
                 std::vector<double> cli_thresholds, long cloud_size,
                 const std::string& beta_opt) {
    Config cfg = merged_config(common);
    if (model_paths.empty()) throw ConfigError("estimate needs at least one --model file");

    std::vector<KrigingPosterior> posts;
    for (const auto& p : model_paths) posts.push_back(KrigingPosterior::load(p));

    ProblemSpec prob = problem_from_config(cfg);
    std::vector<double> thresholds = cli_thresholds.empty() ? prob.thresholds : cli_thresholds;
    if (thresholds.size() != posts.size())
        throw ConfigError("threshold count does not match the model count");

    if (cloud_size <= 0) cloud_size = cfg.get_long_or("estimate", "cloud_size", 10000);
    const std::vector<double> alphas =
        cfg.get_doubles_or("estimate", "alpha", default_alpha_levels());
    const double ci_alpha = cfg.get_double_or("estimate", "ci_alpha", 0.05);

    BetaMode mode = BetaMode::fixed;
    double beta = 0.5;
    const std::string beta_text =
        beta_opt.empty() ? cfg.get_or("estimate", "beta", "0.5") : beta_opt;
    if (beta_text == "optimize")
        mode = BetaMode::optimize;
    else
        beta = std::stod(beta_text);

    const Eigen::MatrixXd samples = prob.model.sample(cloud_size, common.seed, 0xC10D);
    std::vector<Eigen::VectorXd> probs;
    for (std::size_t r = 0; r < posts.size(); ++r) {
        Eigen::VectorXd means, vars;
        posts[r].batch_predict(samples, means, vars);
        probs.push_back(membership_probs(means, vars, thresholds[r],
                                         posts[r].degenerate_var_threshold()));
    }
    const SampleCloud cloud(samples, union_bound_probs(probs));
    const FailureReport rep = make_report(cloud, alphas, ci_alpha, mode, beta);

    write_file(fs::path(common.out_dir) / "report.csv", report_csv(rep));
    write_file(fs::path(common.out_dir) / "report.txt", report_text(rep));
    std::cout << report_text(rep);
    return 0;
}

int cmd_sur(const CommonOpts& common, const std::string& problem_name,
            const std::string& criterion_name_arg, int budget, long cloud_size, int n0,
            const std::string& initial_design_path) {
    Config cfg = merged_config(common);
    if (!problem_name.empty()) cfg.set("problem", "name", problem_name);
    ProblemSpec prob = problem_from_config(cfg);

    SurConfig sc = sur_from_config(cfg, common.seed);
    if (!criterion_name_arg.empty()) sc.criterion = criterion_from_name(criterion_name_arg);
    if (budget >= 0) sc.budget = budget;
    if (cloud_size > 0) sc.cloud_size = cloud_size;

    Eigen::MatrixXd initial;
    if (!initial_design_path.empty()) {
        Eigen::MatrixXd Y;
        std::ifstream probe(initial_design_path);
        std::string header;
        std::getline(probe, header);
        if (header.find('y') != std::string::npos) {
            parse_design_csv(initial_design_path, initial, Y);
        } else {
            throw ConfigError("initial design file needs x*/y* header columns");
        }
    } else {
        const int n_init = n0 > 0 ? n0 : static_cast<int>(cfg.get_long_or("sur", "n0", 4));
        RngStream rs(common.seed, 0x1457);
        initial = prob.model.from_unit_cube(lhs_maximin(n_init, prob.dim(), rs));
    }

    const SurState st = run_loop(initial, prob.oracle, prob.thresholds, prob.model, sc);

    write_file(fs::path(common.out_dir) / "history.csv", history_csv(st));
    write_file(fs::path(common.out_dir) / "report.csv", report_csv(st.final_report));
    write_file(fs::path(common.out_dir) / "report.txt", report_text(st.final_report));

    std::cout << "status: ";
    switch (st.status) {
        case SurStatus::completed: std::cout << "completed"; break;
        case SurStatus::width_reached: std::cout << "stop width reached"; break;
        case SurStatus::saturated: std::cout << "design saturated"; break;
        case SurStatus::oracle_failed: std::cout << "oracle failed"; break;
    }
    std::cout << " after " << st.history.size() << " added points (" << st.oracle_calls
              << " oracle calls)\n";
    if (!st.message.empty()) std::cout << st.message << "\n";
    std::cout << report_text(st.final_report);
    if (st.status == SurStatus::oracle_failed) throw OracleError(st.message);
    return 0;
}

int cmd_mc_baseline(const CommonOpts& common, const std::string& problem_name, long N) {
    Config cfg = merged_config(common);
    if (!problem_name.empty()) cfg.set("problem", "name", problem_name);
    ProblemSpec prob = problem_from_config(cfg);
    if (N <= 0) N = cfg.get_long_or("mc", "samples", 100000);

    RngStream rs(common.seed, 0xBA5E);
    const MonteCarloEstimate est = naive_mc(prob.oracle, prob.thresholds, prob.model, N, rs);

    std::ostringstream csv;
    csv << "key,value\n";
    csv << "p_hat," << g17(est.p_hat) << "\n";
    csv << "failures," << est.failures << "\n";
    csv << "samples," << est.samples << "\n";
    csv << "rel_stderr," << (est.stderr_defined ? g17(est.rel_stderr) : "undefined") << "\n";
    if (est.stderr_defined) {
        const double se = est.p_hat * est.rel_stderr;
        csv << "clt_lower," << g17(std::max(0.0, est.p_hat - 1.96 * se)) << "\n";
        csv << "clt_upper," << g17(std::min(1.0, est.p_hat + 1.96 * se)) << "\n";
    }
    write_file(fs::path(common.out_dir) / "mc_baseline.csv", csv.str());
    std::cout << csv.str();
    return 0;
}

int cmd_lhs(const CommonOpts& common, int n, int d, int restarts,
            const std::string& problem_name) {
    Config cfg = merged_config(common);
    InputModel model;
    if (!problem_name.empty()) {
        cfg.set("problem", "name", problem_name);
        model = problem_from_config(cfg).model;
        d = model.dim();
    }
    if (d < 1) throw ConfigError("lhs needs --dim or --problem");

    RngStream rs(common.seed, 0x1457);
    Eigen::MatrixXd U = lhs_maximin(n, d, rs, restarts);
    const Eigen::MatrixXd X = model.marginals.empty() ? U : model.from_unit_cube(U);

    std::ostringstream csv;
    for (int k = 0; k < d; ++k) csv << (k ? "," : "") << "x" << k;
    csv << "\n";
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        for (int k = 0; k < d; ++k) csv << (k ? "," : "") << g17(X(i, k));
        csv << "\n";
    }
    write_file(fs::path(common.out_dir) / "design.csv", csv.str());
    std::cout << csv.str();
    return 0;
}

Eigen::VectorXd synthetic_probs(long N, std::uint64_t seed) {
    RngStream rs(seed, 0x0AC1E);
    Eigen::VectorXd p(N);
    for (long i = 0; i < N; ++i) {
        const double u = rs.uniform();
        if (u < 0.2)
            p(i) = 0.0;
        else if (u < 0.3)
            p(i) = 1.0;
        else
            p(i) = rs.uniform();
    }
    return p;
}

int cmd_oracle(const CommonOpts& common, long cloud_size, bool calibrate) {
    if (calibrate) {
        // Regenerates the frozen layers4d thresholds and reference probability.
        const double targets[3] = {0.010, 0.008, 0.006};
        InputModel model = builtin_problem("layers4d").model;
        ProblemSpec raw = builtin_problem("layers4d");
        const long M = 1000000;
        const Eigen::MatrixXd X = model.sample(M, 424242, 1);
        Eigen::MatrixXd Y(M, 3);
        for (long i = 0; i < M; ++i) Y.row(i) = raw.oracle(X.row(i)).transpose();
        double thresholds[3];
        for (int r = 0; r < 3; ++r) {
            std::vector<double> col(Y.col(r).data(), Y.col(r).data() + M);
            std::sort(col.begin(), col.end());
            const long k = static_cast<long>(std::ceil((1.0 - targets[r]) * M)) - 1;
            thresholds[r] = col[static_cast<std::size_t>(k)];
            std::cout << "threshold_" << r << " " << g17(thresholds[r]) << "\n";
        }
        const Eigen::MatrixXd X2 = model.sample(M, 424242, 2);
        long unions = 0;
        for (long i = 0; i < M; ++i) {
            const Eigen::VectorXd y = raw.oracle(X2.row(i));
            if (y(0) > thresholds[0] || y(1) > thresholds[1] || y(2) > thresholds[2]) ++unions;
        }
        std::cout << "union_p " << g17(double(unions) / double(M)) << "\n";
        std::cout << "samples " << M << "\n";
        return 0;
    }

    namespace orc = failprob::oracles;
    std::ostringstream csv;
    csv << "quantity,instance,library,oracle,abs_gap,rel_gap\n";
    auto emit = [&](const std::string& what, const std::string& inst, double lib, double ref) {
        const double gap = std::fabs(lib - ref);
        const double rel = gap / std::max(1e-300, std::max(std::fabs(lib), std::fabs(ref)));
        csv << what << "," << inst << "," << g17(lib) << "," << g17(ref) << "," << g17(gap)
            << "," << g17(rel) << "\n";
    };

    const long N = std::min<long>(cloud_size, 2000);
    const Eigen::VectorXd p = synthetic_probs(N, common.seed);
    const SampleCloud cloud = SampleCloud::from_probs(p);

    emit("mean", "N=" + std::to_string(N), mean_mu(cloud), orc::mean_direct(p));
    emit("var_rn", "N=" + std::to_string(N), var_rn(cloud), orc::var_double_sum(p));
    {
        const Eigen::VectorXd p3 = p.head(std::min<long>(N, 300));
        const SampleCloud c3 = SampleCloud::from_probs(p3);
        emit("moment_m2", "N=300", moment_rn(c3, 2), orc::moment_enumeration(p3, 2));
        const Eigen::VectorXd p100 = p.head(std::min<long>(N, 100));
        const SampleCloud c100 = SampleCloud::from_probs(p100);
        emit("moment_m3", "N=100", moment_rn(c100, 3), orc::moment_enumeration(p100, 3));
        const Eigen::VectorXd p80 = p.head(std::min<long>(N, 80));
        const SampleCloud c80 = SampleCloud::from_probs(p80);
        emit("moment_m4", "N=80", moment_rn(c80, 4), orc::moment_enumeration(p80, 4));
    }
    for (double a : {0.25, 0.5, 0.9}) {
        const auto [glo, ghi] = cx_bounds(cloud, a);
        emit("gamma_lo", "alpha=" + g17(a), glo, orc::gamma_lo_integral(p, a));
        emit("gamma_hi", "alpha=" + g17(a), ghi, orc::gamma_hi_integral(p, a));
    }
    {
        double eta_avg = 0.0;
        for (long i = 0; i < N; ++i) eta_avg += eta(cloud, p(i));
        emit("eta_average_vs_var", "N=" + std::to_string(N), eta_avg / double(N),
             var_rn(cloud));
    }
    {
        // hypothetical update against a from-scratch refit, same kernel/trend
        ProblemSpec prob = builtin_problem("bump1d");
        RngStream rs(common.seed, 0x6F);
        Eigen::MatrixXd X0 = prob.model.from_unit_cube(lhs_maximin(6, 1, rs));
        Eigen::VectorXd y0(6);
        for (int i = 0; i < 6; ++i) y0(i) = prob.oracle(X0.row(i))(0);
        const KrigingPosterior post = KrigingPosterior::fit({X0, y0}, FitConfig{});
        Eigen::VectorXd site(1);
        site << -0.15;
        const double z = post.predict(site).first + 0.3;
        const auto up = post.hypothetical(site);
        const KrigingPosterior refit = post.with_observation(site, z);
        double worst_mean = 0.0, worst_var = 0.0;
        for (int k = 0; k < 100; ++k) {
            Eigen::VectorXd x(1);
            x << -2.0 + 4.0 * k / 99.0;
            const auto [mu_u, var_u] = up->predict(x, z);
            const auto [mu_r, var_r] = refit.predict(x);
            worst_mean = std::max(worst_mean,
                                  std::fabs(mu_u - mu_r) / std::max(1.0, std::fabs(mu_r)));
            worst_var = std::max(worst_var, std::fabs(var_u - var_r) /
                                                std::max(1e-12, std::fabs(var_r)));
        }
        emit("hypothetical_mean_max_rel_dev", "n=6", worst_mean, 0.0);
        emit("hypothetical_var_max_rel_dev", "n=6", worst_var, 0.0);
    }

    write_file(fs::path(common.out_dir) / "oracle_checks.csv", csv.str());
    std::cout << csv.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"failure-probability estimation with Kriging surrogates"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOpts common;
    app.add_option("--config", common.config_path, "configuration file");
    app.add_option("--seed", common.seed, "master seed");
    app.add_option("--out-dir", common.out_dir, "output directory");

    auto* fit = app.add_subcommand("fit", "fit a Kriging model to a design CSV");
    std::string design_path, kernel_name = "matern52", model_out = "model.txt";
    bool isotropic = false;
    fit->add_option("--design", design_path, "design CSV (x*,y* columns)")->required();
    fit->add_option("--kernel", kernel_name, "matern32|matern52|squared-exponential|auto");
    fit->add_flag("--isotropic", isotropic, "single shared lengthscale");
    fit->add_option("--out", model_out, "model file path");

    auto* estimate = app.add_subcommand("estimate", "failure report from fitted models");
    std::vector<std::string> model_paths;
    std::vector<double> cli_thresholds;
    long cloud_size = 0;
    std::string beta_opt;
    estimate->add_option("--model", model_paths, "model file (repeat per response)");
    estimate->add_option("--threshold", cli_thresholds, "threshold (repeat per response)");
    estimate->add_option("--cloud-size", cloud_size, "Monte Carlo cloud size");
    estimate->add_option("--beta", beta_opt, "credible-interval beta or 'optimize'");

    auto* sur = app.add_subcommand("sur", "sequential design run");
    std::string problem_name, criterion_arg, initial_design;
    int budget = -1, n0 = 0;
    long sur_cloud = 0;
    sur->add_option("--problem", problem_name, "built-in problem name or 'external'");
    sur->add_option("--criterion", criterion_arg, "J_Rn|J1|J2|J3|J4|J_Dev|J_Sn_ref");
    sur->add_option("--budget", budget, "points to add");
    sur->add_option("--cloud-size", sur_cloud, "Monte Carlo cloud size");
    sur->add_option("--n0", n0, "initial LHS size");
    sur->add_option("--initial-design", initial_design, "initial design CSV");

    auto* mc = app.add_subcommand("mc-baseline", "naive Monte Carlo baseline");
    std::string mc_problem;
    long mc_n = 0;
    mc->add_option("--problem", mc_problem, "built-in problem name or 'external'");
    mc->add_option("-N,--samples", mc_n, "sample count");

    auto* lhs = app.add_subcommand("lhs", "LHS-maximin design");
    int lhs_n = 30, lhs_d = 0, lhs_restarts = 20;
    std::string lhs_problem;
    lhs->add_option("-n,--points", lhs_n, "design size");
    lhs->add_option("-d,--dim", lhs_d, "dimension (unit cube output)");
    lhs->add_option("--restarts", lhs_restarts, "maximin restarts");
    lhs->add_option("--problem", lhs_problem, "map through this problem's marginals");

    auto* oracle = app.add_subcommand("oracle", "brute-force estimator cross-checks");
    long oracle_n = 300;
    bool calibrate = false;
    oracle->add_option("--cloud-size", oracle_n, "instance size (capped)");
    oracle->add_flag("--calibrate-layers4d", calibrate,
                     "recompute the layers4d threshold calibration");

    try {
        app.parse(argc, argv);
        if (*fit) return cmd_fit(common, design_path, kernel_name, isotropic, model_out);
        if (*estimate)
            return cmd_estimate(common, model_paths, cli_thresholds, cloud_size, beta_opt);
        if (*sur)
            return cmd_sur(common, problem_name, criterion_arg, budget, sur_cloud, n0,
                           initial_design);
        if (*mc) return cmd_mc_baseline(common, mc_problem, mc_n);
        if (*lhs) return cmd_lhs(common, lhs_n, lhs_d, lhs_restarts, lhs_problem);
        if (*oracle) return cmd_oracle(common, oracle_n, calibrate);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const OracleError& e) {
        std::cerr << "oracle failure: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    }
}
