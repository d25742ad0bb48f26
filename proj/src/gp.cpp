#include "failprob/gp.hpp"

#include <Eigen/Cholesky>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "failprob/errors.hpp"
#include "failprob/optim.hpp"
#include "failprob/rng.hpp"

namespace failprob {

bool points_coincide(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        if (a(k) == b(k)) continue;
        if (std::fabs(a(k) - b(k)) > 1e-12 * std::max(std::fabs(a(k)), std::fabs(b(k))))
            return false;
    }
    return true;
}

namespace {

bool rows_equal(const Eigen::MatrixXd& X, Eigen::Index i, Eigen::Index j) {
    return points_coincide(X.row(i), X.row(j));
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void Design::validate() const {
    if (points.rows() < 1) throw std::invalid_argument("design must contain at least one point");
    if (responses.size() != points.rows())
        throw std::invalid_argument("design responses do not match the number of points");
    if (!points.allFinite() || !responses.allFinite())
        throw std::invalid_argument("design contains non-finite values");
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        for (Eigen::Index j = i + 1; j < points.rows(); ++j)
            if (rows_equal(points, i, j))
                throw std::invalid_argument("design contains duplicate points (rows " +
                                            std::to_string(i) + " and " + std::to_string(j) +
                                            ")");
}

// ---------------------------------------------------------------------------
// Conditioning

KrigingPosterior KrigingPosterior::condition(const Design& design, const KernelSpec& kernel,
                                             double initial_jitter,
                                             std::optional<double> fixed_trend) {
    const int n = design.size();
    const Eigen::MatrixXd C = correlation_matrix(kernel, design.points);

    KrigingPosterior post;
    post.design_ = design;
    post.kernel_ = kernel;

    double jitter = initial_jitter;
    Eigen::LLT<Eigen::MatrixXd> llt;
    for (;;) {
        Eigen::MatrixXd K = kernel.variance * C;
        K.diagonal().array() += jitter * kernel.variance;
        llt.compute(K);
        if (llt.info() == Eigen::Success) break;
        jitter *= 10.0;
        if (jitter > kMaxJitter)
            throw NumericalError(
                "kernel matrix is not positive definite at the maximum jitter; "
                "design is degenerate");
    }
    post.jitter_ = jitter;
    post.chol_ = llt.matrixL();

    if (fixed_trend) {
        post.trend_ = *fixed_trend;
    } else {
        const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
        const Eigen::VectorXd half_ones = post.chol_.triangularView<Eigen::Lower>().solve(ones);
        const Eigen::VectorXd half_y =
            post.chol_.triangularView<Eigen::Lower>().solve(design.responses);
        const double denom = half_ones.squaredNorm();
        post.trend_ = (denom > 0.0) ? half_ones.dot(half_y) / denom : design.responses.mean();
    }

    const Eigen::VectorXd resid = design.responses.array() - post.trend_;
    post.alpha_ = llt.solve(resid);
    return post;
}

KrigingPosterior KrigingPosterior::with_kernel(const Design& design, const KernelSpec& kernel) {
    design.validate();
    kernel.validate(design.dim());
    return condition(design, kernel, kInitialJitter);
}

KrigingPosterior KrigingPosterior::with_observation(const Eigen::VectorXd& x, double y) const {
    Design d;
    d.points.resize(design_.points.rows() + 1, design_.points.cols());
    d.points.topRows(design_.points.rows()) = design_.points;
    d.points.bottomRows(1) = x.transpose();
    d.responses.resize(design_.responses.size() + 1);
    d.responses.head(design_.responses.size()) = design_.responses;
    d.responses(design_.responses.size()) = y;
    d.validate();
    // Trend frozen so the update is a pure conditioning step.
    return condition(d, kernel_, jitter_, trend_);
}

// ---------------------------------------------------------------------------
// Fitting

namespace {

struct NllPieces {
    double value = std::numeric_limits<double>::infinity();
    double trend = 0.0;
    double variance = 0.0;
};

// Concentrated negative log marginal likelihood: the constant trend is
// profiled out by GLS and the variance by its closed-form maximizer.
NllPieces concentrated_nll(const Design& design, const KernelSpec& spec) {
    const int n = design.size();
    Eigen::MatrixXd C = correlation_matrix(spec, design.points);

    double jitter = kInitialJitter;
    Eigen::LLT<Eigen::MatrixXd> llt;
    for (;;) {
        Eigen::MatrixXd Cj = C;
        Cj.diagonal().array() += jitter;
        llt.compute(Cj);
        if (llt.info() == Eigen::Success) break;
        jitter *= 10.0;
        if (jitter > kMaxJitter) return {};
    }
    const Eigen::MatrixXd L = llt.matrixL();
    const Eigen::VectorXd half_ones =
        L.triangularView<Eigen::Lower>().solve(Eigen::VectorXd::Ones(n));
    const Eigen::VectorXd half_y = L.triangularView<Eigen::Lower>().solve(design.responses);

    NllPieces out;
    out.trend = half_ones.dot(half_y) / half_ones.squaredNorm();
    const double quad = (half_y - out.trend * half_ones).squaredNorm();
    out.variance = std::max(quad / n, 1e-30);
    out.value = n * std::log(out.variance) + 2.0 * L.diagonal().array().log().sum();
    return out;
}

}  // namespace

KrigingPosterior KrigingPosterior::fit(const Design& design, const FitConfig& config) {
    design.validate();
    if (config.fixed_kernel) {
        KernelSpec spec = *config.fixed_kernel;
        spec.validate(design.dim());
        return condition(design, spec, kInitialJitter);
    }
    if (design.size() < 2)
        throw std::invalid_argument(
            "hyperparameter estimation needs at least two observations; "
            "pass a fixed kernel for single-point designs");

    const int d = design.dim();
    const int nparams = config.isotropic ? 1 : d;

    // Search box in log-lengthscale space, spanned by the data extent.
    Eigen::VectorXd extent(d);
    for (int k = 0; k < d; ++k) {
        const double lo = design.points.col(k).minCoeff();
        const double hi = design.points.col(k).maxCoeff();
        extent(k) = (hi > lo) ? hi - lo : 1.0;
    }
    Eigen::VectorXd box_lo(nparams), box_hi(nparams);
    for (int k = 0; k < nparams; ++k) {
        const double scale = config.isotropic ? extent.mean() : extent(k);
        box_lo(k) = std::log(config.lengthscale_lower_factor * scale);
        box_hi(k) = std::log(config.lengthscale_upper_factor * scale);
    }

    KernelSpec spec;
    spec.family = config.family;
    spec.isotropic = config.isotropic;
    spec.lengthscales.resize(nparams);

    auto objective = [&](const Eigen::VectorXd& u) -> double {
        for (int k = 0; k < nparams; ++k)
            if (u(k) < box_lo(k) || u(k) > box_hi(k))
                return std::numeric_limits<double>::infinity();
        KernelSpec s = spec;
        s.lengthscales = u.array().exp();
        return concentrated_nll(design, s).value;
    };

    // Latin-hypercube starts over the box.
    RngStream rs(config.seed, 0xF17);
    const int S = std::max(1, config.starts);
    std::vector<std::vector<int>> perms(nparams, std::vector<int>(S));
    for (int k = 0; k < nparams; ++k) {
        auto& p = perms[k];
        for (int s = 0; s < S; ++s) p[s] = s;
        for (int s = S - 1; s > 0; --s) std::swap(p[s], p[rs.below(s + 1)]);
    }

    Eigen::VectorXd best_u;
    double best_val = std::numeric_limits<double>::infinity();
    for (int s = 0; s < S; ++s) {
        Eigen::VectorXd u0(nparams);
        for (int k = 0; k < nparams; ++k) {
            const double frac = (perms[k][s] + rs.uniform()) / S;
            u0(k) = box_lo(k) + frac * (box_hi(k) - box_lo(k));
        }
        const double step = 0.12 * (box_hi(0) - box_lo(0));
        SimplexResult r = nelder_mead(objective, u0, step, config.max_evals_per_start);
        if (r.value < best_val) {
            best_val = r.value;
            best_u = r.x;
        }
    }
    if (!std::isfinite(best_val))
        throw NumericalError("likelihood search failed: no admissible hyperparameters");

    spec.lengthscales = best_u.array().exp();
    const NllPieces pieces = concentrated_nll(design, spec);
    spec.variance = pieces.variance;
    return condition(design, spec, kInitialJitter);
}

// ---------------------------------------------------------------------------
// Queries

std::pair<double, double> KrigingPosterior::predict(const Eigen::VectorXd& x) const {
    if (x.size() != dim()) throw std::invalid_argument("query point has wrong dimension");
    const int n = size();
    Eigen::VectorXd kx(n);
    for (int i = 0; i < n; ++i)
        kx(i) = kernel_.variance *
                correlation_at(kernel_.family, scaled_distance(kernel_, design_.points.row(i), x));
    const double mean = trend_ + kx.dot(alpha_);
    const Eigen::VectorXd half = chol_.triangularView<Eigen::Lower>().solve(kx);
    const double var = std::max(0.0, kernel_.variance - half.squaredNorm());
    return {mean, var};
}

void KrigingPosterior::batch_predict(const Eigen::MatrixXd& X, Eigen::VectorXd& means,
                                     Eigen::VectorXd& vars, bool parallel) const {
    if (X.cols() != dim()) throw std::invalid_argument("query matrix has wrong dimension");
    const Eigen::Index m = X.rows();
    means.resize(m);
    vars.resize(m);
#pragma omp parallel for schedule(static) if (parallel)
    for (Eigen::Index j = 0; j < m; ++j) {
        const auto [mu, s2] = predict(X.row(j));
        means(j) = mu;
        vars(j) = s2;
    }
}

Eigen::MatrixXd KrigingPosterior::half_solves(const Eigen::MatrixXd& X) const {
    const Eigen::MatrixXd Kdx =
        kernel_.variance * cross_correlation(kernel_, design_.points, X);
    return chol_.triangularView<Eigen::Lower>().solve(Kdx);
}

Eigen::MatrixXd KrigingPosterior::cross_cov(const Eigen::MatrixXd& grid) const {
    if (grid.cols() != dim()) throw std::invalid_argument("grid has wrong dimension");
    if (!grid.allFinite()) throw std::invalid_argument("grid contains non-finite values");
    const Eigen::MatrixXd Kgg = kernel_.variance * correlation_matrix(kernel_, grid);
    const Eigen::MatrixXd H = half_solves(grid);
    Eigen::MatrixXd R = Kgg - H.transpose() * H;
    R = 0.5 * (R + R.transpose()).eval();
    return R;
}

Eigen::MatrixXd KrigingPosterior::sample_paths(const Eigen::MatrixXd& grid, int count,
                                               std::uint64_t seed) const {
    if (count < 1) throw std::invalid_argument("path count must be positive");
    const Eigen::Index m = grid.rows();
    Eigen::VectorXd mean, var;
    batch_predict(grid, mean, var, false);
    const Eigen::MatrixXd cov = cross_cov(grid);

    Eigen::LLT<Eigen::MatrixXd> llt;
    double jitter = 1e-12;
    for (;;) {
        Eigen::MatrixXd Cj = cov;
        Cj.diagonal().array() += jitter * kernel_.variance;
        llt.compute(Cj);
        if (llt.info() == Eigen::Success) break;
        jitter *= 10.0;
        if (jitter > kMaxJitter)
            throw NumericalError("path covariance is not factorizable: grid points too close");
    }
    const Eigen::MatrixXd L = llt.matrixL();

    RngStream rs(seed, 0x5A17);
    Eigen::MatrixXd Z(count, m);
    for (int i = 0; i < count; ++i)
        for (Eigen::Index j = 0; j < m; ++j) Z(i, j) = rs.normal();

    Eigen::MatrixXd paths = Z * L.transpose();
    paths.rowwise() += mean.transpose();
    return paths;
}

bool KrigingPosterior::near_design_point(const Eigen::VectorXd& x) const {
    for (int i = 0; i < size(); ++i)
        if (points_coincide(design_.points.row(i), x)) return true;
    return false;
}

std::optional<HypotheticalUpdate> KrigingPosterior::hypothetical(
    const Eigen::VectorXd& site) const {
    if (near_design_point(site)) return std::nullopt;
    const auto [mean, var] = predict(site);
    if (var <= degenerate_var_threshold()) return std::nullopt;

    HypotheticalUpdate up;
    up.base_ = this;
    up.site_ = site;
    up.site_mean_ = mean;
    up.site_var_ = var;
    up.denom_ = refit_denominator(var);

    Eigen::VectorXd ks(size());
    for (int i = 0; i < size(); ++i)
        ks(i) = kernel_.variance * correlation_at(kernel_.family,
                                                  scaled_distance(kernel_, design_.points.row(i),
                                                                  site));
    up.half_site_ = chol_.triangularView<Eigen::Lower>().solve(ks);
    return up;
}

std::pair<double, double> HypotheticalUpdate::predict(const Eigen::VectorXd& x, double z) const {
    const int n = base_->size();
    const KernelSpec& spec = base_->kernel();
    Eigen::VectorXd kx(n);
    for (int i = 0; i < n; ++i)
        kx(i) = spec.variance * correlation_at(spec.family,
                                               scaled_distance(spec,
                                                               base_->design().points.row(i), x));
    const double mean = base_->trend() + kx.dot(base_->alpha_);
    const Eigen::VectorXd half = base_->chol_.triangularView<Eigen::Lower>().solve(kx);
    const double var = std::max(0.0, spec.variance - half.squaredNorm());

    const double cross = kernel_value(spec, x, site_) - half.dot(half_site_);
    const double w = cross / denom_;
    return {mean + w * (z - site_mean_), std::max(0.0, var - cross * w)};
}

double HypotheticalUpdate::updated_mean(const Eigen::VectorXd& x, double z) const {
    return predict(x, z).first;
}

double HypotheticalUpdate::updated_var(const Eigen::VectorXd& x) const {
    return predict(x, 0.0).second;
}

Eigen::VectorXd KrigingPosterior::loo_residuals() const {
    const int n = size();
    const Eigen::MatrixXd Linv =
        chol_.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(n, n));
    Eigen::VectorXd out(n);
    for (int i = 0; i < n; ++i) {
        const double prec_ii = Linv.col(i).squaredNorm();
        out(i) = alpha_(i) / prec_ii;
    }
    return out;
}

KernelFamily select_kernel_loo(const Design& design, FitConfig config) {
    const KernelFamily families[] = {KernelFamily::matern52, KernelFamily::matern32,
                                     KernelFamily::squared_exponential};
    KernelFamily best = KernelFamily::matern52;
    double best_rmse = std::numeric_limits<double>::infinity();
    for (KernelFamily f : families) {
        config.family = f;
        const KrigingPosterior post = KrigingPosterior::fit(design, config);
        const double rmse = std::sqrt(post.loo_residuals().squaredNorm() / design.size());
        if (rmse < best_rmse) {
            best_rmse = rmse;
            best = f;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Serialization

void KrigingPosterior::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open model file for writing: " + path);
    out << "failprob-gp 1\n";
    out << "family " << kernel_family_name(kernel_.family) << "\n";
    out << "isotropic " << (kernel_.isotropic ? 1 : 0) << "\n";
    out << "variance " << format_g17(kernel_.variance) << "\n";
    out << "lengthscales";
    for (int k = 0; k < kernel_.lengthscales.size(); ++k)
        out << " " << format_g17(kernel_.lengthscales(k));
    out << "\n";
    out << "trend " << format_g17(trend_) << "\n";
    out << "jitter " << format_g17(jitter_) << "\n";
    out << "n " << size() << " d " << dim() << "\n";
    for (int i = 0; i < size(); ++i) {
        for (int k = 0; k < dim(); ++k) out << format_g17(design_.points(i, k)) << " ";
        out << format_g17(design_.responses(i)) << "\n";
    }
}

KrigingPosterior KrigingPosterior::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open model file: " + path);
    std::string tag;
    int version = 0;
    in >> tag >> version;
    if (tag != "failprob-gp" || version != 1)
        throw ConfigError("not a failprob model file: " + path);

    KernelSpec spec;
    std::string key, value;
    in >> key >> value;
    if (key != "family") throw ConfigError("malformed model file (family)");
    spec.family = kernel_family_from_name(value);
    int iso = 0;
    in >> key >> iso;
    spec.isotropic = iso != 0;
    in >> key >> spec.variance;

    in >> key;
    if (key != "lengthscales") throw ConfigError("malformed model file (lengthscales)");
    std::string line;
    std::getline(in, line);
    std::istringstream ls(line);
    std::vector<double> scales;
    double v;
    while (ls >> v) scales.push_back(v);
    spec.lengthscales = Eigen::Map<Eigen::VectorXd>(scales.data(), scales.size());

    double trend = 0.0, jitter = kInitialJitter;
    in >> key >> trend >> key >> jitter;
    int n = 0, d = 0;
    in >> key >> n >> key >> d;
    if (n < 1 || d < 1) throw ConfigError("malformed model file (sizes)");

    Design design;
    design.points.resize(n, d);
    design.responses.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < d; ++k) in >> design.points(i, k);
        in >> design.responses(i);
    }
    if (!in) throw ConfigError("malformed model file (data block)");

    spec.validate(d);
    design.validate();
    return condition(design, spec, jitter, trend);
}

}  // namespace failprob
