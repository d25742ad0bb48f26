#include "failprob/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "failprob/math.hpp"
#include "failprob/optim.hpp"

namespace failprob {

SampleCloud::SampleCloud(Eigen::MatrixXd samples, Eigen::VectorXd probs)
    : samples_(std::move(samples)), probs_(std::move(probs)) {
    const long N = static_cast<long>(probs_.size());
    if (N < 1) throw std::invalid_argument("cloud must contain at least one sample");
    if (samples_.size() > 0 && samples_.rows() != N)
        throw std::invalid_argument("cloud samples and probabilities disagree in length");
    for (long i = 0; i < N; ++i) {
        const double p = probs_(i);
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("membership probabilities must lie in [0, 1]");
    }

    std::vector<double> sorted(probs_.data(), probs_.data() + N);
    std::sort(sorted.begin(), sorted.end());

    long seen = 0;
    for (long i = 0; i < N;) {
        long j = i;
        while (j < N && sorted[j] == sorted[i]) ++j;
        const long l = j - i;
        seen += l;
        values_.push_back(sorted[i]);
        mult_.push_back(l);
        larger_.push_back(N - seen);
        const double prev_p = cum_prob_.empty() ? 0.0 : cum_prob_.back();
        const double prev_c = cum_comp_.empty() ? 0.0 : cum_comp_.back();
        cum_prob_.push_back(prev_p + static_cast<double>(l) * sorted[i]);
        cum_comp_.push_back(prev_c + static_cast<double>(l) * (1.0 - sorted[i]));
        i = j;
    }
}

SampleCloud SampleCloud::from_probs(Eigen::VectorXd probs) {
    return SampleCloud(Eigen::MatrixXd(), std::move(probs));
}

namespace {
// Index of the last group with value <= p, or -1.
long last_group_at_or_below(const std::vector<double>& values, double p) {
    const auto it = std::upper_bound(values.begin(), values.end(), p);
    return static_cast<long>(it - values.begin()) - 1;
}
}  // namespace

double SampleCloud::survival(double p) const {
    const long idx = last_group_at_or_below(values_, p);
    if (idx < 0) return 1.0;
    return static_cast<double>(larger_[idx]) / static_cast<double>(size());
}

double SampleCloud::prob_mass_below(double p) const {
    const long idx = last_group_at_or_below(values_, p);
    if (idx < 0) return 0.0;
    return cum_prob_[idx] / static_cast<double>(size());
}

double SampleCloud::complement_mass_above(double p) const {
    const long idx = last_group_at_or_below(values_, p);
    const double below = (idx < 0) ? 0.0 : cum_comp_[idx];
    return (cum_comp_.back() - below) / static_cast<double>(size());
}

// ---------------------------------------------------------------------------

double membership_prob(const KrigingPosterior& post, double threshold,
                       const Eigen::VectorXd& x) {
    const auto [mean, var] = post.predict(x);
    if (var <= post.degenerate_var_threshold()) return mean > threshold ? 1.0 : 0.0;
    return norm_cdf((mean - threshold) / std::sqrt(var));
}

Eigen::VectorXd membership_probs(const Eigen::VectorXd& means, const Eigen::VectorXd& vars,
                                 double threshold, double degenerate_var) {
    Eigen::VectorXd probs(means.size());
    for (Eigen::Index i = 0; i < means.size(); ++i) {
        if (vars(i) <= degenerate_var)
            probs(i) = means(i) > threshold ? 1.0 : 0.0;
        else
            probs(i) = norm_cdf((means(i) - threshold) / std::sqrt(vars(i)));
    }
    return probs;
}

SampleCloud build_cloud(const KrigingPosterior& post, double threshold,
                        const InputModel& model, long N, std::uint64_t seed,
                        bool parallel) {
    Eigen::MatrixXd X = model.sample(N, seed, 0);
    Eigen::VectorXd means, vars;
    post.batch_predict(X, means, vars, parallel);
    Eigen::VectorXd probs =
        membership_probs(means, vars, threshold, post.degenerate_var_threshold());
    return SampleCloud(std::move(X), std::move(probs));
}

// ---------------------------------------------------------------------------

double mean_mu(const SampleCloud& cloud) {
    const auto& values = cloud.group_values();
    const auto& mult = cloud.group_multiplicities();
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        sum += static_cast<double>(mult[i]) * values[i];
    return sum / static_cast<double>(cloud.size());
}

double var_rn(const SampleCloud& cloud) {
    const auto& values = cloud.group_values();
    const auto& mult = cloud.group_multiplicities();
    const auto& larger = cloud.larger_counts();
    const double N = static_cast<double>(cloud.size());
    double min_pair = 0.0;  // E[min(p(X), p(X'))] over the empirical measure
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double l = static_cast<double>(mult[i]);
        min_pair += l * values[i] * (l + 2.0 * static_cast<double>(larger[i]));
    }
    min_pair /= N * N;
    const double mu = mean_mu(cloud);
    return std::max(0.0, min_pair - mu * mu);
}

double moment_rn(const SampleCloud& cloud, int m) {
    if (m < 1) throw std::invalid_argument("moment order must be >= 1");
    const auto& values = cloud.group_values();
    const auto& larger = cloud.larger_counts();
    const double N = static_cast<double>(cloud.size());
    double sum = 0.0;
    double upper = 1.0;  // survival fraction just below the current group
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double lower = static_cast<double>(larger[i]) / N;
        sum += values[i] * (std::pow(upper, m) - std::pow(lower, m));
        upper = lower;
    }
    return sum;
}

double quantile_rn(const SampleCloud& cloud, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("quantile level must lie in [0, 1]");
    return cloud.survival(1.0 - alpha);
}

std::pair<double, double> cx_bounds(const SampleCloud& cloud, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("bound level must lie in (0, 1)");
    const auto& values = cloud.group_values();
    const auto& mult = cloud.group_multiplicities();
    const double N = static_cast<double>(cloud.size());
    double lo_sum = 0.0, hi_sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double l = static_cast<double>(mult[i]);
        lo_sum += l * std::min(1.0, (1.0 - values[i]) / alpha);
        hi_sum += l * std::min(1.0, values[i] / (1.0 - alpha));
    }
    return {1.0 - lo_sum / N, hi_sum / N};
}

std::pair<double, double> markov_bounds(double mu, double alpha) {
    const double lo = std::max(0.0, (mu + alpha - 1.0) / alpha);
    const double hi = std::min(1.0, mu / (1.0 - alpha));
    return {lo, hi};
}

QuantileBounds quantile_bounds(const SampleCloud& cloud, double alpha) {
    QuantileBounds qb;
    const auto [glo, ghi] = cx_bounds(cloud, alpha);
    const auto [dlo, dhi] = markov_bounds(mean_mu(cloud), alpha);
    qb.gamma_lo = glo;
    qb.gamma_hi = ghi;
    qb.delta_lo = dlo;
    qb.delta_hi = dhi;
    return qb;
}

CredibleInterval credible_cx(const SampleCloud& cloud, double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("credible levels must lie in (0, 1)");
    const auto& values = cloud.group_values();
    const auto& mult = cloud.group_multiplicities();
    const double N = static_cast<double>(cloud.size());
    double lo_sum = 0.0, hi_sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double l = static_cast<double>(mult[i]);
        lo_sum += l * std::min(1.0, (1.0 - values[i]) / (alpha * beta));
        hi_sum += l * std::min(1.0, values[i] / (alpha * (1.0 - beta)));
    }
    return {1.0 - lo_sum / N, hi_sum / N, alpha, beta};
}

CredibleInterval credible_cx_optimized(const SampleCloud& cloud, double alpha) {
    auto width = [&](double beta) {
        const CredibleInterval ci = credible_cx(cloud, alpha, beta);
        return ci.upper - ci.lower;
    };
    const double beta_opt = golden_section(width, 0.01, 0.99, 1e-4);
    if (width(beta_opt) <= width(0.5)) return credible_cx(cloud, alpha, beta_opt);
    return credible_cx(cloud, alpha, 0.5);
}

CredibleInterval credible_markov(double mu, double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("credible levels must lie in (0, 1)");
    const double lo = std::max(0.0, (mu + alpha * beta - 1.0) / (alpha * beta));
    const double hi = std::min(1.0, mu / (alpha * (1.0 - beta)));
    return {lo, hi, alpha, beta};
}

double eta(const SampleCloud& cloud, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("membership probability must lie in [0, 1]");
    return (1.0 - p) * cloud.prob_mass_below(p) + p * cloud.complement_mass_above(p);
}

double q_star(const SampleCloud& cloud) {
    const double mu = mean_mu(cloud);
    if (cloud.survival(0.0) <= mu) return 0.0;
    const auto& values = cloud.group_values();
    const auto& larger = cloud.larger_counts();
    const double N = static_cast<double>(cloud.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        if (static_cast<double>(larger[i]) / N <= mu) return values[i];
    return values.back();  // unreachable: survival past the top group is 0
}

double vorobev_deviation(const SampleCloud& cloud, double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("level must lie in [0, 1]");
    return cloud.prob_mass_below(q) + cloud.complement_mass_above(q);
}

Eigen::VectorXd sample_rn(const SampleCloud& cloud, long M, std::uint64_t seed) {
    if (M < 1) throw std::invalid_argument("draw count must be positive");
    RngStream rs(seed, 0x52);
    Eigen::VectorXd out(M);
    for (long j = 0; j < M; ++j) out(j) = cloud.survival(rs.uniform());
    return out;
}

Eigen::VectorXd sample_sn_grid(const KrigingPosterior& post, double threshold,
                               const Eigen::MatrixXd& grid, Eigen::VectorXd weights,
                               int paths, std::uint64_t seed) {
    const Eigen::Index m = grid.rows();
    if (weights.size() == 0) weights = Eigen::VectorXd::Constant(m, 1.0 / double(m));
    if (weights.size() != m)
        throw std::invalid_argument("grid weights do not match the grid size");
    if (weights.minCoeff() < 0.0) throw std::invalid_argument("grid weights must be >= 0");
    weights /= weights.sum();

    const Eigen::MatrixXd P = post.sample_paths(grid, paths, seed);
    Eigen::VectorXd out(paths);
    for (int i = 0; i < paths; ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < m; ++j)
            if (P(i, j) > threshold) s += weights(j);
        out(i) = s;
    }
    return out;
}

double plugin_estimate(const KrigingPosterior& post, double threshold,
                       const SampleCloud& cloud) {
    if (cloud.samples().size() == 0)
        throw std::invalid_argument("cloud carries no sample coordinates");
    Eigen::VectorXd means, vars;
    post.batch_predict(cloud.samples(), means, vars);
    long count = 0;
    for (Eigen::Index i = 0; i < means.size(); ++i)
        if (means(i) > threshold) ++count;
    return static_cast<double>(count) / static_cast<double>(cloud.size());
}

FailureReport make_report(const SampleCloud& cloud, const std::vector<double>& alphas,
                          double ci_alpha, BetaMode beta_mode, double beta) {
    FailureReport rep;
    rep.mu = mean_mu(cloud);
    rep.var_rn = failprob::var_rn(cloud);
    rep.alphas = alphas;
    for (double a : alphas) rep.bounds.push_back(quantile_bounds(cloud, a));
    rep.cx = (beta_mode == BetaMode::optimize) ? credible_cx_optimized(cloud, ci_alpha)
                                               : credible_cx(cloud, ci_alpha, beta);
    rep.markov = credible_markov(rep.mu, ci_alpha, rep.cx.beta);
    rep.q_star = failprob::q_star(cloud);
    rep.vorobev_dev = vorobev_deviation(cloud, rep.q_star);
    for (int m = 1; m <= 4; ++m) rep.moments.push_back(moment_rn(cloud, m));
    rep.cloud_size = cloud.size();
    return rep;
}

}  // namespace failprob
