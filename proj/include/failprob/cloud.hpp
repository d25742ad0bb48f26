#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "failprob/gp.hpp"
#include "failprob/input_model.hpp"

namespace failprob {

// Fixed i.i.d. sample of P_X with cached membership probabilities, kept in a
// grouped sorted representation: distinct values p^(1) < ... < p^(N'), their
// multiplicities l_i and the counts n_i of strictly larger samples. All
// plug-in integrals over P_X are evaluated on this one empirical measure.
// Immutable after construction.
class SampleCloud {
public:
    SampleCloud(Eigen::MatrixXd samples, Eigen::VectorXd probs);
    // Cloud without coordinates, for estimator-level work on raw fields.
    static SampleCloud from_probs(Eigen::VectorXd probs);

    long size() const { return static_cast<long>(probs_.size()); }
    const Eigen::MatrixXd& samples() const { return samples_; }
    const Eigen::VectorXd& probs() const { return probs_; }

    long group_count() const { return static_cast<long>(values_.size()); }
    const std::vector<double>& group_values() const { return values_; }
    const std::vector<long>& group_multiplicities() const { return mult_; }
    const std::vector<long>& larger_counts() const { return larger_; }

    // (1/N) #{p_i > p}
    double survival(double p) const;
    // (1/N) sum p_i 1{p_i <= p}
    double prob_mass_below(double p) const;
    // (1/N) sum (1 - p_i) 1{p_i > p}
    double complement_mass_above(double p) const;

private:
    Eigen::MatrixXd samples_;
    Eigen::VectorXd probs_;
    std::vector<double> values_;  // strictly increasing distinct probabilities
    std::vector<long> mult_;      // l_i, sum = N
    std::vector<long> larger_;    // n_i = #{p_j > value_i}
    std::vector<double> cum_prob_;  // sum of l_j p_j for j <= i
    std::vector<double> cum_comp_;  // sum of l_j (1 - p_j) for j <= i
};

// P(xi_n(x) > T); collapses to the exceedance indicator where the posterior
// variance is degenerate.
double membership_prob(const KrigingPosterior& post, double threshold,
                       const Eigen::VectorXd& x);

// Vectorized form on precomputed posterior moments.
Eigen::VectorXd membership_probs(const Eigen::VectorXd& means, const Eigen::VectorXd& vars,
                                 double threshold, double degenerate_var);

SampleCloud build_cloud(const KrigingPosterior& post, double threshold,
                        const InputModel& model, long N, std::uint64_t seed,
                        bool parallel = true);

// --- estimators on the cloud ---

double mean_mu(const SampleCloud& cloud);

// Grouped estimator of Var[R_n]; agrees with the O(N^2) pairwise-minimum
// double sum.
double var_rn(const SampleCloud& cloud);

// E[R_n^m] via the survival-function representation.
double moment_rn(const SampleCloud& cloud, int m);

// Quantile function of R_n at level alpha in [0, 1].
double quantile_rn(const SampleCloud& cloud, double alpha);

struct QuantileBounds {
    double delta_lo = 0.0;  // Markov lower
    double gamma_lo = 0.0;  // convex-order lower
    double gamma_hi = 1.0;  // convex-order upper
    double delta_hi = 1.0;  // Markov upper
};

// Convex-order bounds (gamma-, gamma+) at level alpha in (0, 1).
std::pair<double, double> cx_bounds(const SampleCloud& cloud, double alpha);

// Markov bounds (delta-, delta+), clamped to [0, 1].
std::pair<double, double> markov_bounds(double mu, double alpha);

QuantileBounds quantile_bounds(const SampleCloud& cloud, double alpha);

struct CredibleInterval {
    double lower = 0.0;
    double upper = 1.0;
    double alpha = 0.05;
    double beta = 0.5;
};

CredibleInterval credible_cx(const SampleCloud& cloud, double alpha, double beta);
// Golden-section over beta, falling back to beta = 1/2 when the optimum is
// not narrower.
CredibleInterval credible_cx_optimized(const SampleCloud& cloud, double alpha);
CredibleInterval credible_markov(double mu, double alpha, double beta);

// Classification-error function eta at membership probability p. Ties
// p_n(y) = p count toward the lower term; the cloud average of eta equals
// var_rn exactly under this convention.
double eta(const SampleCloud& cloud, double p);

// Smallest q in {0} union group values with survival(q) <= mean; empirical
// version of P(R_n > mu_n).
double q_star(const SampleCloud& cloud);

// Expected distance in measure between the excursion set and its q-level
// quantile set.
double vorobev_deviation(const SampleCloud& cloud, double q);

// M approximate draws of R_n (one uniform per draw).
Eigen::VectorXd sample_rn(const SampleCloud& cloud, long M, std::uint64_t seed);

// Path-based draws of S_n on a weighted grid; test oracle for convex-order
// comparisons. Weights are normalized internally; empty weights mean uniform.
Eigen::VectorXd sample_sn_grid(const KrigingPosterior& post, double threshold,
                               const Eigen::MatrixXd& grid, Eigen::VectorXd weights,
                               int paths, std::uint64_t seed);

// P_X-mass of {m_n > T}: the plug-in (mean-interpolation) estimate.
double plugin_estimate(const KrigingPosterior& post, double threshold,
                       const SampleCloud& cloud);

// --- aggregated report ---

struct FailureReport {
    double mu = 0.0;
    double var_rn = 0.0;
    std::vector<double> alphas;
    std::vector<QuantileBounds> bounds;  // one per alpha
    CredibleInterval cx;
    CredibleInterval markov;  // same (alpha, beta) as cx
    double q_star = 0.0;
    double vorobev_dev = 0.0;
    std::vector<double> moments;  // E[R_n^m], m = 1..4
    long cloud_size = 0;
};

inline const std::vector<double>& default_alpha_levels() {
    static const std::vector<double> levels{0.5, 0.9, 0.95, 0.975, 0.99};
    return levels;
}

enum class BetaMode { fixed, optimize };

FailureReport make_report(const SampleCloud& cloud,
                          const std::vector<double>& alphas = default_alpha_levels(),
                          double ci_alpha = 0.05, BetaMode beta_mode = BetaMode::fixed,
                          double beta = 0.5);

// CSV / text serialization (schema in the CLI manual).
std::string report_csv(const FailureReport& report);
std::string report_text(const FailureReport& report);

}  // namespace failprob
