#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "failprob/kernel.hpp"

namespace failprob {

// Coordinates equal within 1e-12 relative, per dimension.
bool points_coincide(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct Design {
    Eigen::MatrixXd points;     // n x d
    Eigen::VectorXd responses;  // n

    int size() const { return static_cast<int>(points.rows()); }
    int dim() const { return static_cast<int>(points.cols()); }
    // Throws on empty designs, size mismatches, non-finite entries, or
    // duplicate rows (coordinates equal within 1e-12 relative).
    void validate() const;
};

struct FitConfig {
    KernelFamily family = KernelFamily::matern52;
    bool isotropic = false;
    // When set, hyperparameter search is skipped and only the trend is
    // estimated. Required for single-point designs.
    std::optional<KernelSpec> fixed_kernel;
    int starts = 8;
    int max_evals_per_start = 240;
    // Lengthscale search box, as factors of the per-dimension data extent.
    double lengthscale_lower_factor = 1e-2;
    double lengthscale_upper_factor = 1e2;
    std::uint64_t seed = 0;
};

class KrigingPosterior;

// Rank-one conditioning of a posterior on a hypothetical observation at a new
// site. The updated mean is affine in the observed value z; the updated
// variance does not depend on z.
class HypotheticalUpdate {
public:
    const Eigen::VectorXd& site() const { return site_; }
    double site_mean() const { return site_mean_; }
    double site_var() const { return site_var_; }

    double updated_mean(const Eigen::VectorXd& x, double z) const;
    double updated_var(const Eigen::VectorXd& x) const;
    std::pair<double, double> predict(const Eigen::VectorXd& x, double z) const;

private:
    friend class KrigingPosterior;
    const KrigingPosterior* base_ = nullptr;
    Eigen::VectorXd site_;
    Eigen::VectorXd half_site_;  // L^{-1} k(design, site)
    double site_mean_ = 0.0;
    double site_var_ = 0.0;
    double denom_ = 0.0;  // site_var + jitter, matching an actual refit
};

// Gaussian posterior conditioned on noise-free observations, with a constant
// trend estimated by generalized least squares and then held fixed.
// Immutable after construction; all queries are const and thread-safe.
class KrigingPosterior {
public:
    // Maximum-likelihood fit (multi-start simplex search over lengthscales,
    // trend and variance profiled out analytically).
    static KrigingPosterior fit(const Design& design, const FitConfig& config = {});

    // Condition with the given hyperparameters; only the trend is estimated.
    static KrigingPosterior with_kernel(const Design& design, const KernelSpec& kernel);

    // New posterior with one appended observation, hyperparameters and trend
    // unchanged.
    KrigingPosterior with_observation(const Eigen::VectorXd& x, double y) const;

    const Design& design() const { return design_; }
    const KernelSpec& kernel() const { return kernel_; }
    double trend() const { return trend_; }
    double jitter() const { return jitter_; }  // relative to kernel variance
    int size() const { return design_.size(); }
    int dim() const { return design_.dim(); }

    std::pair<double, double> predict(const Eigen::VectorXd& x) const;

    // Means and variances at the rows of X. The parallel path gives
    // bit-identical results to the serial one (element-wise work only).
    void batch_predict(const Eigen::MatrixXd& X, Eigen::VectorXd& means,
                       Eigen::VectorXd& vars, bool parallel = true) const;

    // Posterior covariance matrix of (xi(x_1), ..., xi(x_m)) on grid rows.
    Eigen::MatrixXd cross_cov(const Eigen::MatrixXd& grid) const;

    // count i.i.d. joint draws on the grid; rows are paths.
    Eigen::MatrixXd sample_paths(const Eigen::MatrixXd& grid, int count,
                                 std::uint64_t seed) const;

    // Empty when the site variance is below the degenerate threshold or the
    // site coincides with an existing design point; callers skip such sites.
    std::optional<HypotheticalUpdate> hypothetical(const Eigen::VectorXd& site) const;

    // True when x matches a design row within the duplicate tolerance.
    bool near_design_point(const Eigen::VectorXd& x) const;

    // Leave-one-out residuals y_i - m_{-i}(x_i) under fixed hyperparameters.
    Eigen::VectorXd loo_residuals() const;

    // --- low-level access for batched downstream kernels ---
    // H = L^{-1} k(design, X_j) columns, in covariance scale. Posterior
    // covariance between rows i, j of X is k(x_i, x_j) - H_i . H_j.
    Eigen::MatrixXd half_solves(const Eigen::MatrixXd& X) const;
    double degenerate_var_threshold() const { return 1e-12 * kernel_.variance; }
    double refit_denominator(double site_var) const {
        return site_var + jitter_ * kernel_.variance;
    }

    void save(const std::string& path) const;
    static KrigingPosterior load(const std::string& path);

private:
    friend class HypotheticalUpdate;
    KrigingPosterior() = default;
    static KrigingPosterior condition(const Design& design, const KernelSpec& kernel,
                                      double initial_jitter,
                                      std::optional<double> fixed_trend = std::nullopt);

    Design design_;
    KernelSpec kernel_;
    double trend_ = 0.0;
    double jitter_ = 0.0;
    Eigen::MatrixXd chol_;   // lower factor of variance * (C + jitter I)
    Eigen::VectorXd alpha_;  // K^{-1} (y - trend 1)
};

// Leave-one-out RMSE comparison across the three kernel families; returns the
// family with the smallest RMSE (ties break toward Matern 5/2).
KernelFamily select_kernel_loo(const Design& design, FitConfig config);

inline constexpr double kInitialJitter = 1e-8;  // relative to kernel variance
inline constexpr double kMaxJitter = 1e-2;

}  // namespace failprob
