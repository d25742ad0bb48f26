#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "failprob/rng.hpp"

namespace failprob {

enum class MarginalKind { normal, uniform, truncated_normal };

struct Marginal {
    MarginalKind kind = MarginalKind::normal;
    double a = 0.0;   // mean (normal / truncated_normal) or lower bound (uniform)
    double b = 1.0;   // sd (normal / truncated_normal) or upper bound (uniform)
    double lo = 0.0;  // truncation bounds (truncated_normal only)
    double hi = 0.0;

    static Marginal normal(double mean, double sd) {
        return {MarginalKind::normal, mean, sd, 0.0, 0.0};
    }
    static Marginal uniform(double a, double b) {
        return {MarginalKind::uniform, a, b, 0.0, 0.0};
    }
    static Marginal truncated_normal(double mean, double sd, double lo, double hi) {
        return {MarginalKind::truncated_normal, mean, sd, lo, hi};
    }

    void validate() const;
    double quantile(double u) const;  // u in (0, 1)
};

// Independent marginals; the input distribution P_X.
struct InputModel {
    std::vector<Marginal> marginals;

    int dim() const { return static_cast<int>(marginals.size()); }
    void validate() const;

    // N x d draw, deterministic per stream.
    Eigen::MatrixXd sample(long N, RngStream& stream) const;
    Eigen::MatrixXd sample(long N, std::uint64_t seed, std::uint64_t stream_id = 0) const {
        RngStream rs(seed, stream_id);
        return sample(N, rs);
    }

    // Maps a unit-cube matrix through the marginal quantile functions.
    Eigen::MatrixXd from_unit_cube(const Eigen::MatrixXd& U) const;
};

// Latin hypercube with maximin improvement by pairwise-swap hill climbing.
// Returned design lives in the unit cube; map through InputModel::from_unit_cube
// for physical coordinates. The first restart starts from the plain random
// LHS the same stream would generate, so the result never scores worse.
Eigen::MatrixXd lhs_maximin(int n, int d, RngStream& stream, int restarts = 20);

inline Eigen::MatrixXd lhs_maximin(int n, int d, std::uint64_t seed,
                                   std::uint64_t stream_id = 0, int restarts = 20) {
    RngStream rs(seed, stream_id);
    return lhs_maximin(n, d, rs, restarts);
}

// Minimum pairwise Euclidean distance of the rows.
double min_pairwise_distance(const Eigen::MatrixXd& X);

struct MonteCarloEstimate {
    double p_hat = 0.0;
    double rel_stderr = 0.0;  // sqrt((1 - p_hat) / (N p_hat))
    bool stderr_defined = false;
    long failures = 0;
    long samples = 0;
};

// Naive Monte Carlo baseline: fraction of draws for which any response
// exceeds its threshold.
MonteCarloEstimate naive_mc(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& oracle,
    const std::vector<double>& thresholds, const InputModel& model, long N,
    RngStream& stream);

}  // namespace failprob
