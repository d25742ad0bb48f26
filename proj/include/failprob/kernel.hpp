#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace failprob {

enum class KernelFamily { matern32, matern52, squared_exponential };

std::string kernel_family_name(KernelFamily f);
KernelFamily kernel_family_from_name(const std::string& name);

// Stationary covariance: variance * correlation(scaled distance).
// With isotropic = true a single lengthscale is shared by all input
// dimensions; otherwise one lengthscale per dimension.
struct KernelSpec {
    KernelFamily family = KernelFamily::matern52;
    double variance = 1.0;
    Eigen::VectorXd lengthscales;
    bool isotropic = false;

    void validate(int dim) const;
    double lengthscale(int k) const {
        return isotropic ? lengthscales(0) : lengthscales(k);
    }
};

// Correlation at scaled distance r = ||(x - y) / l||.
double correlation_at(KernelFamily family, double r);

double scaled_distance(const KernelSpec& spec, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y);

inline double kernel_value(const KernelSpec& spec, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) {
    return spec.variance * correlation_at(spec.family, scaled_distance(spec, x, y));
}

// Unit-diagonal correlation matrix on the rows of X.
Eigen::MatrixXd correlation_matrix(const KernelSpec& spec, const Eigen::MatrixXd& X);

// corr(X_i, Z_j), rows of X against rows of Z.
Eigen::MatrixXd cross_correlation(const KernelSpec& spec, const Eigen::MatrixXd& X,
                                  const Eigen::MatrixXd& Z);

}  // namespace failprob
