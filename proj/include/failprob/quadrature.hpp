#pragma once

#include <Eigen/Dense>

namespace failprob {

// Gauss-Hermite rule for weight exp(-u^2): integral f(u) exp(-u^2) du
// ~ sum w_q f(u_q). Weights sum to sqrt(pi).
struct GaussHermite {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
    // weights / sqrt(pi); sums to one, the form used for Gaussian expectations
    // E[f(m + sqrt(2) s U)] with U standard normal.
    Eigen::VectorXd normalized_weights;
};

GaussHermite gauss_hermite(int order);

}  // namespace failprob
