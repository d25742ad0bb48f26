#include "failprob/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace failprob {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix of the Hermite
// recurrence, weights come from the first eigenvector components.
GaussHermite gauss_hermite(int order) {
    if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
    const double sqrt_pi = std::sqrt(M_PI);

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
    for (int i = 1; i < order; ++i) {
        const double b = std::sqrt(0.5 * i);
        J(i, i - 1) = b;
        J(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("Gauss-Hermite eigen decomposition failed");

    GaussHermite gh;
    gh.nodes = es.eigenvalues();
    gh.weights.resize(order);
    for (int q = 0; q < order; ++q) {
        const double v0 = es.eigenvectors()(0, q);
        gh.weights(q) = sqrt_pi * v0 * v0;
    }
    gh.normalized_weights = gh.weights / sqrt_pi;
    return gh;
}

}  // namespace failprob
