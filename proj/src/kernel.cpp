#include "failprob/kernel.hpp"

#include <cmath>

namespace failprob {

namespace {
constexpr double kSqrt3 = 1.7320508075688772935;
constexpr double kSqrt5 = 2.2360679774997896964;
}  // namespace

std::string kernel_family_name(KernelFamily f) {
    switch (f) {
        case KernelFamily::matern32: return "matern32";
        case KernelFamily::matern52: return "matern52";
        case KernelFamily::squared_exponential: return "squared-exponential";
    }
    return "unknown";
}

KernelFamily kernel_family_from_name(const std::string& name) {
    if (name == "matern32") return KernelFamily::matern32;
    if (name == "matern52") return KernelFamily::matern52;
    if (name == "squared-exponential" || name == "sqexp" || name == "gaussian")
        return KernelFamily::squared_exponential;
    throw std::invalid_argument("unknown kernel family: " + name);
}

void KernelSpec::validate(int dim) const {
    if (!(variance > 0.0) || !std::isfinite(variance))
        throw std::invalid_argument("kernel variance must be positive");
    const int expected = isotropic ? 1 : dim;
    if (lengthscales.size() != expected)
        throw std::invalid_argument("kernel lengthscale count does not match input dimension");
    for (int k = 0; k < lengthscales.size(); ++k)
        if (!(lengthscales(k) > 0.0) || !std::isfinite(lengthscales(k)))
            throw std::invalid_argument("kernel lengthscales must be positive");
}

double correlation_at(KernelFamily family, double r) {
    switch (family) {
        case KernelFamily::matern32: {
            const double a = kSqrt3 * r;
            return (1.0 + a) * std::exp(-a);
        }
        case KernelFamily::matern52: {
            const double a = kSqrt5 * r;
            return (1.0 + a + a * a / 3.0) * std::exp(-a);
        }
        case KernelFamily::squared_exponential:
            return std::exp(-0.5 * r * r);
    }
    return 0.0;
}

double scaled_distance(const KernelSpec& spec, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& y) {
    double s = 0.0;
    for (int k = 0; k < x.size(); ++k) {
        const double d = (x(k) - y(k)) / spec.lengthscale(k);
        s += d * d;
    }
    return std::sqrt(s);
}

Eigen::MatrixXd correlation_matrix(const KernelSpec& spec, const Eigen::MatrixXd& X) {
    const Eigen::Index n = X.rows();
    Eigen::MatrixXd C(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        C(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double c =
                correlation_at(spec.family, scaled_distance(spec, X.row(i), X.row(j)));
            C(i, j) = c;
            C(j, i) = c;
        }
    }
    return C;
}

Eigen::MatrixXd cross_correlation(const KernelSpec& spec, const Eigen::MatrixXd& X,
                                  const Eigen::MatrixXd& Z) {
    Eigen::MatrixXd C(X.rows(), Z.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i)
        for (Eigen::Index j = 0; j < Z.rows(); ++j)
            C(i, j) = correlation_at(spec.family, scaled_distance(spec, X.row(i), Z.row(j)));
    return C;
}

}  // namespace failprob
