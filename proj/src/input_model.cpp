#include "failprob/input_model.hpp"

#include <cmath>
#include <stdexcept>

#include "failprob/math.hpp"

namespace failprob {

void Marginal::validate() const {
    switch (kind) {
        case MarginalKind::normal:
            if (!(b > 0.0)) throw std::invalid_argument("normal marginal needs sd > 0");
            break;
        case MarginalKind::uniform:
            if (!(a < b)) throw std::invalid_argument("uniform marginal needs a < b");
            break;
        case MarginalKind::truncated_normal:
            if (!(b > 0.0)) throw std::invalid_argument("truncated normal needs sd > 0");
            if (!(lo < hi)) throw std::invalid_argument("truncated normal needs lo < hi");
            break;
    }
}

double Marginal::quantile(double u) const {
    switch (kind) {
        case MarginalKind::normal:
            return a + b * norm_ppf(u);
        case MarginalKind::uniform:
            return a + u * (b - a);
        case MarginalKind::truncated_normal: {
            const double zlo = norm_cdf((lo - a) / b);
            const double zhi = norm_cdf((hi - a) / b);
            return a + b * norm_ppf(zlo + u * (zhi - zlo));
        }
    }
    return 0.0;
}

void InputModel::validate() const {
    if (marginals.empty()) throw std::invalid_argument("input model has no marginals");
    for (const auto& m : marginals) m.validate();
}

Eigen::MatrixXd InputModel::sample(long N, RngStream& stream) const {
    validate();
    if (N < 1) throw std::invalid_argument("sample count must be positive");
    const int d = dim();
    Eigen::MatrixXd X(N, d);
    for (long i = 0; i < N; ++i)
        for (int j = 0; j < d; ++j) X(i, j) = marginals[j].quantile(stream.uniform_open());
    return X;
}

Eigen::MatrixXd InputModel::from_unit_cube(const Eigen::MatrixXd& U) const {
    validate();
    if (U.cols() != dim()) throw std::invalid_argument("unit-cube matrix has wrong dimension");
    Eigen::MatrixXd X(U.rows(), U.cols());
    for (Eigen::Index i = 0; i < U.rows(); ++i)
        for (int j = 0; j < dim(); ++j) {
            const double u = std::min(1.0 - 1e-15, std::max(1e-15, U(i, j)));
            X(i, j) = marginals[j].quantile(u);
        }
    return X;
}

double min_pairwise_distance(const Eigen::MatrixXd& X) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < X.rows(); ++i)
        for (Eigen::Index j = i + 1; j < X.rows(); ++j)
            best = std::min(best, (X.row(i) - X.row(j)).norm());
    return best;
}

namespace {

Eigen::MatrixXd random_lhs(int n, int d, RngStream& stream) {
    Eigen::MatrixXd U(n, d);
    std::vector<int> perm(n);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[stream.below(i + 1)]);
        for (int i = 0; i < n; ++i) U(i, j) = (perm[i] + stream.uniform()) / n;
    }
    return U;
}

}  // namespace

Eigen::MatrixXd lhs_maximin(int n, int d, RngStream& stream, int restarts) {
    if (n < 2) throw std::invalid_argument("LHS needs at least two points");
    if (d < 1) throw std::invalid_argument("LHS needs at least one dimension");

    Eigen::MatrixXd best;
    double best_score = -1.0;
    const int swaps = n * n;

    for (int r = 0; r < std::max(1, restarts); ++r) {
        Eigen::MatrixXd U = random_lhs(n, d, stream);
        double score = min_pairwise_distance(U);
        for (int s = 0; s < swaps; ++s) {
            const int col = static_cast<int>(stream.below(d));
            const int i = static_cast<int>(stream.below(n));
            int j = static_cast<int>(stream.below(n));
            if (i == j) continue;
            std::swap(U(i, col), U(j, col));
            const double cand = min_pairwise_distance(U);
            if (cand > score) {
                score = cand;
            } else {
                std::swap(U(i, col), U(j, col));
            }
        }
        if (score > best_score) {
            best_score = score;
            best = U;
        }
    }
    return best;
}

MonteCarloEstimate naive_mc(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& oracle,
    const std::vector<double>& thresholds, const InputModel& model, long N,
    RngStream& stream) {
    if (N < 1) throw std::invalid_argument("sample count must be positive");
    const Eigen::MatrixXd X = model.sample(N, stream);

    MonteCarloEstimate out;
    out.samples = N;
    for (long i = 0; i < N; ++i) {
        const Eigen::VectorXd y = oracle(X.row(i));
        if (static_cast<std::size_t>(y.size()) != thresholds.size())
            throw std::invalid_argument("oracle response count does not match thresholds");
        bool fail = false;
        for (Eigen::Index j = 0; j < y.size(); ++j)
            if (y(j) > thresholds[static_cast<std::size_t>(j)]) fail = true;
        if (fail) ++out.failures;
    }
    out.p_hat = static_cast<double>(out.failures) / static_cast<double>(N);
    if (out.failures > 0) {
        out.rel_stderr = std::sqrt((1.0 - out.p_hat) / (static_cast<double>(N) * out.p_hat));
        out.stderr_defined = true;
    } else {
        out.rel_stderr = std::numeric_limits<double>::quiet_NaN();
        out.stderr_defined = false;
    }
    return out;
}

}  // namespace failprob
