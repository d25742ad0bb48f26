#pragma once

// Brute-force reference implementations, deliberately independent of the
// grouped estimator paths: direct sums over the raw probability vector and
// piecewise integration of the step quantile function. Desk-scale only.

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>
#include <vector>

namespace failprob::oracles {

inline void check_cap(long n, long cap, const char* what) {
    if (n > cap) throw std::invalid_argument(std::string(what) + ": instance too large");
}

inline double mean_direct(const Eigen::VectorXd& p) { return p.mean(); }

// (1/N^2) sum_{a,b} min(p_a, p_b) - mean^2
inline double var_double_sum(const Eigen::VectorXd& p, long cap = 2000) {
    const long N = p.size();
    check_cap(N, cap, "var_double_sum");
    double acc = 0.0;
    for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b) acc += std::min(p(a), p(b));
    const double mu = p.mean();
    return acc / (double(N) * double(N)) - mu * mu;
}

// Exhaustive m-fold enumeration of E[min(p_{i_1}, ..., p_{i_m})], m <= 4.
inline double moment_enumeration(const Eigen::VectorXd& p, int m, long cap = 300) {
    const long N = p.size();
    check_cap(N, cap, "moment_enumeration");
    if (m < 1 || m > 4) throw std::invalid_argument("enumeration supports m in 1..4");
    double acc = 0.0;
    if (m == 1) {
        return p.mean();
    } else if (m == 2) {
        for (long a = 0; a < N; ++a)
            for (long b = 0; b < N; ++b) acc += std::min(p(a), p(b));
    } else if (m == 3) {
        for (long a = 0; a < N; ++a)
            for (long b = 0; b < N; ++b) {
                const double mab = std::min(p(a), p(b));
                for (long c = 0; c < N; ++c) acc += std::min(mab, p(c));
            }
    } else {
        check_cap(N, 120, "moment_enumeration m=4");
        for (long a = 0; a < N; ++a)
            for (long b = 0; b < N; ++b) {
                const double mab = std::min(p(a), p(b));
                for (long c = 0; c < N; ++c) {
                    const double mabc = std::min(mab, p(c));
                    for (long e = 0; e < N; ++e) acc += std::min(mabc, p(e));
                }
            }
    }
    double denom = 1.0;
    for (int k = 0; k < m; ++k) denom *= double(N);
    return acc / denom;
}

// (1/N) #{p_i > 1 - alpha}
inline double quantile_count(const Eigen::VectorXd& p, double alpha) {
    long c = 0;
    for (long i = 0; i < p.size(); ++i)
        if (p(i) > 1.0 - alpha) ++c;
    return double(c) / double(p.size());
}

// Step quantile function t -> (1/N) #{p_i > 1 - t}.
inline double quantile_step(const Eigen::VectorXd& p, double t) {
    return quantile_count(p, t);
}

// Exact integral of the step quantile function over [a, b]: partition at the
// jump locations 1 - p_i and sum value * length on each flat piece.
inline double quantile_integral(const Eigen::VectorXd& p, double a, double b) {
    std::vector<double> cuts{a, b};
    for (long i = 0; i < p.size(); ++i) {
        const double t = 1.0 - p(i);
        if (t > a && t < b) cuts.push_back(t);
    }
    std::sort(cuts.begin(), cuts.end());
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
        acc += quantile_step(p, mid) * (cuts[k + 1] - cuts[k]);
    }
    return acc;
}

// (1/alpha) int_0^alpha F^{-1}  and  (1/(1-alpha)) int_alpha^1 F^{-1}
inline double gamma_lo_integral(const Eigen::VectorXd& p, double alpha) {
    return quantile_integral(p, 0.0, alpha) / alpha;
}
inline double gamma_hi_integral(const Eigen::VectorXd& p, double alpha) {
    return quantile_integral(p, alpha, 1.0) / (1.0 - alpha);
}

// eta by direct double sum: ties count toward the lower term.
inline double eta_double_sum(const Eigen::VectorXd& p, double x_prob, long cap = 5000) {
    check_cap(p.size(), cap, "eta_double_sum");
    double lower = 0.0, upper = 0.0;
    for (long i = 0; i < p.size(); ++i) {
        if (p(i) <= x_prob)
            lower += p(i);
        else
            upper += 1.0 - p(i);
    }
    const double N = double(p.size());
    return (1.0 - x_prob) * lower / N + x_prob * upper / N;
}

// Direct survival scan for the q* defining relation.
inline double survival_direct(const Eigen::VectorXd& p, double q) {
    long c = 0;
    for (long i = 0; i < p.size(); ++i)
        if (p(i) > q) ++c;
    return double(c) / double(p.size());
}

}  // namespace failprob::oracles
