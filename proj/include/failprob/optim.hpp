#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace failprob {

struct SimplexResult {
    Eigen::VectorXd x;
    double value = std::numeric_limits<double>::infinity();
    int evaluations = 0;
};

// Derivative-free Nelder-Mead descent. The objective may return +inf to
// reject a point (used for box constraints).
inline SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                                 const Eigen::VectorXd& x0, double step,
                                 int max_evals = 200, double ftol = 1e-10) {
    const int d = static_cast<int>(x0.size());
    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

    std::vector<Eigen::VectorXd> pts(d + 1, x0);
    std::vector<double> vals(d + 1);
    int evals = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++evals;
        return f(x);
    };

    for (int i = 1; i <= d; ++i) pts[i](i - 1) += step;
    for (int i = 0; i <= d; ++i) vals[i] = eval(pts[i]);

    std::vector<int> order(d + 1);
    while (evals < max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
        const int best = order[0], worst = order[d], second = order[d - 1];
        if (std::isfinite(vals[best]) && std::isfinite(vals[second]) &&
            vals[second] - vals[best] < ftol * (1.0 + std::fabs(vals[best])))
            break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
        for (int i = 0; i <= d; ++i)
            if (i != worst) centroid += pts[i];
        centroid /= d;

        Eigen::VectorXd xr = centroid + alpha * (centroid - pts[worst]);
        const double fr = eval(xr);
        if (fr < vals[order[0]]) {
            Eigen::VectorXd xe = centroid + gamma * (centroid - pts[worst]);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
        } else if (fr < vals[second]) {
            pts[worst] = xr;
            vals[worst] = fr;
        } else {
            Eigen::VectorXd xc = centroid + rho * (pts[worst] - centroid);
            const double fc = eval(xc);
            if (fc < vals[worst]) {
                pts[worst] = xc;
                vals[worst] = fc;
            } else {
                for (int i = 0; i <= d; ++i) {
                    if (i == best) continue;
                    pts[i] = pts[best] + sigma * (pts[i] - pts[best]);
                    vals[i] = eval(pts[i]);
                }
            }
        }
    }

    const int best = static_cast<int>(
        std::min_element(vals.begin(), vals.end()) - vals.begin());
    return {pts[best], vals[best], evals};
}

// Golden-section minimization of a unimodal function on [a, b].
inline double golden_section(const std::function<double(double)>& f, double a, double b,
                             double xtol) {
    const double inv_phi = 0.6180339887498948482;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace failprob
