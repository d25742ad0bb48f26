#include <sstream>

#include "failprob/cloud.hpp"
#include "failprob/format.hpp"

namespace failprob {

std::string report_csv(const FailureReport& rep) {
    std::ostringstream out;
    out << "key,value\n";
    out << "mu," << g17(rep.mu) << "\n";
    out << "var_rn," << g17(rep.var_rn) << "\n";
    out << "q_star," << g17(rep.q_star) << "\n";
    out << "vorobev_deviation," << g17(rep.vorobev_dev) << "\n";
    out << "cloud_size," << rep.cloud_size << "\n";
    for (std::size_t m = 0; m < rep.moments.size(); ++m)
        out << "moment_" << (m + 1) << "," << g17(rep.moments[m]) << "\n";
    out << "ci_cx_alpha," << g17(rep.cx.alpha) << "\n";
    out << "ci_cx_beta," << g17(rep.cx.beta) << "\n";
    out << "ci_cx_lower," << g17(rep.cx.lower) << "\n";
    out << "ci_cx_upper," << g17(rep.cx.upper) << "\n";
    out << "ci_markov_lower," << g17(rep.markov.lower) << "\n";
    out << "ci_markov_upper," << g17(rep.markov.upper) << "\n";
    out << "\n";
    out << "alpha,delta_lo,gamma_lo,gamma_hi,delta_hi\n";
    for (std::size_t i = 0; i < rep.alphas.size(); ++i) {
        const QuantileBounds& b = rep.bounds[i];
        out << g17(rep.alphas[i]) << "," << g17(b.delta_lo) << "," << g17(b.gamma_lo) << ","
            << g17(b.gamma_hi) << "," << g17(b.delta_hi) << "\n";
    }
    return out.str();
}

std::string report_text(const FailureReport& rep) {
    std::ostringstream out;
    out << "failure probability estimate\n";
    out << "  mu                 " << g17(rep.mu) << "\n";
    out << "  Var[R_n]           " << g17(rep.var_rn) << "\n";
    out << "  q*                 " << g17(rep.q_star) << "\n";
    out << "  Vorob'ev deviation " << g17(rep.vorobev_dev) << "\n";
    out << "  cloud size         " << rep.cloud_size << "\n";
    out << "  credible interval (cx, alpha=" << g17(rep.cx.alpha)
        << ", beta=" << g17(rep.cx.beta) << "): [" << g17(rep.cx.lower) << ", "
        << g17(rep.cx.upper) << "]\n";
    out << "  credible interval (Markov, same levels): [" << g17(rep.markov.lower) << ", "
        << g17(rep.markov.upper) << "]\n";
    out << "  raw moments E[R_n^m]:";
    for (double m : rep.moments) out << " " << g17(m);
    out << "\n";
    out << "  quantile bounds (delta- <= gamma- <= gamma+ <= delta+):\n";
    for (std::size_t i = 0; i < rep.alphas.size(); ++i) {
        const QuantileBounds& b = rep.bounds[i];
        out << "    alpha=" << g17(rep.alphas[i]) << "  " << g17(b.delta_lo) << "  "
            << g17(b.gamma_lo) << "  " << g17(b.gamma_hi) << "  " << g17(b.delta_hi) << "\n";
    }
    return out.str();
}

}  // namespace failprob
