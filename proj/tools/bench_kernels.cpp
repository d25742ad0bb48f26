// Timing comparison of the serial reference kernels against the
// OpenMP-parallel ones: posterior batch prediction over a Monte Carlo cloud
// and candidate scoring for the sequential design loop.

#include <chrono>
#include <iostream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "failprob/cloud.hpp"
#include "failprob/gp.hpp"
#include "failprob/problems.hpp"
#include "failprob/sur.hpp"

using namespace failprob;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Setup {
    KrigingPosterior post;
    SampleCloud cloud;
    std::vector<long> candidates;
};

Setup make_setup(long cloud_size, int design_size, int candidate_count) {
    ProblemSpec prob = builtin_problem("bump1d");
    RngStream rs(7, 0x1457);
    Eigen::MatrixXd X = prob.model.from_unit_cube(lhs_maximin(design_size, 1, rs));
    Eigen::VectorXd y(design_size);
    for (int i = 0; i < design_size; ++i) y(i) = prob.oracle(X.row(i))(0);
    KrigingPosterior post = KrigingPosterior::fit({X, y}, FitConfig{});
    SampleCloud cloud = build_cloud(post, prob.thresholds[0], prob.model, cloud_size, 7);
    std::vector<long> candidates;
    for (int c = 0; c < candidate_count; ++c)
        candidates.push_back(c * (cloud_size / candidate_count));
    return {std::move(post), std::move(cloud), std::move(candidates)};
}

}  // namespace

int main(int argc, char** argv) {
    long cloud_size = 20000;
    int candidate_count = 128;
    int repeats = 3;
    if (argc > 1) cloud_size = std::atol(argv[1]);
    if (argc > 2) candidate_count = std::atoi(argv[2]);
    if (argc > 3) repeats = std::atoi(argv[3]);

    const Setup s = make_setup(cloud_size, 30, candidate_count);

#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::cout << "cloud " << cloud_size << ", design 30, candidates " << candidate_count
              << ", threads " << threads << "\n\n";
    std::cout << "kernel                      serial[ms]  parallel[ms]  speedup\n";

    {
        Eigen::VectorXd means, vars;
        double t_serial = 0.0, t_parallel = 0.0;
        for (int r = 0; r < repeats; ++r) {
            auto t0 = Clock::now();
            s.post.batch_predict(s.cloud.samples(), means, vars, false);
            t_serial += ms_since(t0);
            t0 = Clock::now();
            s.post.batch_predict(s.cloud.samples(), means, vars, true);
            t_parallel += ms_since(t0);
        }
        std::printf("batch_predict               %10.2f  %12.2f  %7.2fx\n", t_serial / repeats,
                    t_parallel / repeats, t_serial / t_parallel);
    }

    {
        const CandidateScorer scorer(s.post, 1.1, s.cloud, 12);
        std::vector<double> values(s.candidates.size());
        double t_serial = 0.0, t_parallel = 0.0;
        for (int r = 0; r < repeats; ++r) {
            auto t0 = Clock::now();
            for (std::size_t c = 0; c < s.candidates.size(); ++c)
                values[c] = scorer.score_row(s.candidates[c]).j_rn;
            t_serial += ms_since(t0);
            const std::vector<double> serial_values = values;

            t0 = Clock::now();
#pragma omp parallel for schedule(dynamic)
            for (std::size_t c = 0; c < s.candidates.size(); ++c)
                values[c] = scorer.score_row(s.candidates[c]).j_rn;
            t_parallel += ms_since(t0);

            for (std::size_t c = 0; c < s.candidates.size(); ++c)
                if (values[c] != serial_values[c]) {
                    std::cerr << "parallel scoring diverged from the serial reference\n";
                    return 1;
                }
        }
        std::printf("candidate_scoring (J_Rn)    %10.2f  %12.2f  %7.2fx\n", t_serial / repeats,
                    t_parallel / repeats, t_serial / t_parallel);
    }
    return 0;
}
