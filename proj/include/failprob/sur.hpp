#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "failprob/cloud.hpp"
#include "failprob/gp.hpp"
#include "failprob/input_model.hpp"
#include "failprob/quadrature.hpp"

namespace failprob {

enum class Criterion { J_Rn, J1, J2, J3, J4, J_Dev, J_Sn_ref };

std::string criterion_name(Criterion c);
Criterion criterion_from_name(const std::string& name);

enum class CandidateSource { cloud_subset, fresh_grid, continuous_search };

struct SurConfig {
    Criterion criterion = Criterion::J_Rn;
    int quadrature_order = 12;
    CandidateSource candidate_source = CandidateSource::cloud_subset;
    int budget = 0;          // evaluations added beyond the initial design
    double stop_width = 0.0; // credible-width stopping rule; 0 disables
    std::uint64_t seed = 0;

    long cloud_size = 10000;
    int candidate_count = 512;
    int candidate_refresh = 5;
    int refit_every = 1;
    FitConfig fit;

    std::vector<double> alphas = default_alpha_levels();
    double ci_alpha = 0.05;
    BetaMode beta_mode = BetaMode::fixed;
    double beta = 0.5;

    // J_Sn_ref guards (reference criterion, desk-scale only)
    int sn_ref_grid = 64;
    int sn_ref_grid_cap = 200;
    int sn_ref_paths = 256;

    void validate() const;
};

// All classification-style criteria evaluated with matched quadrature nodes
// and the shared cloud, plus the exact slack term for the J_Dev comparison.
struct CriterionBundle {
    double j_rn = 0.0;
    double j1 = 0.0;
    double j2 = 0.0;
    double j3 = 0.0;
    double j4 = 0.0;
    double j_dev = 0.0;
    double j_dev_gap = 0.0;  // quadrature average of (1/2 - q*)(mu - G(q*))
    bool degenerate = false; // candidate variance below the threshold
};

double criterion_component(const CriterionBundle& b, Criterion c);

// Binds one (posterior, threshold, cloud) triple and scores candidates
// against it. Precomputes the posterior moments and half-solves over the
// cloud once; score() is const and safe to call from parallel workers.
class CandidateScorer {
public:
    CandidateScorer(const KrigingPosterior& post, double threshold,
                    const SampleCloud& cloud, int quadrature_order);

    // Candidate given by a cloud row (the default SUR candidate source).
    CriterionBundle score_row(long row) const;
    // Arbitrary candidate point.
    CriterionBundle score(const Eigen::VectorXd& x) const;
    // Bundle of the current field; returned for degenerate candidates.
    const CriterionBundle& current() const { return current_; }
    double current_var_rn() const { return current_.j_rn; }
    bool row_degenerate(long row) const;

private:
    CriterionBundle score_site(double site_mean, double site_var,
                               const Eigen::VectorXd& cross) const;

    const KrigingPosterior& post_;
    double threshold_;
    const SampleCloud& cloud_;
    GaussHermite gh_;
    Eigen::VectorXd mean_, var_;  // posterior moments on the cloud
    Eigen::MatrixXd half_;        // n x N half-solves for cross covariances
    CriterionBundle current_;
};

// One-off evaluation (builds a scorer internally).
CriterionBundle evaluate_criteria(const KrigingPosterior& post, double threshold,
                                  const SampleCloud& cloud, const Eigen::VectorXd& x,
                                  int quadrature_order);

// Reference criterion: expected future Var[S_{n+1}] by path sampling on a
// small weighted grid. Refuses grids above grid_cap.
double criterion_jsn_ref(const KrigingPosterior& post, double threshold,
                         const Eigen::MatrixXd& grid, const Eigen::VectorXd& weights,
                         const Eigen::VectorXd& x, int quadrature_order, int paths,
                         std::uint64_t seed, int grid_cap = 200);

// Current empirical Var[S_n] on the grid (degenerate-candidate value).
double var_sn_grid(const KrigingPosterior& post, double threshold,
                   const Eigen::MatrixXd& grid, const Eigen::VectorXd& weights, int paths,
                   std::uint64_t seed);

// min(1, sum_j p_{n,j}(x)): union bound over per-response membership
// probabilities.
double union_bound_prob(const std::vector<KrigingPosterior>& posteriors,
                        const std::vector<double>& thresholds, const Eigen::VectorXd& x);

Eigen::VectorXd union_bound_probs(const std::vector<Eigen::VectorXd>& response_probs);

using Oracle = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

enum class SurStatus { completed, width_reached, saturated, oracle_failed };

struct HistoryRecord {
    int iter = 0;
    Eigen::VectorXd point;
    Eigen::VectorXd responses;
    double criterion_value = 0.0;
    double mu = 0.0;
    double var_rn = 0.0;
    double ci_lower = 0.0;
    double ci_upper = 1.0;
    double q_star = 0.0;
    double d_dev = 0.0;
    // Per-response plug-in means; diagnostic, not part of the CSV schema.
    Eigen::VectorXd response_mu;
};

struct SurState {
    std::vector<KrigingPosterior> posteriors;
    std::vector<double> thresholds;
    Eigen::MatrixXd cloud_samples;
    std::vector<Eigen::VectorXd> response_probs;
    Eigen::VectorXd combined_probs;  // p+ over the cloud
    Eigen::MatrixXd candidate_points;
    std::vector<long> candidate_rows;  // cloud rows backing candidate_points; empty if off-cloud
    std::vector<HistoryRecord> history;
    FailureReport initial_report;
    FailureReport final_report;
    SurStatus status = SurStatus::completed;
    std::string message;
    long oracle_calls = 0;

    int responses() const { return static_cast<int>(posteriors.size()); }
    SampleCloud response_cloud(int r) const;
    SampleCloud combined_cloud() const;
    // Refreshes per-response and union-bound probabilities from the current
    // posteriors.
    void refresh_probs(bool parallel = true);
};

struct SelectResult {
    long candidate_index = -1;  // index into candidate_rows, -1 for off-cloud
    Eigen::VectorXd point;
    double value = 0.0;
    int response = 0;  // which response's criterion was minimized
};

// argmin of the configured criterion over the candidate set; ties break to
// the smallest index. For several responses the one with the largest Var[R_n]
// is targeted. Empty result means every candidate is degenerate.
std::optional<SelectResult> select_next(const SurState& state, const SurConfig& config);

// Criterion values at a point, evaluated on the largest-variance response.
double criterion_j_rn(const SurState& state, const Eigen::VectorXd& x, int quadrature_order);
double criterion_j_k(const SurState& state, const Eigen::VectorXd& x, int k,
                     int quadrature_order);
double criterion_j_dev(const SurState& state, const Eigen::VectorXd& x, int quadrature_order);

// Full enrichment loop: select, evaluate, append, refit, refresh, report.
// Deterministic for a fixed seed and configuration.
SurState run_loop(const Eigen::MatrixXd& initial_points, const Oracle& oracle,
                  const std::vector<double>& thresholds, const InputModel& model,
                  const SurConfig& config);

// History CSV: iter, point coordinates, responses, criterion, estimate block.
std::string history_csv(const SurState& state);

}  // namespace failprob
