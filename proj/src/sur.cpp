#include "failprob/sur.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "failprob/errors.hpp"
#include "failprob/format.hpp"
#include "failprob/math.hpp"
#include "failprob/optim.hpp"

namespace failprob {

namespace {

// |t| beyond this: Phi(t) is 0 or 1 at double precision.
constexpr double kTailCut = 8.3;
constexpr double kSqrt2 = 1.4142135623730950488;

struct FieldStats {
    double mu = 0.0;
    double var = 0.0;
    double tau_mean = 0.0;
    double nu_mean = 0.0;
    double sqrt_tau_mean = 0.0;
    double sqrt_nu_mean = 0.0;
    double q_star = 0.0;
    double d_dev = 0.0;
    double dev_gap = 0.0;
};

// Estimator sums over a grouped field: ascending distinct values with
// multiplicities. Mirrors the SampleCloud arithmetic exactly.
FieldStats stats_from_groups(const std::vector<double>& vals, const std::vector<long>& cnts,
                             long N) {
    const double Nd = static_cast<double>(N);
    const std::size_t G = vals.size();

    FieldStats st;
    double sum_p = 0.0, e_min_num = 0.0, tau = 0.0, nu = 0.0, stau = 0.0, snu = 0.0;
    long consumed = 0;
    for (std::size_t i = 0; i < G; ++i) {
        const double v = vals[i];
        const double l = static_cast<double>(cnts[i]);
        const long larger = N - consumed - cnts[i];
        sum_p += l * v;
        e_min_num += l * v * (l + 2.0 * static_cast<double>(larger));
        const double comp = 1.0 - v;
        tau += l * std::min(v, comp);
        nu += l * v * comp;
        stau += l * std::sqrt(std::min(v, comp));
        snu += l * std::sqrt(v * comp);
        consumed += cnts[i];
    }
    st.mu = sum_p / Nd;
    st.var = std::max(0.0, e_min_num / (Nd * Nd) - st.mu * st.mu);
    st.tau_mean = tau / Nd;
    st.nu_mean = nu / Nd;
    st.sqrt_tau_mean = stau / Nd;
    st.sqrt_nu_mean = snu / Nd;

    // q*: smallest level in {0} union values with survival <= mu.
    double q = 0.0, surv_at_q = 0.0;
    const long zeros = (G > 0 && vals[0] == 0.0) ? cnts[0] : 0;
    if (static_cast<double>(N - zeros) / Nd <= st.mu) {
        q = 0.0;
        surv_at_q = static_cast<double>(N - zeros) / Nd;
    } else {
        consumed = 0;
        for (std::size_t i = 0; i < G; ++i) {
            consumed += cnts[i];
            const double surv = static_cast<double>(N - consumed) / Nd;
            if (surv <= st.mu) {
                q = vals[i];
                surv_at_q = surv;
                break;
            }
        }
    }
    st.q_star = q;

    double dev = 0.0;
    for (std::size_t i = 0; i < G; ++i) {
        const double v = vals[i];
        const double l = static_cast<double>(cnts[i]);
        dev += (v <= q) ? l * v : l * (1.0 - v);
    }
    st.d_dev = dev / Nd;
    st.dev_gap = std::max(0.0, (0.5 - q) * (st.mu - surv_at_q));
    return st;
}

// Groups an ascending middle block with saturated blocks at 0 and 1.
void build_groups(const std::vector<double>& mid_sorted, long n_zero, long n_one,
                  std::vector<double>& vals, std::vector<long>& cnts) {
    vals.clear();
    cnts.clear();
    if (n_zero > 0) {
        vals.push_back(0.0);
        cnts.push_back(n_zero);
    }
    const std::size_t m = mid_sorted.size();
    for (std::size_t i = 0; i < m;) {
        std::size_t j = i;
        while (j < m && mid_sorted[j] == mid_sorted[i]) ++j;
        if (!vals.empty() && vals.back() == mid_sorted[i]) {
            cnts.back() += static_cast<long>(j - i);
        } else {
            vals.push_back(mid_sorted[i]);
            cnts.push_back(static_cast<long>(j - i));
        }
        i = j;
    }
    if (n_one > 0) {
        if (!vals.empty() && vals.back() == 1.0)
            cnts.back() += n_one;
        else {
            vals.push_back(1.0);
            cnts.push_back(n_one);
        }
    }
}

void accumulate(CriterionBundle& b, const FieldStats& st, double weight) {
    b.j_rn += weight * st.var;
    b.j1 += weight * st.sqrt_tau_mean * st.sqrt_tau_mean;
    b.j2 += weight * st.sqrt_nu_mean * st.sqrt_nu_mean;
    b.j3 += weight * st.tau_mean;
    b.j4 += weight * st.nu_mean;
    b.j_dev += weight * st.d_dev;
    b.j_dev_gap += weight * st.dev_gap;
}

Design appended(const Design& base, const Eigen::VectorXd& x, double y) {
    Design d;
    d.points.resize(base.points.rows() + 1, base.points.cols());
    d.points.topRows(base.points.rows()) = base.points;
    d.points.bottomRows(1) = x.transpose();
    d.responses.resize(base.responses.size() + 1);
    d.responses.head(base.responses.size()) = base.responses;
    d.responses(base.responses.size()) = y;
    return d;
}

double sample_variance(const Eigen::VectorXd& x) {
    const double n = static_cast<double>(x.size());
    if (x.size() < 2) return 0.0;
    const double mean = x.mean();
    return (x.array() - mean).square().sum() / (n - 1.0);
}

}  // namespace

std::string criterion_name(Criterion c) {
    switch (c) {
        case Criterion::J_Rn: return "J_Rn";
        case Criterion::J1: return "J1";
        case Criterion::J2: return "J2";
        case Criterion::J3: return "J3";
        case Criterion::J4: return "J4";
        case Criterion::J_Dev: return "J_Dev";
        case Criterion::J_Sn_ref: return "J_Sn_ref";
    }
    return "unknown";
}

Criterion criterion_from_name(const std::string& name) {
    if (name == "J_Rn" || name == "jrn") return Criterion::J_Rn;
    if (name == "J1") return Criterion::J1;
    if (name == "J2") return Criterion::J2;
    if (name == "J3") return Criterion::J3;
    if (name == "J4") return Criterion::J4;
    if (name == "J_Dev" || name == "jdev") return Criterion::J_Dev;
    if (name == "J_Sn_ref" || name == "jsn") return Criterion::J_Sn_ref;
    throw ConfigError("unknown criterion: " + name);
}

double criterion_component(const CriterionBundle& b, Criterion c) {
    switch (c) {
        case Criterion::J_Rn: return b.j_rn;
        case Criterion::J1: return b.j1;
        case Criterion::J2: return b.j2;
        case Criterion::J3: return b.j3;
        case Criterion::J4: return b.j4;
        case Criterion::J_Dev: return b.j_dev;
        case Criterion::J_Sn_ref: break;
    }
    throw std::invalid_argument("criterion has no bundle component");
}

void SurConfig::validate() const {
    if (quadrature_order < 2) throw ConfigError("quadrature order must be >= 2");
    if (budget < 0) throw ConfigError("budget must be >= 0");
    if (cloud_size < 1) throw ConfigError("cloud size must be >= 1");
    if (candidate_count < 1) throw ConfigError("candidate count must be >= 1");
    if (candidate_refresh < 1) throw ConfigError("candidate refresh must be >= 1");
    if (refit_every < 1) throw ConfigError("refit cadence must be >= 1");
    if (!(ci_alpha > 0.0 && ci_alpha < 1.0)) throw ConfigError("ci alpha must lie in (0, 1)");
    if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0, 1)");
    if (sn_ref_grid > sn_ref_grid_cap)
        throw ConfigError("J_Sn_ref grid exceeds the configured cap");
}

// ---------------------------------------------------------------------------
// CandidateScorer

CandidateScorer::CandidateScorer(const KrigingPosterior& post, double threshold,
                                 const SampleCloud& cloud, int quadrature_order)
    : post_(post), threshold_(threshold), cloud_(cloud), gh_(gauss_hermite(quadrature_order)) {
    if (cloud.samples().size() == 0)
        throw std::invalid_argument("candidate scoring needs cloud coordinates");
    post.batch_predict(cloud.samples(), mean_, var_);
    half_ = post.half_solves(cloud.samples());
    const FieldStats st =
        stats_from_groups(cloud.group_values(), cloud.group_multiplicities(), cloud.size());
    accumulate(current_, st, 1.0);
    current_.degenerate = true;
}

bool CandidateScorer::row_degenerate(long row) const {
    return var_(row) <= post_.degenerate_var_threshold() ||
           post_.near_design_point(cloud_.samples().row(row));
}

CriterionBundle CandidateScorer::score_row(long row) const {
    if (row_degenerate(row)) return current_;
    const Eigen::VectorXd x = cloud_.samples().row(row);

    const long N = cloud_.size();
    Eigen::VectorXd cross(N);
    const KernelSpec& spec = post_.kernel();
    for (long i = 0; i < N; ++i)
        cross(i) = spec.variance * correlation_at(spec.family,
                                                  scaled_distance(spec, cloud_.samples().row(i),
                                                                  x));
    cross.noalias() -= half_.transpose() * half_.col(row);
    return score_site(mean_(row), var_(row), cross);
}

CriterionBundle CandidateScorer::score(const Eigen::VectorXd& x) const {
    if (post_.near_design_point(x)) return current_;
    const auto [site_mean, site_var] = post_.predict(x);
    if (site_var <= post_.degenerate_var_threshold()) return current_;

    const long N = cloud_.size();
    const Eigen::MatrixXd half_site = post_.half_solves(x.transpose());
    Eigen::VectorXd cross(N);
    const KernelSpec& spec = post_.kernel();
    for (long i = 0; i < N; ++i)
        cross(i) = spec.variance * correlation_at(spec.family,
                                                  scaled_distance(spec, cloud_.samples().row(i),
                                                                  x));
    cross.noalias() -= half_.transpose() * half_site.col(0);
    return score_site(site_mean, site_var, cross);
}

CriterionBundle CandidateScorer::score_site(double site_mean, double site_var,
                                            const Eigen::VectorXd& cross) const {
    (void)site_mean;
    const long N = cloud_.size();
    const double denom = post_.refit_denominator(site_var);
    const double sd_site = std::sqrt(site_var);

    // t_i(dz) = slope-intercept per point; "hard" points have a collapsed
    // updated variance and become deterministic indicators.
    Eigen::VectorXd icept(N), slope(N);
    std::vector<std::pair<double, double>> hard;  // (mean - T, weight)
    long soft = 0;
    for (long i = 0; i < N; ++i) {
        const double w = cross(i) / denom;
        const double v2 = std::max(0.0, var_(i) - cross(i) * w);
        const double a = mean_(i) - threshold_;
        if (v2 <= 1e-300) {
            hard.emplace_back(a, w);
        } else {
            const double sd = std::sqrt(v2);
            icept(soft) = a / sd;
            slope(soft) = w / sd;
            ++soft;
        }
    }

    CriterionBundle b;
    Eigen::VectorXd t(soft);
    std::vector<double> mid;
    std::vector<double> vals;
    std::vector<long> cnts;
    mid.reserve(soft);
    for (int q = 0; q < gh_.nodes.size(); ++q) {
        const double dz = kSqrt2 * gh_.nodes(q) * sd_site;
        t = icept.head(soft) + dz * slope.head(soft);
        long n_zero = 0, n_one = 0;
        mid.clear();
        for (long k = 0; k < soft; ++k) {
            const double tk = t(k);
            if (tk < -kTailCut)
                ++n_zero;
            else if (tk > kTailCut)
                ++n_one;
            else
                mid.push_back(tk);
        }
        for (const auto& [a, w] : hard) {
            if (a + w * dz > 0.0)
                ++n_one;
            else
                ++n_zero;
        }
        std::sort(mid.begin(), mid.end());
        for (double& tk : mid) tk = norm_cdf(tk);
        build_groups(mid, n_zero, n_one, vals, cnts);
        accumulate(b, stats_from_groups(vals, cnts, N), gh_.normalized_weights(q));
    }
    return b;
}

CriterionBundle evaluate_criteria(const KrigingPosterior& post, double threshold,
                                  const SampleCloud& cloud, const Eigen::VectorXd& x,
                                  int quadrature_order) {
    return CandidateScorer(post, threshold, cloud, quadrature_order).score(x);
}

// ---------------------------------------------------------------------------
// Reference criterion

double var_sn_grid(const KrigingPosterior& post, double threshold,
                   const Eigen::MatrixXd& grid, const Eigen::VectorXd& weights, int paths,
                   std::uint64_t seed) {
    return sample_variance(sample_sn_grid(post, threshold, grid, weights, paths, seed));
}

double criterion_jsn_ref(const KrigingPosterior& post, double threshold,
                         const Eigen::MatrixXd& grid, const Eigen::VectorXd& weights,
                         const Eigen::VectorXd& x, int quadrature_order, int paths,
                         std::uint64_t seed, int grid_cap) {
    if (grid.rows() > grid_cap)
        throw std::invalid_argument("J_Sn_ref grid exceeds the configured cap");
    const auto [site_mean, site_var] = post.predict(x);
    if (site_var <= post.degenerate_var_threshold() || post.near_design_point(x))
        return var_sn_grid(post, threshold, grid, weights, paths, seed);

    const GaussHermite gh = gauss_hermite(quadrature_order);
    const double sd = std::sqrt(site_var);
    double value = 0.0;
    for (int q = 0; q < gh.nodes.size(); ++q) {
        const double z = site_mean + kSqrt2 * gh.nodes(q) * sd;
        const KrigingPosterior updated = post.with_observation(x, z);
        value += gh.normalized_weights(q) *
                 var_sn_grid(updated, threshold, grid, weights, paths,
                             seed + 7919u * static_cast<std::uint64_t>(q + 1));
    }
    return value;
}

// ---------------------------------------------------------------------------
// Union bound

double union_bound_prob(const std::vector<KrigingPosterior>& posteriors,
                        const std::vector<double>& thresholds, const Eigen::VectorXd& x) {
    if (posteriors.empty() || posteriors.size() != thresholds.size())
        throw std::invalid_argument("posteriors and thresholds must match and be non-empty");
    double sum = 0.0;
    for (std::size_t r = 0; r < posteriors.size(); ++r)
        sum += membership_prob(posteriors[r], thresholds[r], x);
    return std::min(1.0, sum);
}

Eigen::VectorXd union_bound_probs(const std::vector<Eigen::VectorXd>& response_probs) {
    if (response_probs.empty()) throw std::invalid_argument("no response probabilities");
    Eigen::VectorXd out = response_probs[0];
    for (std::size_t r = 1; r < response_probs.size(); ++r) out += response_probs[r];
    return out.cwiseMin(1.0);
}

// ---------------------------------------------------------------------------
// State

SampleCloud SurState::response_cloud(int r) const {
    return SampleCloud(cloud_samples, response_probs.at(r));
}

SampleCloud SurState::combined_cloud() const {
    return SampleCloud(cloud_samples, combined_probs);
}

void SurState::refresh_probs(bool parallel) {
    response_probs.resize(posteriors.size());
    for (std::size_t r = 0; r < posteriors.size(); ++r) {
        Eigen::VectorXd means, vars;
        posteriors[r].batch_predict(cloud_samples, means, vars, parallel);
        response_probs[r] = membership_probs(means, vars, thresholds[r],
                                             posteriors[r].degenerate_var_threshold());
    }
    combined_probs = union_bound_probs(response_probs);
}

namespace {

int target_response(const SurState& state) {
    int best = 0;
    double best_var = -1.0;
    for (int r = 0; r < state.responses(); ++r) {
        const double v = var_rn(state.response_cloud(r));
        if (v > best_var) {
            best_var = v;
            best = r;
        }
    }
    return best;
}

}  // namespace

std::optional<SelectResult> select_next(const SurState& state, const SurConfig& config) {
    if (state.candidate_points.rows() == 0)
        throw std::invalid_argument("candidate set is empty");
    const int r = target_response(state);
    const SampleCloud cloud = state.response_cloud(r);
    const long C = state.candidate_points.rows();

    std::vector<double> values(C);
    std::vector<char> degenerate(C);

    if (config.criterion == Criterion::J_Sn_ref) {
        const long G = std::min<long>(config.sn_ref_grid, state.cloud_samples.rows());
        const Eigen::MatrixXd grid = state.cloud_samples.topRows(G);
        const Eigen::VectorXd weights;  // uniform
        const std::uint64_t seed =
            config.seed ^ (0x5eedULL + 131 * static_cast<std::uint64_t>(state.history.size()));
        const KrigingPosterior& post = state.posteriors[r];
#pragma omp parallel for schedule(dynamic)
        for (long c = 0; c < C; ++c) {
            const Eigen::VectorXd x = state.candidate_points.row(c);
            const auto [m, v] = post.predict(x);
            (void)m;
            degenerate[c] = v <= post.degenerate_var_threshold() || post.near_design_point(x);
            values[c] =
                criterion_jsn_ref(post, state.thresholds[r], grid, weights, x,
                                  config.quadrature_order, config.sn_ref_paths, seed,
                                  config.sn_ref_grid_cap);
        }
    } else {
        const CandidateScorer scorer(state.posteriors[r], state.thresholds[r], cloud,
                                     config.quadrature_order);
#pragma omp parallel for schedule(dynamic)
        for (long c = 0; c < C; ++c) {
            const long row = state.candidate_rows.empty() ? -1 : state.candidate_rows[c];
            const CriterionBundle b = (row >= 0)
                                          ? scorer.score_row(row)
                                          : scorer.score(state.candidate_points.row(c));
            values[c] = criterion_component(b, config.criterion);
            degenerate[c] = b.degenerate;
        }
    }

    // Degenerate candidates (sites at or indistinguishable from design
    // points) are never selected; if nothing else remains, the design is
    // saturated.
    long best = -1;
    for (long c = 0; c < C; ++c) {
        if (degenerate[c]) continue;
        if (best < 0 || values[c] < values[best]) best = c;
    }
    if (best < 0) return std::nullopt;

    SelectResult sel;
    sel.candidate_index = best;
    sel.point = state.candidate_points.row(best);
    sel.value = values[best];
    sel.response = r;

    if (config.candidate_source == CandidateSource::continuous_search &&
        config.criterion != Criterion::J_Sn_ref) {
        const CandidateScorer scorer(state.posteriors[r], state.thresholds[r], cloud,
                                     config.quadrature_order);
        auto objective = [&](const Eigen::VectorXd& x) {
            return criterion_component(scorer.score(x), config.criterion);
        };
        Eigen::VectorXd extent(state.cloud_samples.cols());
        for (Eigen::Index k = 0; k < extent.size(); ++k)
            extent(k) = state.cloud_samples.col(k).maxCoeff() -
                        state.cloud_samples.col(k).minCoeff();
        const double step = 0.05 * extent.maxCoeff();
        const SimplexResult res = nelder_mead(objective, sel.point, step, 80);
        if (res.value < sel.value) {
            sel.candidate_index = -1;
            sel.point = res.x;
            sel.value = res.value;
        }
    }
    return sel;
}

// ---------------------------------------------------------------------------
// Criterion wrappers on the state (largest-variance response)

double criterion_j_rn(const SurState& state, const Eigen::VectorXd& x, int quadrature_order) {
    const int r = target_response(state);
    return evaluate_criteria(state.posteriors[r], state.thresholds[r], state.response_cloud(r),
                             x, quadrature_order)
        .j_rn;
}

double criterion_j_k(const SurState& state, const Eigen::VectorXd& x, int k,
                     int quadrature_order) {
    if (k < 1 || k > 4) throw std::invalid_argument("classification criterion index in 1..4");
    const int r = target_response(state);
    const CriterionBundle b = evaluate_criteria(state.posteriors[r], state.thresholds[r],
                                                state.response_cloud(r), x, quadrature_order);
    switch (k) {
        case 1: return b.j1;
        case 2: return b.j2;
        case 3: return b.j3;
        default: return b.j4;
    }
}

double criterion_j_dev(const SurState& state, const Eigen::VectorXd& x, int quadrature_order) {
    const int r = target_response(state);
    return evaluate_criteria(state.posteriors[r], state.thresholds[r], state.response_cloud(r),
                             x, quadrature_order)
        .j_dev;
}

// ---------------------------------------------------------------------------
// Enrichment loop

namespace {

void refresh_candidates(SurState& state, const SurConfig& config, long epoch,
                        const InputModel& model) {
    const long N = state.cloud_samples.rows();
    const long C = std::min<long>(config.candidate_count, N);
    switch (config.candidate_source) {
        case CandidateSource::fresh_grid: {
            RngStream rs(config.seed, 0xF300 + static_cast<std::uint64_t>(epoch));
            state.candidate_points = model.sample(config.candidate_count, rs);
            state.candidate_rows.clear();
            break;
        }
        case CandidateSource::cloud_subset:
        case CandidateSource::continuous_search: {
            RngStream rs(config.seed, 0xCA00 + static_cast<std::uint64_t>(epoch));
            std::vector<long> rows(N);
            for (long i = 0; i < N; ++i) rows[i] = i;
            for (long i = 0; i < C; ++i) {
                const long j = i + static_cast<long>(rs.below(N - i));
                std::swap(rows[i], rows[j]);
            }
            rows.resize(C);
            std::sort(rows.begin(), rows.end());
            state.candidate_rows = rows;
            state.candidate_points.resize(C, state.cloud_samples.cols());
            for (long i = 0; i < C; ++i)
                state.candidate_points.row(i) = state.cloud_samples.row(rows[i]);
            break;
        }
    }
}

FailureReport state_report(const SurState& state, const SurConfig& config) {
    return make_report(state.combined_cloud(), config.alphas, config.ci_alpha,
                       config.beta_mode, config.beta);
}

}  // namespace

SurState run_loop(const Eigen::MatrixXd& initial_points, const Oracle& oracle,
                  const std::vector<double>& thresholds, const InputModel& model,
                  const SurConfig& config) {
    config.validate();
    model.validate();
    if (thresholds.empty()) throw std::invalid_argument("at least one response threshold");
    if (initial_points.rows() < 2)
        throw std::invalid_argument("initial design needs at least two points");

    const int R = static_cast<int>(thresholds.size());
    const long n0 = initial_points.rows();

    SurState state;
    state.thresholds = thresholds;

    Eigen::MatrixXd Y(n0, R);
    for (long i = 0; i < n0; ++i) {
        const Eigen::VectorXd y = oracle(initial_points.row(i));
        if (y.size() != R) throw OracleError("oracle returned a wrong response count");
        Y.row(i) = y.transpose();
        ++state.oracle_calls;
    }

    for (int r = 0; r < R; ++r) {
        Design d;
        d.points = initial_points;
        d.responses = Y.col(r);
        state.posteriors.push_back(KrigingPosterior::fit(d, config.fit));
    }

    state.cloud_samples = model.sample(config.cloud_size, config.seed, 0xC10D);
    state.refresh_probs();
    state.initial_report = state_report(state, config);
    state.final_report = state.initial_report;

    for (int it = 1; it <= config.budget; ++it) {
        if ((it - 1) % config.candidate_refresh == 0)
            refresh_candidates(state, config, (it - 1) / config.candidate_refresh, model);

        const std::optional<SelectResult> sel = select_next(state, config);
        if (!sel) {
            state.status = SurStatus::saturated;
            state.message = "all candidates are degenerate; design saturated";
            return state;
        }

        Eigen::VectorXd y;
        try {
            y = oracle(sel->point);
            if (y.size() != R) throw OracleError("oracle returned a wrong response count");
        } catch (const std::exception& e) {
            state.status = SurStatus::oracle_failed;
            state.message = std::string("oracle failure at iteration ") +
                            std::to_string(it) + ": " + e.what();
            return state;
        }
        ++state.oracle_calls;

        const bool refit = (it % config.refit_every) == 0;
        for (int r = 0; r < R; ++r) {
            if (refit) {
                const Design d = appended(state.posteriors[r].design(), sel->point, y(r));
                state.posteriors[r] = KrigingPosterior::fit(d, config.fit);
            } else {
                state.posteriors[r] = state.posteriors[r].with_observation(sel->point, y(r));
            }
        }
        state.refresh_probs();

        const FailureReport rep = state_report(state, config);
        HistoryRecord rec;
        rec.iter = it;
        rec.point = sel->point;
        rec.responses = y;
        rec.criterion_value = sel->value;
        rec.mu = rep.mu;
        rec.var_rn = rep.var_rn;
        rec.ci_lower = rep.cx.lower;
        rec.ci_upper = rep.cx.upper;
        rec.q_star = rep.q_star;
        rec.d_dev = rep.vorobev_dev;
        rec.response_mu.resize(R);
        for (int r = 0; r < R; ++r) rec.response_mu(r) = state.response_probs[r].mean();
        state.history.push_back(rec);
        state.final_report = rep;

        if (config.stop_width > 0.0 && rep.cx.upper - rep.cx.lower < config.stop_width) {
            state.status = SurStatus::width_reached;
            return state;
        }
    }
    state.status = SurStatus::completed;
    return state;
}

std::string history_csv(const SurState& state) {
    std::ostringstream out;
    const int d = static_cast<int>(state.cloud_samples.cols());
    const int R = state.responses();
    out << "iter";
    for (int k = 0; k < d; ++k) out << ",x" << k;
    for (int r = 0; r < R; ++r) out << ",y" << r;
    out << ",criterion,mu,var_rn,ci_lower,ci_upper,q_star,d_dev\n";
    for (const HistoryRecord& rec : state.history) {
        out << rec.iter;
        for (int k = 0; k < d; ++k) out << "," << g17(rec.point(k));
        for (int r = 0; r < R; ++r) out << "," << g17(rec.responses(r));
        out << "," << g17(rec.criterion_value) << "," << g17(rec.mu) << ","
            << g17(rec.var_rn) << "," << g17(rec.ci_lower) << "," << g17(rec.ci_upper) << ","
            << g17(rec.q_star) << "," << g17(rec.d_dev) << "\n";
    }
    return out.str();
}

}  // namespace failprob
