#include "failprob/problems.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "failprob/errors.hpp"
#include "failprob/format.hpp"
#include "failprob/math.hpp"

namespace failprob {

namespace {

double bump1d(double x) {
    const double a = 0.4 * x - 0.3;
    return a * a + std::exp(-11.534 * std::pow(std::fabs(x), 1.95)) +
           std::exp(-5.0 * (x - 0.8) * (x - 0.8));
}

constexpr double kBump1dThreshold = 1.1;
constexpr double kBump1dMean = -0.5;
constexpr double kBump1dSd = 0.4;

// Standardized coordinates of the four-factor problem.
void layers4d_responses(const Eigen::VectorXd& x, double* out) {
    const double z1 = (x(0) - 3.3477) / 0.19108;
    const double z2 = (x(1) - 174.31) / 1.6831;
    const double z3 = (x(2) - 0.73389) / 0.03193;
    const double z4 = (x(3) - 6.1457) / 0.2678;
    out[0] = z1 + 0.5 * z2 * z2 + 0.25 * z3;
    out[1] = z2 + 0.5 * z3 * z3 + 0.25 * z4;
    out[2] = z3 + 0.5 * z4 * z4 + 0.25 * z1;
}

// Response thresholds and union failure probability frozen from a
// one-million-sample calibration run (failprob oracle --calibrate-layers4d
// reproduces them).
constexpr double kLayers4dThresholds[3] = {3.9554098873543189, 4.1254404274055245,
                                           4.3977293828083885};
constexpr double kLayers4dReferenceP = 0.022755;
constexpr long kLayers4dReferenceSamples = 1000000;

}  // namespace

ProblemSpec builtin_problem(const std::string& name) {
    if (name == "bump1d") {
        ProblemSpec p;
        p.name = name;
        p.model.marginals = {Marginal::normal(kBump1dMean, kBump1dSd)};
        p.thresholds = {kBump1dThreshold};
        p.oracle = [](const Eigen::VectorXd& x) {
            Eigen::VectorXd y(1);
            y(0) = bump1d(x(0));
            return y;
        };
        return p;
    }
    if (name == "layers4d") {
        ProblemSpec p;
        p.name = name;
        p.model.marginals = {Marginal::normal(3.3477, 0.19108), Marginal::normal(174.31, 1.6831),
                             Marginal::normal(0.73389, 0.03193), Marginal::normal(6.1457, 0.2678)};
        p.thresholds = {kLayers4dThresholds[0], kLayers4dThresholds[1], kLayers4dThresholds[2]};
        p.oracle = [](const Eigen::VectorXd& x) {
            Eigen::VectorXd y(3);
            layers4d_responses(x, y.data());
            return y;
        };
        return p;
    }
    throw ConfigError("unknown built-in problem: " + name);
}

bool is_builtin_problem(const std::string& name) {
    return name == "bump1d" || name == "layers4d";
}

std::vector<std::string> builtin_problem_names() { return {"bump1d", "layers4d"}; }

double bump1d_reference_p() {
    // Locate the boundary of {g > T} by scan plus bisection, then sum the
    // exact Gaussian measure of the excursion intervals.
    const double lo = kBump1dMean - 10.0 * kBump1dSd;
    const double hi = kBump1dMean + 10.0 * kBump1dSd;
    const int cells = 1 << 14;
    auto h = [](double x) { return bump1d(x) - kBump1dThreshold; };

    auto bisect = [&](double a, double b) {
        for (int i = 0; i < 200; ++i) {
            const double m = 0.5 * (a + b);
            if (m == a || m == b) break;
            if ((h(a) > 0.0) == (h(m) > 0.0))
                a = m;
            else
                b = m;
        }
        return 0.5 * (a + b);
    };

    double p = 0.0;
    double x_prev = lo;
    bool inside = h(lo) > 0.0;
    double start = inside ? lo : 0.0;
    for (int c = 1; c <= cells; ++c) {
        const double x = lo + (hi - lo) * c / cells;
        const bool now = h(x) > 0.0;
        if (now != inside) {
            const double b = bisect(x_prev, x);
            if (now)
                start = b;
            else
                p += norm_cdf((b - kBump1dMean) / kBump1dSd) -
                     norm_cdf((start - kBump1dMean) / kBump1dSd);
            inside = now;
        }
        x_prev = x;
    }
    if (inside)
        p += norm_cdf((hi - kBump1dMean) / kBump1dSd) -
             norm_cdf((start - kBump1dMean) / kBump1dSd);
    return p;
}

double layers4d_reference_p() { return kLayers4dReferenceP; }
long layers4d_reference_samples() { return kLayers4dReferenceSamples; }

// ---------------------------------------------------------------------------
// External oracle

ExternalOracle::ExternalOracle(std::string command, int responses, double timeout_seconds)
    : command_(std::move(command)), responses_(responses), timeout_(timeout_seconds) {
    if (responses_ < 1) throw ConfigError("external oracle needs at least one response");
    spawn();
}

ExternalOracle::~ExternalOracle() { shutdown(); }

void ExternalOracle::spawn() {
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0)
        throw OracleError("cannot create pipes for the external oracle");
    const pid_t pid = fork();
    if (pid < 0) throw OracleError("cannot fork the external oracle");
    if (pid == 0) {
        dup2(to_child[0], STDIN_FILENO);
        dup2(from_child[1], STDOUT_FILENO);
        close(to_child[0]);
        close(to_child[1]);
        close(from_child[0]);
        close(from_child[1]);
        execl("/bin/sh", "sh", "-c", command_.c_str(), (char*)nullptr);
        _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    to_child_ = to_child[1];
    from_child_ = from_child[0];
    pid_ = pid;
}

void ExternalOracle::shutdown() {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    if (pid_ > 0) {
        kill(static_cast<pid_t>(pid_), SIGTERM);
        int status = 0;
        waitpid(static_cast<pid_t>(pid_), &status, 0);
    }
    to_child_ = from_child_ = -1;
    pid_ = -1;
}

std::string ExternalOracle::read_line() {
    for (;;) {
        const std::size_t nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return line;
        }
        struct pollfd pfd{from_child_, POLLIN, 0};
        const int rc = poll(&pfd, 1, static_cast<int>(timeout_ * 1000.0));
        if (rc == 0) throw OracleError("external oracle timed out");
        if (rc < 0) throw OracleError("poll on the external oracle failed");
        char chunk[4096];
        const ssize_t got = read(from_child_, chunk, sizeof(chunk));
        if (got <= 0) throw OracleError("external oracle closed its output");
        buffer_.append(chunk, static_cast<std::size_t>(got));
    }
}

Eigen::VectorXd ExternalOracle::operator()(const Eigen::VectorXd& x) {
    std::ostringstream line;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        if (k) line << " ";
        line << g17(x(k));
    }
    line << "\n";
    const std::string msg = line.str();
    if (write(to_child_, msg.data(), msg.size()) != static_cast<ssize_t>(msg.size()))
        throw OracleError("cannot write to the external oracle");

    std::istringstream in(read_line());
    Eigen::VectorXd y(responses_);
    for (int r = 0; r < responses_; ++r)
        if (!(in >> y(r))) throw OracleError("external oracle returned a malformed line");
    return y;
}

ProblemSpec external_problem(const std::string& command, const InputModel& model,
                             const std::vector<double>& thresholds, double timeout_seconds) {
    ProblemSpec p;
    p.name = "external";
    p.model = model;
    p.thresholds = thresholds;
    auto oracle = std::make_shared<ExternalOracle>(command,
                                                   static_cast<int>(thresholds.size()),
                                                   timeout_seconds);
    p.oracle = [oracle](const Eigen::VectorXd& x) { return (*oracle)(x); };
    return p;
}

}  // namespace failprob
