#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "failprob/input_model.hpp"
#include "failprob/sur.hpp"

namespace failprob {

// A black-box estimation target: input distribution, response thresholds and
// the (possibly expensive) oracle.
struct ProblemSpec {
    std::string name;
    InputModel model;
    std::vector<double> thresholds;
    Oracle oracle;

    int dim() const { return model.dim(); }
    int responses() const { return static_cast<int>(thresholds.size()); }
};

// Built-in problems: "bump1d" (one input, one response) and "layers4d"
// (four Gaussian factors, three smooth responses).
ProblemSpec builtin_problem(const std::string& name);
bool is_builtin_problem(const std::string& name);
std::vector<std::string> builtin_problem_names();

// Reference failure probabilities for the built-ins.
double bump1d_reference_p();   // known in closed form up to quadrature
double layers4d_reference_p(); // frozen 10^6-sample Monte Carlo calibration
long layers4d_reference_samples();

// Adapter for an external simulator speaking a newline protocol: one input
// point as space-separated decimals per line in, one line of response values
// back. The child process is spawned once and kept alive across calls.
class ExternalOracle {
public:
    ExternalOracle(std::string command, int responses, double timeout_seconds);
    ~ExternalOracle();
    ExternalOracle(const ExternalOracle&) = delete;
    ExternalOracle& operator=(const ExternalOracle&) = delete;

    Eigen::VectorXd operator()(const Eigen::VectorXd& x);

private:
    void spawn();
    void shutdown();
    std::string read_line();

    std::string command_;
    int responses_;
    double timeout_;
    int to_child_ = -1;
    int from_child_ = -1;
    long pid_ = -1;
    std::string buffer_;
};

ProblemSpec external_problem(const std::string& command, const InputModel& model,
                             const std::vector<double>& thresholds, double timeout_seconds);

}  // namespace failprob
