#pragma once

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace psifrac {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProblemConfig {
    std::string f = "1";
    std::string g = "0";
    double y0 = 0.0;
    std::optional<double> y0_anchor;
    double T = 1.0;
    std::string psi = "identity";
    double mu = 0.5;
    double nu = 1.0;
};

struct SolverBlock {
    int mesh_n = 1024;
    double mesh_r = 2.0;
    double tol = 1e-10;
    int max_iters = 200;
    double damping = 1.0;
};

struct ExtremalBlock {
    double eps0 = 0.1;
    double q = 0.5;
    double stop_tol = 1e-6;
    int max_levels = 12;
};

struct OutputBlock {
    std::string dir = ".";
};

struct RunConfig {
    std::string command;
    ProblemConfig problem;
    SolverBlock solver;
    ExtremalBlock extremal;
    OutputBlock output;

    // integrate / derive
    std::string integrand = "1";

    // verify
    std::string verify_what = "ml-identity";
    double verify_L = 0.5;
    int verify_cases = 50;

    // compare
    std::string compare_u = "0";
    std::string compare_side = "lower";

    // probe-uniqueness
    std::optional<std::string> uniqueness_G;
    std::vector<double> uniqueness_starts;

    /// Throws ConfigError naming the offending field; parses every
    /// expression and checks the order/mesh invariants.
    void validate() const;
};

/// Reads a JSON config file. Unknown keys are rejected so typos surface.
RunConfig load_config(const std::string& path);

/// Merges a parsed JSON document into a config (flag-style partial updates).
void apply_json(RunConfig& config, const nlohmann::json& j);

} // namespace psifrac
