#include "psifrac/config.hpp"

#include "psifrac/expr.hpp"
#include "psifrac/hybrid_problem.hpp"
#include "psifrac/psi_function.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace psifrac {

namespace {

const std::set<std::string> kCommands = {"integrate", "derive",  "solve",
                                         "extremal",  "compare", "verify",
                                         "probe-uniqueness"};

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known,
                    const std::string& where)
{
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.count(key))
            throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

template <typename T>
void get_if(const nlohmann::json& j, const char* key, T& out)
{
    if (j.contains(key))
        out = j.at(key).get<T>();
}

} // namespace

void apply_json(RunConfig& config, const nlohmann::json& j)
{
    reject_unknown(j, {"command", "problem", "solver", "extremal", "output", "integrand",
                       "verify", "compare", "uniqueness"},
                   "config");
    get_if(j, "command", config.command);
    if (j.contains("problem")) {
        const auto& p = j.at("problem");
        reject_unknown(p, {"f", "g", "y0", "y0_anchor", "T", "psi", "mu", "nu"},
                       "config.problem");
        get_if(p, "f", config.problem.f);
        get_if(p, "g", config.problem.g);
        get_if(p, "y0", config.problem.y0);
        if (p.contains("y0_anchor") && !p.at("y0_anchor").is_null())
            config.problem.y0_anchor = p.at("y0_anchor").get<double>();
        get_if(p, "T", config.problem.T);
        get_if(p, "psi", config.problem.psi);
        get_if(p, "mu", config.problem.mu);
        get_if(p, "nu", config.problem.nu);
    }
    if (j.contains("solver")) {
        const auto& s = j.at("solver");
        reject_unknown(s, {"mesh_n", "mesh_r", "tol", "max_iters", "damping"},
                       "config.solver");
        get_if(s, "mesh_n", config.solver.mesh_n);
        get_if(s, "mesh_r", config.solver.mesh_r);
        get_if(s, "tol", config.solver.tol);
        get_if(s, "max_iters", config.solver.max_iters);
        get_if(s, "damping", config.solver.damping);
    }
    if (j.contains("extremal")) {
        const auto& e = j.at("extremal");
        reject_unknown(e, {"eps0", "q", "stop_tol", "max_levels"}, "config.extremal");
        get_if(e, "eps0", config.extremal.eps0);
        get_if(e, "q", config.extremal.q);
        get_if(e, "stop_tol", config.extremal.stop_tol);
        get_if(e, "max_levels", config.extremal.max_levels);
    }
    if (j.contains("output")) {
        const auto& o = j.at("output");
        reject_unknown(o, {"dir"}, "config.output");
        get_if(o, "dir", config.output.dir);
    }
    get_if(j, "integrand", config.integrand);
    if (j.contains("verify")) {
        const auto& v = j.at("verify");
        reject_unknown(v, {"what", "L", "cases"}, "config.verify");
        get_if(v, "what", config.verify_what);
        get_if(v, "L", config.verify_L);
        get_if(v, "cases", config.verify_cases);
    }
    if (j.contains("compare")) {
        const auto& c = j.at("compare");
        reject_unknown(c, {"u", "side"}, "config.compare");
        get_if(c, "u", config.compare_u);
        get_if(c, "side", config.compare_side);
    }
    if (j.contains("uniqueness")) {
        const auto& u = j.at("uniqueness");
        reject_unknown(u, {"G", "starts"}, "config.uniqueness");
        if (u.contains("G") && !u.at("G").is_null())
            config.uniqueness_G = u.at("G").get<std::string>();
        get_if(u, "starts", config.uniqueness_starts);
    }
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    RunConfig config;
    apply_json(config, j);
    return config;
}

void RunConfig::validate() const
{
    if (!kCommands.count(command))
        throw ConfigError("command must be one of integrate|derive|solve|extremal|"
                          "compare|verify|probe-uniqueness, got '" +
                          command + "'");
    if (!(problem.mu > 0.0 && problem.mu < 1.0)) {
        std::ostringstream os;
        os << "mu must be in (0,1), got " << problem.mu;
        throw ConfigError(os.str());
    }
    if (!(problem.nu >= 0.0 && problem.nu <= 1.0)) {
        std::ostringstream os;
        os << "nu must be in [0,1], got " << problem.nu;
        throw ConfigError(os.str());
    }
    if (!(problem.T > 0.0))
        throw ConfigError("T must be positive");
    if (problem.f.empty() || problem.g.empty())
        throw ConfigError("expressions f and g must be nonempty");
    Expr f_expr = Expr::parse(problem.f, {"t", "y"});
    Expr::parse(problem.g, {"t", "y"});
    try {
        PsiFunction::from_spec(problem.psi, problem.T);
    } catch (const PsiValidationError& e) {
        throw ConfigError(std::string("psi: ") + e.what());
    } catch (const ExprError& e) {
        throw ConfigError(std::string("psi: ") + e.what());
    }
    if (solver.mesh_n < 4)
        throw ConfigError("mesh_n must be >= 4");
    if (!(solver.mesh_r >= 1.0))
        throw ConfigError("mesh_r must be >= 1");
    if (!(solver.tol > 0.0))
        throw ConfigError("tol must be positive");
    if (solver.max_iters < 1)
        throw ConfigError("max_iters must be >= 1");
    if (!(solver.damping > 0.0 && solver.damping <= 1.0))
        throw ConfigError("damping must lie in (0,1]");
    if (!(extremal.eps0 > 0.0))
        throw ConfigError("eps0 must be positive");
    if (!(extremal.q > 0.0 && extremal.q < 1.0))
        throw ConfigError("extremal q must lie in (0,1)");

    // Hypothesis f != 0, probed on the default validation lattice.
    try {
        FractionalOrder order(problem.mu, problem.nu);
        HybridProblem hp(f_expr, Expr::parse(problem.g, {"t", "y"}), problem.y0,
                         problem.y0_anchor, problem.T,
                         PsiFunction::from_spec(problem.psi, problem.T), order);
        hp.validate_nonvanishing();
    } catch (const HypothesisError& e) {
        throw ConfigError(std::string("problem: ") + e.what());
    }

    if (command == "integrate" || command == "derive")
        Expr::parse(integrand, {"t"});
    if (command == "verify" && verify_what != "touchpoint" &&
        verify_what != "ml-identity" && verify_what != "comparison")
        throw ConfigError("verify target must be touchpoint|ml-identity|comparison");
    if (command == "compare") {
        Expr::parse(compare_u, {"t"});
        if (compare_side != "lower" && compare_side != "upper")
            throw ConfigError("compare side must be lower|upper");
    }
    if (command == "probe-uniqueness" && uniqueness_G)
        Expr::parse(*uniqueness_G, {"t", "m"});
}

} // namespace psifrac
