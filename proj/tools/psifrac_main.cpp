#include "psifrac/runner.hpp"

#include "psifrac/expr.hpp"
#include "psifrac/hybrid_problem.hpp"
#include "psifrac/psi_function.hpp"
#include "psifrac/quadrature.hpp"
#include "psifrac/special_functions.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

namespace {

void emit_error(const std::string& type, const std::string& message,
                std::optional<std::size_t> offset = {})
{
    nlohmann::json j;
    j["error"]["type"] = type;
    j["error"]["message"] = message;
    if (offset)
        j["error"]["offset"] = *offset;
    std::cout << j.dump(2) << std::endl;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"psifrac: Psi-Hilfer hybrid fractional differential equations — "
                 "solver, operators, and inequality checks"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::string config_path;
    std::string command;
    std::string f_str, g_str, psi_str, integrand, compare_u, compare_side, uniq_G;
    std::string verify_what;
    double y0 = 0, y0_anchor = 0, T = 0, mu = 0, nu = 0, mesh_r = 0, tol = 0, eps0 = 0;
    double damping = 0, q = 0, stop_tol = 0, verify_L = 0;
    int mesh_n = 0, max_iters = 0, max_levels = 0, verify_cases = 0;
    std::vector<double> starts;
    std::string out_dir;

    app.add_option("--config", config_path, "JSON config file; flags override its values");
    app.add_option("--command", command,
                   "integrate|derive|solve|extremal|compare|verify|probe-uniqueness");
    app.add_option("--f", f_str, "expression f(t,y), nonvanishing");
    app.add_option("--g", g_str, "expression g(t,y)");
    app.add_option("--y0", y0, "weighted initial value");
    app.add_option("--y0-anchor", y0_anchor, "anchor value used inside f(0,.)");
    app.add_option("--T", T, "horizon of (0,T]");
    app.add_option("--psi", psi_str, "identity|power:RHO|shifted-log|custom:EXPR,EXPR");
    app.add_option("--mu", mu, "fractional order in (0,1)");
    app.add_option("--nu", nu, "Hilfer type in [0,1]");
    app.add_option("--mesh-n", mesh_n, "mesh intervals");
    app.add_option("--mesh-r", mesh_r, "mesh grading exponent >= 1");
    app.add_option("--tol", tol, "Picard stopping tolerance");
    app.add_option("--max-iters", max_iters, "Picard iteration cap");
    app.add_option("--damping", damping, "Picard damping in (0,1]");
    app.add_option("--eps0", eps0, "initial extremal perturbation");
    app.add_option("--q", q, "extremal ladder decay ratio in (0,1)");
    app.add_option("--stop-tol", stop_tol, "extremal ladder stopping tolerance");
    app.add_option("--max-levels", max_levels, "extremal ladder level cap");
    app.add_option("--integrand", integrand, "integrand/profile expression in t (integrate/derive)");
    app.add_option("--L", verify_L, "constant L for verify ml-identity");
    app.add_option("--cases", verify_cases, "randomized case count for verify touchpoint");
    app.add_option("--u", compare_u, "candidate expression in t (compare)");
    app.add_option("--side", compare_side, "lower|upper (compare)");
    app.add_option("--G", uniq_G, "comparison bound expression in (t,m) (probe-uniqueness)");
    app.add_option("--starts", starts, "weighted-constant starts (probe-uniqueness)");
    app.add_option("--out", out_dir, "output directory");

    CLI::App* verify_cmd = nullptr;
    std::string verify_positional;
    app.add_subcommand("integrate", "Psi-RL fractional integral of --h on the mesh");
    app.add_subcommand("derive", "Psi-Hilfer derivative of --h on the mesh");
    app.add_subcommand("solve", "Picard solve of the hybrid problem");
    app.add_subcommand("extremal", "maximal/minimal solutions via the epsilon ladder");
    app.add_subcommand("compare", "bound a sub/super solution by the extremal solution");
    app.add_subcommand("probe-uniqueness", "multi-start uniqueness probe");
    verify_cmd = app.add_subcommand("verify", "touchpoint | ml-identity | comparison");
    verify_cmd->add_option("what", verify_positional, "touchpoint|ml-identity|comparison");

    CLI11_PARSE(app, argc, argv);

    try {
        psifrac::RunConfig config;
        if (app.count("--config"))
            config = psifrac::load_config(config_path);

        if (app.count("--command")) config.command = command;
        for (const auto* sub : app.get_subcommands()) {
            config.command = sub->get_name();
            if (sub == verify_cmd && !verify_positional.empty())
                config.verify_what = verify_positional;
        }

        if (app.count("--f")) config.problem.f = f_str;
        if (app.count("--g")) config.problem.g = g_str;
        if (app.count("--y0")) config.problem.y0 = y0;
        if (app.count("--y0-anchor")) config.problem.y0_anchor = y0_anchor;
        if (app.count("--T")) config.problem.T = T;
        if (app.count("--psi")) config.problem.psi = psi_str;
        if (app.count("--mu")) config.problem.mu = mu;
        if (app.count("--nu")) config.problem.nu = nu;
        if (app.count("--mesh-n")) config.solver.mesh_n = mesh_n;
        if (app.count("--mesh-r")) config.solver.mesh_r = mesh_r;
        if (app.count("--tol")) config.solver.tol = tol;
        if (app.count("--max-iters")) config.solver.max_iters = max_iters;
        if (app.count("--damping")) config.solver.damping = damping;
        if (app.count("--eps0")) config.extremal.eps0 = eps0;
        if (app.count("--q")) config.extremal.q = q;
        if (app.count("--stop-tol")) config.extremal.stop_tol = stop_tol;
        if (app.count("--max-levels")) config.extremal.max_levels = max_levels;
        if (app.count("--integrand")) config.integrand = integrand;
        if (app.count("--L")) config.verify_L = verify_L;
        if (app.count("--cases")) config.verify_cases = verify_cases;
        if (app.count("--u")) config.compare_u = compare_u;
        if (app.count("--side")) config.compare_side = compare_side;
        if (app.count("--G")) config.uniqueness_G = uniq_G;
        if (app.count("--starts")) config.uniqueness_starts = starts;
        if (app.count("--out")) config.output.dir = out_dir;

        if (config.command.empty()) {
            emit_error("usage", "no command given; use a subcommand or --command");
            return 2;
        }
        return psifrac::run(config);
    } catch (const psifrac::ExprError& e) {
        emit_error("expression", e.what(), e.offset());
    } catch (const psifrac::EvalError& e) {
        emit_error("evaluation", e.what(), e.offset());
    } catch (const psifrac::ConfigError& e) {
        emit_error("config", e.what());
    } catch (const psifrac::HypothesisError& e) {
        emit_error("hypothesis", e.what());
    } catch (const psifrac::PsiValidationError& e) {
        emit_error("psi", e.what());
    } catch (const psifrac::QuadratureError& e) {
        emit_error("quadrature", e.what());
    } catch (const psifrac::SpecialFunctionError& e) {
        emit_error("special-function", e.what());
    } catch (const psifrac::MeshError& e) {
        emit_error("mesh", e.what());
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
    }
    return 2;
}
