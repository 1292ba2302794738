#include "psifrac/runner.hpp"

#include "psifrac/extremal.hpp"
#include "psifrac/io.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

namespace psifrac {

namespace {

std::string out_path(const RunConfig& config, const std::string& name)
{
    std::filesystem::create_directories(config.output.dir);
    return (std::filesystem::path(config.output.dir) / name).string();
}

HybridProblem build_problem(const RunConfig& config)
{
    return HybridProblem(Expr::parse(config.problem.f, {"t", "y"}),
                         Expr::parse(config.problem.g, {"t", "y"}), config.problem.y0,
                         config.problem.y0_anchor, config.problem.T,
                         PsiFunction::from_spec(config.problem.psi, config.problem.T),
                         FractionalOrder(config.problem.mu, config.problem.nu));
}

SolverConfig build_solver_config(const RunConfig& config)
{
    SolverConfig sc;
    sc.mesh_n = config.solver.mesh_n;
    sc.mesh_r = config.solver.mesh_r;
    sc.picard_tol = config.solver.tol;
    sc.max_iters = config.solver.max_iters;
    sc.damping = config.solver.damping;
    return sc;
}

ExtremalConfig build_extremal_config(const RunConfig& config)
{
    ExtremalConfig ec;
    ec.eps0 = config.extremal.eps0;
    ec.ratio_q = config.extremal.q;
    ec.stop_tol = config.extremal.stop_tol;
    ec.max_levels = config.extremal.max_levels;
    return ec;
}

FramePtr build_frame(const RunConfig& config)
{
    return make_frame(
        GradedMesh(config.problem.T, config.solver.mesh_n, config.solver.mesh_r),
        PsiFunction::from_spec(config.problem.psi, config.problem.T),
        FractionalOrder(config.problem.mu, config.problem.nu));
}

int run_solve(const RunConfig& config)
{
    PicardSolver solver(build_problem(config), build_solver_config(config));
    auto [solution, report] = solver.solve();
    if (!report.existence_ok)
        std::cerr << "warning: existence condition value " << report.existence_value
                  << " >= 1; the fixed-point gate is not certified\n";
    write_solution_csv(out_path(config, "solution.csv"), solution);
    write_json_file(out_path(config, "report.json"), report_to_json(report));
    return report.converged ? 0 : 1;
}

int run_integrate(const RunConfig& config)
{
    const FramePtr frame = build_frame(config);
    const Expr h = Expr::parse(config.integrand, {"t"});
    const std::vector<double> values = psi_rl_integral_profile(
        *frame, [&](double t) { return h.eval1(t); }, config.problem.mu);
    write_profile_csv(out_path(config, "integral.csv"), *frame, values, "integral");
    nlohmann::json j;
    j["command"] = "integrate";
    j["mu"] = config.problem.mu;
    j["psi"] = config.problem.psi;
    j["mesh_n"] = config.solver.mesh_n;
    j["mesh_r"] = config.solver.mesh_r;
    write_json_file(out_path(config, "report.json"), j);
    return 0;
}

int run_derive(const RunConfig& config)
{
    const FramePtr frame = build_frame(config);
    const Expr h = Expr::parse(config.integrand, {"t"});
    const SpaceProfile profile =
        profile_from_callable(*frame, [&](double t) { return h.eval1(t); });
    const HilferProfile d = psi_hilfer_profile(*frame, profile);
    write_profile_csv(out_path(config, "derivative.csv"), *frame, d.derivative,
                      "hilfer_derivative");
    nlohmann::json j;
    j["command"] = "derive";
    j["mu"] = config.problem.mu;
    j["nu"] = config.problem.nu;
    j["first_valid_node"] = d.first_valid;
    write_json_file(out_path(config, "report.json"), j);
    return 0;
}

nlohmann::json extremal_report_json(const ExtremalReport& r)
{
    nlohmann::json j;
    j["gate_value"] = r.gate_value;
    j["converged"] = r.converged;
    j["all_levels_converged"] = r.all_levels_converged;
    j["ladder_monotone"] = r.ladder_monotone;
    j["monotonicity_violations"] = r.monotonicity_violations;
    j["level_diffs"] = r.level_diffs;
    j["order_slack"] = r.order_slack;
    return j;
}

int run_extremal(const RunConfig& config)
{
    PicardSolver solver(build_problem(config), build_solver_config(config));
    const ExtremalConfig ec = build_extremal_config(config);

    const ExtremalResult maximal = maximal_solution(solver, ec);
    const ExtremalResult minimal = minimal_solution(solver, ec);

    nlohmann::json j;
    j["command"] = "extremal";
    j["maximal"] = extremal_report_json(maximal.report);
    j["minimal"] = extremal_report_json(minimal.report);
    char name[64];
    for (std::size_t k = 0; k < maximal.ladder.size(); ++k) {
        std::snprintf(name, sizeof name, "maximal_level_%02zu.csv", k);
        write_solution_csv(out_path(config, name), maximal.ladder[k].solution);
        j["maximal"]["eps"].push_back(maximal.ladder[k].eps);
    }
    for (std::size_t k = 0; k < minimal.ladder.size(); ++k) {
        std::snprintf(name, sizeof name, "minimal_level_%02zu.csv", k);
        write_solution_csv(out_path(config, name), minimal.ladder[k].solution);
        j["minimal"]["eps"].push_back(minimal.ladder[k].eps);
    }
    write_solution_csv(out_path(config, "maximal.csv"), maximal.extremal);
    write_solution_csv(out_path(config, "minimal.csv"), minimal.extremal);
    if (maximal.extrapolated)
        write_solution_csv(out_path(config, "maximal_aitken_extrapolated.csv"),
                           *maximal.extrapolated);
    if (minimal.extrapolated)
        write_solution_csv(out_path(config, "minimal_aitken_extrapolated.csv"),
                           *minimal.extrapolated);
    write_json_file(out_path(config, "extremal_report.json"), j);

    const bool ok = maximal.report.ladder_monotone && minimal.report.ladder_monotone &&
                    maximal.report.all_levels_converged && minimal.report.all_levels_converged;
    return ok ? 0 : 1;
}

int run_compare(const RunConfig& config)
{
    PicardSolver solver(build_problem(config), build_solver_config(config));
    const Expr u_expr = Expr::parse(config.compare_u, {"t"});
    const GridFunction u = GridFunction::from_values(
        solver.frame(), [&](double t) { return u_expr.eval1(t); });
    const BoundSide side =
        config.compare_side == "lower" ? BoundSide::Lower : BoundSide::Upper;

    BoundVerdict verdict =
        comparison_bound(u, solver, side, build_extremal_config(config),
                         /*enforce_preconditions=*/false);
    nlohmann::json j;
    j["command"] = "compare";
    j["side"] = config.compare_side;
    j["pass"] = verdict.pass;
    j["violating_nodes"] = verdict.violating_nodes;
    j["defect_ok"] = verdict.defect.ok;
    j["defect_violations"] = verdict.defect.violations;
    j["initial_ok"] = verdict.initial_ok;
    j["extremal"] = extremal_report_json(verdict.extremal_report);
    write_json_file(out_path(config, "compare_report.json"), j);
    return verdict.pass && verdict.defect.ok && verdict.initial_ok ? 0 : 1;
}

int run_verify_touchpoint(const RunConfig& config, nlohmann::json& j)
{
    std::mt19937 rng(20240901u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const PsiFunction presets[3] = {PsiFunction::identity(), PsiFunction::power(2.0),
                                    PsiFunction::shifted_log()};
    const double T = config.problem.T;
    const int n = config.solver.mesh_n;

    bool all_pass = true;
    j["cases"] = nlohmann::json::array();
    for (int k = 0; k < config.verify_cases; ++k) {
        const double mu = 0.15 + 0.7 * unit(rng);
        const double nu = unit(rng);
        const PsiFunction& psi = presets[k % 3];
        const FramePtr frame =
            make_frame(GradedMesh(T, n, config.solver.mesh_r), psi, FractionalOrder(mu, nu));
        const int t1 = static_cast<int>((0.3 + 0.65 * unit(rng)) * n);
        const double v1 = frame->u_at(t1);
        const double c = std::pow(10.0, -1.0 + 2.0 * unit(rng));
        const int family = k % 3;
        const bool dual = (k % 2) == 1;  // NonNegative variant
        const double sign = dual ? -1.0 : 1.0;

        std::vector<double> w(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            const double v = frame->u_at(i);
            double wi;
            switch (family) {
            case 0: wi = -c * (v1 - v); break;
            case 1: wi = -c * (v1 - v) * (1.0 + 0.5 * v); break;
            default: wi = (v <= v1) ? -c * (v1 - v) * (v1 - v) : 0.0; break;
            }
            w[static_cast<std::size_t>(i)] = sign * wi;
        }
        TouchpointCase tc{GridFunction(frame, std::move(w)), t1,
                          dual ? TouchpointCase::SignBefore::NonNegative
                               : TouchpointCase::SignBefore::NonPositive};
        const double derivative = touchpoint_derivative(tc);
        const double scale = weighted_norm(tc.m).value;
        const double violation = dual ? std::max(0.0, derivative) : std::max(0.0, -derivative);
        const bool pass = violation <= 1e-6 * scale;
        all_pass = all_pass && pass;
        j["cases"].push_back({{"mu", mu},
                              {"nu", nu},
                              {"psi", psi.label()},
                              {"t1_node", t1},
                              {"derivative", derivative},
                              {"violation", violation},
                              {"pass", pass}});
    }
    j["pass"] = all_pass;
    return all_pass ? 0 : 1;
}

int run_verify_ml_identity(const RunConfig& config, nlohmann::json& j)
{
    const double Ls[2] = {0.25, 0.5};
    const double mus[3] = {0.3, 0.5, 0.7};
    const double nus[3] = {0.0, 0.5, 1.0};
    double max_rel_err = 0.0;
    j["cases"] = nlohmann::json::array();
    for (double L : Ls)
        for (double mu : mus)
            for (double nu : nus) {
                const FramePtr frame = make_frame(
                    GradedMesh(config.problem.T, config.solver.mesh_n, config.solver.mesh_r),
                    PsiFunction::from_spec(config.problem.psi, config.problem.T),
                    FractionalOrder(mu, nu));
                const int n = frame->N();
                double worst = 0.0;
                for (int node = n / 3; node <= n; node += std::max(1, n / 8))
                    worst = std::max(worst, verify_ml_identity(L, frame, node).rel_err);
                max_rel_err = std::max(max_rel_err, worst);
                j["cases"].push_back({{"L", L}, {"mu", mu}, {"nu", nu}, {"rel_err", worst}});
            }
    j["max_rel_err"] = max_rel_err;
    const bool pass = max_rel_err < 1e-3;
    j["pass"] = pass;
    return pass ? 0 : 1;
}

int run_verify_comparison(const RunConfig& config, nlohmann::json& j)
{
    PicardSolver solver(build_problem(config), build_solver_config(config));
    const double eps = 0.25;

    auto [y, y_report] = solver.solve();
    auto [z, z_report] = solve_perturbed(solver, eps);
    if (!y_report.converged || !z_report.converged)
        throw HypothesisError("comparison verify: solver did not converge");

    const ComparisonVerdict strict =
        strict_comparison_check(y, z, solver.problem(), StrictSide::ZSide);
    j["strict"] = {{"pass", strict.pass},
                   {"violating_nodes", strict.violating_nodes}};

    // Positive control for the extremal bound, negative control built from
    // the maximal solution plus a bump on the second half of the mesh.
    const ExtremalConfig ec = build_extremal_config(config);
    const BoundVerdict good = comparison_bound(y, solver, BoundSide::Lower, ec);
    ExtremalResult maximal = maximal_solution(solver, ec);
    GridFunction bad = maximal.extremal;
    for (int i = bad.N() / 2; i <= bad.N(); ++i)
        bad.weighted_at(i) += 0.5;
    const BoundVerdict control = comparison_bound(bad, solver, BoundSide::Lower, ec,
                                                  /*enforce_preconditions=*/false);
    j["bound"] = {{"pass", good.pass}, {"violating_nodes", good.violating_nodes}};
    j["negative_control"] = {{"pass", control.pass},
                             {"violating_nodes", control.violating_nodes}};
    const bool pass = strict.pass && good.pass && !control.pass &&
                      !control.violating_nodes.empty();
    j["pass"] = pass;
    return pass ? 0 : 1;
}

int run_verify(const RunConfig& config)
{
    nlohmann::json j;
    j["command"] = "verify";
    j["what"] = config.verify_what;
    int status = 1;
    if (config.verify_what == "touchpoint")
        status = run_verify_touchpoint(config, j);
    else if (config.verify_what == "ml-identity")
        status = run_verify_ml_identity(config, j);
    else
        status = run_verify_comparison(config, j);
    write_json_file(out_path(config, "verify_report.json"), j);
    std::cout << (status == 0 ? "PASS" : "FAIL") << " verify " << config.verify_what
              << '\n';
    return status;
}

int run_probe_uniqueness(const RunConfig& config)
{
    PicardSolver solver(build_problem(config), build_solver_config(config));
    std::optional<Expr> G;
    if (config.uniqueness_G)
        G = Expr::parse(*config.uniqueness_G, {"t", "m"});
    std::vector<GridFunction> starts;
    for (double w0 : config.uniqueness_starts)
        starts.push_back(GridFunction::constant_weighted(solver.frame(), w0));

    const UniquenessReport report = uniqueness_probe(solver, G, std::move(starts));
    nlohmann::json j;
    j["command"] = "probe-uniqueness";
    j["outcome"] = report.outcome == ProbeOutcome::Supported      ? "supported"
                   : report.outcome == ProbeOutcome::NotSupported ? "not-supported"
                                                                  : "inconclusive";
    j["starts"] = report.starts;
    j["starts_agree"] = report.starts_agree;
    j["max_pair_diff"] = report.max_pair_diff;
    if (report.g_condition_ok)
        j["g_condition_ok"] = *report.g_condition_ok;
    if (report.comparison_norm)
        j["comparison_norm"] = *report.comparison_norm;
    write_json_file(out_path(config, "uniqueness_report.json"), j);
    return report.outcome == ProbeOutcome::Supported ? 0 : 1;
}

} // namespace

int run(const RunConfig& config)
{
    config.validate();
    if (config.command == "solve")
        return run_solve(config);
    if (config.command == "integrate")
        return run_integrate(config);
    if (config.command == "derive")
        return run_derive(config);
    if (config.command == "extremal")
        return run_extremal(config);
    if (config.command == "compare")
        return run_compare(config);
    if (config.command == "verify")
        return run_verify(config);
    if (config.command == "probe-uniqueness")
        return run_probe_uniqueness(config);
    throw ConfigError("unhandled command '" + config.command + "'");
}

} // namespace psifrac
