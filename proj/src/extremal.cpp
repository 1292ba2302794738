#include "psifrac/extremal.hpp"

#include "psifrac/special_functions.hpp"

#include <cmath>
#include <sstream>

namespace psifrac {

void ExtremalConfig::validate() const
{
    if (!(eps0 > 0.0))
        throw HypothesisError("eps0 must be positive");
    if (!(ratio_q > 0.0 && ratio_q < 1.0))
        throw HypothesisError("ratio_q must lie in (0, 1)");
    if (!(stop_tol > 0.0))
        throw HypothesisError("stop_tol must be positive");
    if (max_levels < 1)
        throw HypothesisError("max_levels must be >= 1");
}

double strengthened_gate_value(const HybridProblem& problem, const ExistenceParams& params,
                               double eps)
{
    const double mu = problem.order().mu();
    const double du = problem.psi().increment(problem.T());
    const double f0 = problem.f_at(0.0, problem.y0_anchor());
    return params.L * (std::abs((problem.y0() + eps) / f0) +
                       (params.h_norm + eps) * std::pow(du, mu) / gamma_fn(mu + 1.0));
}

std::pair<GridFunction, SolverReport> solve_perturbed(const PicardSolver& solver, double eps)
{
    if (eps == 0.0)
        return solver.solve();
    return solver.with_problem(solver.problem().perturbed(eps)).solve();
}

namespace {

ExtremalResult run_ladder(const PicardSolver& solver, const ExtremalConfig& cfg,
                          double direction)
{
    cfg.validate();
    const double gate = strengthened_gate_value(solver.problem(), solver.params(), cfg.eps0);
    if (!(gate < 1.0)) {
        std::ostringstream os;
        os << "strengthened existence bound fails for eps0 = " << cfg.eps0
           << " (value " << gate << " >= 1)";
        throw HypothesisError(os.str());
    }

    ExtremalResult result{GridFunction::constant_weighted(solver.frame(), 0.0), {}, {}, {}};
    result.report.gate_value = gate;

    std::optional<GridFunction> warm_start;
    double eps = cfg.eps0;
    for (int level = 0; level < cfg.max_levels; ++level) {
        PicardSolver perturbed =
            solver.with_problem(solver.problem().perturbed(direction * eps));
        auto [solution, report] = perturbed.solve(warm_start);
        if (!report.converged) {
            result.report.all_levels_converged = false;
            result.report.converged = false;
            result.ladder.push_back({direction * eps, std::move(solution), std::move(report)});
            break;
        }
        warm_start = solution;
        result.ladder.push_back({direction * eps, std::move(solution), std::move(report)});

        const std::size_t k = result.ladder.size();
        if (k >= 2) {
            const GridFunction& prev = result.ladder[k - 2].solution;
            const GridFunction& cur = result.ladder[k - 1].solution;
            // Maximal ladders decrease, minimal ladders increase.
            const auto violations =
                direction > 0.0
                    ? precedence_violations(cur, prev, false, result.report.order_slack)
                    : precedence_violations(prev, cur, false, result.report.order_slack);
            if (!violations.empty()) {
                result.report.ladder_monotone = false;
                result.report.monotonicity_violations.push_back(static_cast<int>(k) - 1);
            }
            const double diff = weighted_norm_diff(cur, prev).value;
            result.report.level_diffs.push_back(diff);
            if (diff < cfg.stop_tol) {
                result.report.converged = true;
                break;
            }
        }
        eps *= cfg.ratio_q;
    }

    result.extremal = result.ladder.back().solution;

    // Aitken acceleration on the last three levels; with the geometric
    // epsilon ladder the level differences are near-geometric, which is
    // exactly the regime the Delta^2 formula accelerates.
    if (result.ladder.size() >= 3) {
        const std::size_t k = result.ladder.size();
        const GridFunction& a = result.ladder[k - 3].solution;
        const GridFunction& b = result.ladder[k - 2].solution;
        const GridFunction& c = result.ladder[k - 1].solution;
        GridFunction accel = c;
        bool usable = true;
        for (int i = 0; i <= accel.N() && usable; ++i) {
            const double d1 = b.weighted_at(i) - a.weighted_at(i);
            const double d2 = c.weighted_at(i) - b.weighted_at(i);
            const double denom = d2 - d1;
            if (std::abs(denom) > 1e-13 * (std::abs(d1) + std::abs(d2))) {
                accel.weighted_at(i) = c.weighted_at(i) - d2 * d2 / denom;
                usable = std::isfinite(accel.weighted_at(i));
            }
        }
        if (usable)
            result.extrapolated = std::move(accel);
    }
    return result;
}

} // namespace

ExtremalResult maximal_solution(const PicardSolver& solver, const ExtremalConfig& cfg)
{
    return run_ladder(solver, cfg, +1.0);
}

ExtremalResult minimal_solution(const PicardSolver& solver, const ExtremalConfig& cfg)
{
    return run_ladder(solver, cfg, -1.0);
}

BoundVerdict comparison_bound(const GridFunction& u, const PicardSolver& solver,
                              BoundSide side, const ExtremalConfig& cfg,
                              bool enforce_preconditions, double slack)
{
    BoundVerdict verdict;
    const HybridProblem& problem = solver.problem();

    const DefectSide defect_side = side == BoundSide::Lower ? DefectSide::Sub : DefectSide::Super;
    verdict.defect = check_defect_sign(u, problem, defect_side);
    verdict.initial_ok = side == BoundSide::Lower
                             ? u.weighted_at(0) <= problem.y0() + slack
                             : u.weighted_at(0) >= problem.y0() - slack;
    if (enforce_preconditions) {
        if (!verdict.defect.ok)
            throw HypothesisError(side == BoundSide::Lower
                                      ? "u is not a sub-solution (defect sign check failed)"
                                      : "u is not a super-solution (defect sign check failed)");
        if (!verdict.initial_ok)
            throw HypothesisError("initial weighted value violates the bound hypothesis");
    }

    const ExtremalResult extremal = side == BoundSide::Lower ? maximal_solution(solver, cfg)
                                                             : minimal_solution(solver, cfg);
    verdict.extremal_report = extremal.report;
    verdict.violating_nodes =
        side == BoundSide::Lower
            ? precedence_violations(u, extremal.extremal, false, slack)
            : precedence_violations(extremal.extremal, u, false, slack);
    verdict.pass = verdict.violating_nodes.empty();
    return verdict;
}

UniquenessReport uniqueness_probe(const PicardSolver& solver, const std::optional<Expr>& G,
                                  std::vector<GridFunction> starts)
{
    UniquenessReport report;
    if (starts.empty()) {
        starts.push_back(solver.default_initial());
        starts.push_back(GridFunction::constant_weighted(solver.frame(),
                                                         solver.problem().y0() + 5.0));
    }
    if (starts.size() < 2)
        throw HypothesisError("uniqueness probe needs at least two distinct starts");
    report.starts = static_cast<int>(starts.size());

    std::vector<GridFunction> solutions;
    for (auto& start : starts) {
        auto [solution, solve_report] = solver.solve(std::move(start));
        if (!solve_report.converged) {
            report.outcome = ProbeOutcome::Inconclusive;
            return report;
        }
        solutions.push_back(std::move(solution));
    }

    const double agree_tol = 10.0 * solver.config().picard_tol;
    report.starts_agree = true;
    for (std::size_t a = 0; a < solutions.size(); ++a)
        for (std::size_t b = a + 1; b < solutions.size(); ++b) {
            const double diff = weighted_norm_diff(solutions[a], solutions[b]).value;
            report.max_pair_diff = std::max(report.max_pair_diff, diff);
            if (diff > agree_tol)
                report.starts_agree = false;
        }

    bool comparison_zero = true;
    if (G) {
        const HybridProblem& problem = solver.problem();
        // Lattice check of the one-sided bound
        //   g(t,y1) - g(t,y2) <= G(t, y1/f(t,y1) - y2/f(t,y2)), y1 > y2.
        LatticeSpec lattice;
        bool ok = true;
        for (int it = 0; it <= lattice.nt && ok; ++it) {
            const double t = problem.T() * static_cast<double>(it) / lattice.nt;
            for (int ia = 0; ia <= lattice.ny && ok; ++ia) {
                const double y2 =
                    lattice.y_min + (lattice.y_max - lattice.y_min) * ia / lattice.ny;
                for (int ib = ia + 1; ib <= lattice.ny; ++ib) {
                    const double y1 =
                        lattice.y_min + (lattice.y_max - lattice.y_min) * ib / lattice.ny;
                    const double m =
                        y1 / problem.f_at(t, y1) - y2 / problem.f_at(t, y2);
                    const double lhs = problem.g_at(t, y1) - problem.g_at(t, y2);
                    if (lhs > G->eval2(t, m) + 1e-10) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        report.g_condition_ok = ok;

        // Comparison problem D m = G(t, m), weighted zero initial value,
        // probed from the zero start and a positive start.
        const Expr one = Expr::parse("1", {"t", "y"});
        HybridProblem comparison(one, *G, 0.0, std::nullopt, problem.T(), problem.psi(),
                                 problem.order());
        PicardSolver comparison_solver(comparison, solver.config());
        double norm = 0.0;
        for (double w0 : {0.0, 0.5}) {
            auto [m_solution, m_report] = comparison_solver.solve(
                GridFunction::constant_weighted(comparison_solver.frame(), w0));
            if (!m_report.converged) {
                report.outcome = ProbeOutcome::Inconclusive;
                return report;
            }
            norm = std::max(norm, weighted_norm(m_solution).value);
        }
        report.comparison_norm = norm;
        comparison_zero = norm <= std::max(100.0 * solver.config().picard_tol, 1e-8);
    }

    if (!report.starts_agree || !comparison_zero)
        report.outcome = ProbeOutcome::NotSupported;
    else
        report.outcome = ProbeOutcome::Supported;
    return report;
}

} // namespace psifrac
