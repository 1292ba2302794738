#pragma once

#include "psifrac/inequalities.hpp"
#include "psifrac/solver.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace psifrac {

struct ExtremalConfig {
    double eps0 = 0.1;      // initial perturbation; must pass the strengthened gate
    double ratio_q = 0.5;   // geometric decay eps_n = eps0 q^n
    double stop_tol = 1e-6;
    int max_levels = 12;

    void validate() const;
};

/// Strengthened existence value with the initial perturbation folded in:
///   L { |(y0+eps)/f(0,anchor)| + (||h||+eps)(Psi(T)-Psi(0))^mu / Gamma(mu+1) }.
double strengthened_gate_value(const HybridProblem& problem, const ExistenceParams& params,
                               double eps);

/// Solves the problem with g := g + eps and y0 := y0 + eps on the solver's
/// frame (eps < 0 gives the minimal-solution variant).
std::pair<GridFunction, SolverReport> solve_perturbed(const PicardSolver& solver,
                                                      double eps);

struct LadderLevel {
    double eps = 0.0;
    GridFunction solution;
    SolverReport report;
};

struct ExtremalReport {
    double gate_value = 0.0;
    bool converged = false;            // ladder diffs reached stop_tol
    bool all_levels_converged = true;  // every perturbed solve converged
    bool ladder_monotone = true;       // decreasing (maximal) / increasing (minimal)
    std::vector<int> monotonicity_violations;  // ladder level indices
    std::vector<double> level_diffs;           // ||r_n - r_{n+1}||
    double order_slack = 1e-8;
};

struct ExtremalResult {
    GridFunction extremal;  // last ladder iterate
    std::vector<LadderLevel> ladder;
    ExtremalReport report;
    /// Aitken extrapolation of the last three levels (labeled as such in
    /// outputs); present when the ladder is long enough and well-behaved.
    std::optional<GridFunction> extrapolated;
};

/// Maximal solution via the decreasing-epsilon ladder: solves the
/// (g+eps_n, y0+eps_n) problems, asserts the ladder is weighted-decreasing,
/// and returns the last iterate. Throws HypothesisError when eps0 violates
/// the strengthened existence bound.
ExtremalResult maximal_solution(const PicardSolver& solver, const ExtremalConfig& cfg);

/// Dual construction with perturbations -eps_n; ladder weighted-increasing.
ExtremalResult minimal_solution(const PicardSolver& solver, const ExtremalConfig& cfg);

enum class BoundSide { Lower, Upper };

struct BoundVerdict {
    bool pass = false;
    std::vector<int> violating_nodes;
    DefectCheck defect;
    bool initial_ok = true;
    ExtremalReport extremal_report;
};

/// Comparison with the extremal solution: a sub-solution u must satisfy
/// u <= r (Lower, r maximal); a super-solution u must satisfy q <= u
/// (Upper, q minimal). enforce_preconditions=false skips the defect/initial
/// checks so negative controls still produce a violating-node report.
BoundVerdict comparison_bound(const GridFunction& u, const PicardSolver& solver,
                              BoundSide side, const ExtremalConfig& cfg,
                              bool enforce_preconditions = true,
                              double slack = 1e-7);

enum class ProbeOutcome { Supported, NotSupported, Inconclusive };

struct UniquenessReport {
    ProbeOutcome outcome = ProbeOutcome::Inconclusive;
    bool starts_agree = false;
    double max_pair_diff = 0.0;
    int starts = 0;
    std::optional<bool> g_condition_ok;      // lattice check of the G bound
    std::optional<double> comparison_norm;   // ||m|| for D m = G(t,m), m_0 = 0
};

/// Multi-start Picard probe; when G is supplied (an Expr over (t, m)) also
/// lattice-checks the one-sided G bound on g and solves the comparison
/// problem D m = G(t, m) with weighted zero initial value from both zero and
/// positive starts, reporting whether m stays at zero.
UniquenessReport uniqueness_probe(const PicardSolver& solver,
                                  const std::optional<Expr>& G,
                                  std::vector<GridFunction> starts = {});

} // namespace psifrac
