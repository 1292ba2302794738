#pragma once

#include "psifrac/frac_operators.hpp"
#include "psifrac/grid_function.hpp"
#include "psifrac/hybrid_problem.hpp"
#include "psifrac/weighted_space.hpp"

#include <optional>
#include <vector>

namespace psifrac {

/// A weighted-space function m touching zero at node t1 with a declared sign
/// on (0, t1): the setting of the derivative-sign estimates.
struct TouchpointCase {
    GridFunction m;
    int t1_index = 0;
    enum class SignBefore { NonPositive, NonNegative } sign_before = SignBefore::NonPositive;

    double touch_tol = 1e-9;
    double sign_slack = 1e-12;

    /// Throws HypothesisError if the touching condition or the declared sign
    /// is violated on the weighted samples.
    void validate() const;
};

/// Hilfer derivative of m at the touchpoint. The sign estimates assert
/// >= 0 for the NonPositive case and <= 0 for the NonNegative dual; the
/// caller applies the tolerance.
double touchpoint_derivative(const TouchpointCase& c, const HilferOptions& opts = {});

struct MlIdentityCheck {
    double lhs = 0.0;        // Hilfer derivative of E_mu(2L (Psi-Psi(0))^mu)
    double rhs = 0.0;        // term-by-term derivative of the series
    double rhs_eigen = 0.0;  // 2L E_mu(2L (Psi-Psi(0))^mu)
    double rel_err = 0.0;        // vs rhs
    double rel_err_eigen = 0.0;  // vs rhs_eigen
};

/// Verifies the eigen-identity of the Mittag-Leffler profile under the
/// Hilfer derivative at one node. Pre: 2L (Psi(T)-Psi(0))^mu <= 30.
///
/// Differentiating the series term by term with the power rule gives
/// 2L E_mu(2L u^mu) plus the derivative of the constant leading term,
/// u^{-mu}/Gamma(1-mu), which vanishes only for the Caputo type (nu = 1).
/// rhs carries that term; rhs_eigen is the pure eigen form.
MlIdentityCheck verify_ml_identity(double L, const FramePtr& frame, int node,
                                   const HilferOptions& opts = {});

enum class DefectSide { Sub, Super };  // Sub: D[y/f(.,y)] <= g;  Super: >=

struct DefectCheck {
    bool ok = true;
    std::vector<int> violations;
    double max_violation = 0.0;
    double tolerance = 0.0;
};

/// Numerically checks the sub-/super-solution defect sign: the Hilfer
/// derivative of the ratio y/f(t,y) against g(t,y) at interior nodes with
/// t >= window_fraction * T. Double numerical differentiation is noisy, and
/// when xi < 1 and f depends on y the ratio's weighted samples oscillate
/// near t = 0 (f is evaluated along the blowing-up solution), so the first
/// mesh fraction is not resolvable. The tolerance is tol_scale * max(1, |g|)
/// per node.
DefectCheck check_defect_sign(const GridFunction& y, const HybridProblem& problem,
                              DefectSide side, double tol_scale = 1e-2,
                              const HilferOptions& opts = {},
                              double window_fraction = 0.02);

enum class StrictSide { YSide, ZSide };

struct ComparisonVerdict {
    bool pass = false;
    std::vector<int> violating_nodes;
    DefectCheck y_defect;
    DefectCheck z_defect;
};

/// Strict comparison: given a sub-solution y and super-solution z (one
/// inequality strict) with strictly ordered weighted initial values,
/// verifies y strictly precedes z. Throws HypothesisError when the defect
/// or initial-gap preconditions fail. which_strict records which hypothesis
/// side carries the strict inequality; both defects are verified with the
/// same numerical tolerance since strictness below it is not certifiable.
ComparisonVerdict strict_comparison_check(const GridFunction& y, const GridFunction& z,
                                          const HybridProblem& problem,
                                          StrictSide which_strict,
                                          double slack = kDefaultOrderSlack,
                                          const HilferOptions& opts = {});

/// Super-solution perturbation: solves v / f(t,v) = z/f(t,z) +
/// eps E_mu(2L (Psi-Psi(0))^mu) for v at every node by bisection
/// (hypothesis H1(i) makes the ratio map increasing, hence the root unique).
GridFunction perturbed_super_solution(const GridFunction& z, const HybridProblem& problem,
                                      double L, double eps);

/// Samples the one-sided bound g(t,x1) - g(t,x2) <= L (x1/f(t,x1) - x2/f(t,x2))
/// for x1 > x2 on a lattice.
bool check_one_sided_lipschitz(const HybridProblem& problem, double L,
                               const LatticeSpec& lattice = {}, double tol = 1e-10);

struct EpsilonLimitCheck {
    std::vector<double> eps;
    std::vector<double> norms;  // ||z_eps - z|| per level
    bool monotone = false;
    bool vanishing = false;
};

/// Transcription of the nonstrict-comparison limit argument: computes z_eps
/// for a decreasing epsilon ladder and checks ||z_eps - z|| -> 0
/// monotonically.
EpsilonLimitCheck perturbation_limit_check(const GridFunction& z,
                                           const HybridProblem& problem, double L,
                                           double eps0, int levels);

} // namespace psifrac
