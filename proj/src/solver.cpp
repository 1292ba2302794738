#include "psifrac/solver.hpp"

#include "psifrac/special_functions.hpp"

#include <cmath>
#include <sstream>

namespace psifrac {

void SolverConfig::validate() const
{
    if (!(picard_tol > 0.0))
        throw HypothesisError("picard_tol must be positive");
    if (max_iters < 1)
        throw HypothesisError("max_iters must be >= 1");
    if (!(damping > 0.0 && damping <= 1.0))
        throw HypothesisError("damping must lie in (0, 1]");
}

ExistenceResult existence_check(const HybridProblem& problem,
                                const ExistenceParams& params, ExistenceMode mode)
{
    params.validate();
    const double mu = problem.order().mu();
    const double xi = problem.order().xi();
    const double e = mode == ExistenceMode::Printed ? mu : mu + 1.0 - xi;
    const double du = problem.psi().increment(problem.T());
    const double value =
        params.L *
        (std::abs(problem.c0()) + params.h_norm * std::pow(du, e) / gamma_fn(mu + 1.0));
    return {value, value < 1.0};
}

PicardSolver::PicardSolver(HybridProblem problem, SolverConfig config,
                           std::optional<ExistenceParams> params)
    : problem_(std::move(problem)), config_(config),
      params_(params ? *params : estimate_params(problem_))
{
    config_.validate();
    params_.validate();
    frame_ = make_frame(GradedMesh(problem_.T(), config_.mesh_n, config_.mesh_r),
                        problem_.psi(), problem_.order());
    integral_op_ = std::make_shared<const ProductIntegralOperator>(
        frame_->u(), problem_.order().mu(), config_.exec);
}

PicardSolver PicardSolver::with_problem(HybridProblem problem) const
{
    if (problem.T() != problem_.T() || !(problem.order() == problem_.order()) ||
        problem.psi().label() != problem_.psi().label())
        throw HypothesisError("with_problem: frame parameters differ");
    PicardSolver s = *this;
    s.problem_ = std::move(problem);
    s.params_ = estimate_params(s.problem_);
    return s;
}

GridFunction PicardSolver::default_initial() const
{
    return GridFunction::constant_weighted(frame_, problem_.y0());
}

GridFunction PicardSolver::step(const GridFunction& y) const
{
    const Frame& fr = *frame_;
    const int n = fr.N();
    const double xi = fr.xi();
    const double c0 = problem_.c0();

    // g sampled along the current iterate (unweighted). For xi < 1 the
    // unweighted value blows up at t = 0; g's node-0 sample uses the first
    // interior node, whose contribution enters only through one vanishing
    // cell of the quadrature.
    std::vector<double> gvals(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) {
        const double yi = y.value_at(i);
        const double gi = problem_.g_at(fr.mesh().node(i), yi);
        if (!std::isfinite(gi)) {
            std::ostringstream os;
            os << "g(t, y) not finite at node " << i;
            throw HypothesisError(os.str());
        }
        gvals[static_cast<std::size_t>(i)] = gi;
    }
    gvals[0] = xi < 1.0 ? gvals[1] : problem_.g_at(0.0, y.weighted_at(0));
    if (!std::isfinite(gvals[0]))
        throw HypothesisError("g(t, y) not finite at node 0");

    std::vector<double> integral(gvals.size());
    integral_op_->apply(gvals, integral, config_.exec);

    std::vector<double> w_out(gvals.size());
    w_out[0] = problem_.y0();  // f(0, anchor) * c0 by construction
    for (int i = 1; i <= n; ++i) {
        const double yi = y.value_at(i);
        const double fi = problem_.f_at(fr.mesh().node(i), yi);
        if (fi == 0.0) {
            std::ostringstream os;
            os << "hypothesis violation: f vanishes at node " << i;
            throw HypothesisError(os.str());
        }
        w_out[static_cast<std::size_t>(i)] =
            fi * (c0 + fr.weight(i) * integral[static_cast<std::size_t>(i)]);
    }
    return GridFunction(frame_, std::move(w_out));
}

double PicardSolver::residual(const GridFunction& y) const
{
    return weighted_norm_diff(y, step(y)).value;
}

std::pair<GridFunction, SolverReport> PicardSolver::solve(std::optional<GridFunction> initial) const
{
    SolverReport report;
    const ExistenceResult printed = existence_check(problem_, params_, ExistenceMode::Printed);
    const ExistenceResult proof = existence_check(problem_, params_, ExistenceMode::Proof);
    report.existence_value = printed.value;
    report.existence_value_proof = proof.value;
    report.existence_ok = printed.ok;
    report.params_source = params_.source;
    {
        const double mu = problem_.order().mu();
        const double e = mu + 1.0 - problem_.order().xi();
        const double du = problem_.psi().increment(problem_.T());
        report.radius_R = params_.K * (std::abs(problem_.c0()) +
                                       params_.h_norm * std::pow(du, e) / gamma_fn(mu + 1.0));
    }

    GridFunction y = initial ? std::move(*initial) : default_initial();
    if (initial)
        require_same_frame(y, default_initial(), "solve initial iterate");

    const double d = config_.damping;
    for (int k = 0; k < config_.max_iters; ++k) {
        GridFunction next = step(y);
        if (d != 1.0) {
            for (int i = 0; i <= frame_->N(); ++i)
                next.weighted_at(i) = (1.0 - d) * y.weighted_at(i) + d * next.weighted_at(i);
        }
        if (!next.all_finite()) {
            report.converged = false;
            report.iterations = k + 1;
            report.final_residual = std::numeric_limits<double>::infinity();
            return {std::move(y), report};
        }
        const double delta = weighted_norm_diff(next, y).value;
        report.increment_history.push_back(delta);
        y = std::move(next);
        if (delta < config_.picard_tol) {
            report.converged = true;
            report.iterations = k + 1;
            report.final_residual = residual(y);
            return {std::move(y), report};
        }
    }
    report.converged = false;
    report.iterations = config_.max_iters;
    report.final_residual = residual(y);
    return {std::move(y), report};
}

} // namespace psifrac
