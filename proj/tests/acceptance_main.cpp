// Acceptance suite: one pass/fail line per criterion, each pinned to its
// stated tolerance. Exit status 0 only if every criterion passes.

#include "psifrac/extremal.hpp"
#include "psifrac/inequalities.hpp"
#include "psifrac/io.hpp"
#include "psifrac/special_functions.hpp"

#include "reference_eval.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace psifrac;

namespace {

struct Criterion {
    int id;
    std::string name;
    bool pass = false;
    std::string detail;
};

double now_s()
{
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

PsiFunction preset(int k)
{
    switch (k) {
    case 0: return PsiFunction::identity();
    case 1: return PsiFunction::power(2.0);
    default: return PsiFunction::shifted_log();
    }
}

int node_at(const Frame& fr, double t)
{
    int best = 1;
    double dist = 1e300;
    for (int i = 1; i <= fr.N(); ++i) {
        const double d = std::abs(fr.mesh().node(i) - t);
        if (d < dist) {
            dist = d;
            best = i;
        }
    }
    return best;
}

HybridProblem make_problem(const std::string& f, const std::string& g, double y0,
                           double mu, double nu, PsiFunction psi, double T = 1.0)
{
    return HybridProblem(Expr::parse(f, {"t", "y"}), Expr::parse(g, {"t", "y"}), y0,
                         std::nullopt, T, std::move(psi), FractionalOrder(mu, nu));
}

constexpr double kDeltas[3] = {1.0, 1.5, 2.0};
constexpr double kMus[3] = {0.3, 0.5, 0.7};
constexpr double kNus[3] = {0.0, 0.5, 1.0};

// Max relative power-rule error over all nodes (worst_all) and over the four
// fixed abscissae t/T in {0.25, 0.5, 0.75, 1} (worst_fixed).
void power_rule_errors(const PsiFunction& psi, double delta, double mu, int n,
                       double& worst_all, double& worst_fixed)
{
    const FramePtr fr = make_frame(GradedMesh(1.0, n, 2.0), psi, FractionalOrder(mu, 0.5));
    const double sigma = delta - 1.0;
    std::vector<double> vals(fr->u().size());
    for (std::size_t i = 0; i < vals.size(); ++i)
        vals[i] = std::pow(fr->u()[i], sigma);
    vals[0] = sigma == 0.0 ? 1.0 : 0.0;
    const auto out =
        rl_integral_profile(fr->u(), vals, SingularHead{sigma, 1.0}, mu, Exec::Parallel);
    const double c = gamma_fn(delta) / gamma_fn(mu + delta);
    worst_all = 0.0;
    for (int j = 1; j <= n; ++j) {
        const double expect = c * std::pow(fr->u_at(j), mu + sigma);
        worst_all = std::max(worst_all,
                             std::abs(out[static_cast<std::size_t>(j)] - expect) / expect);
    }
    worst_fixed = 0.0;
    for (double tfrac : {0.25, 0.5, 0.75, 1.0}) {
        const int j = node_at(*fr, tfrac);
        const double expect = c * std::pow(fr->u_at(j), mu + sigma);
        worst_fixed = std::max(
            worst_fixed, std::abs(out[static_cast<std::size_t>(j)] - expect) / expect);
    }
}

Criterion criterion_1_power_rule()
{
    Criterion c{1, "power rule, 27-case sweep, rel < 1e-4, N=2048, < 30 s"};
    const double t0 = now_s();
    double worst = 0.0;
    for (int pk = 0; pk < 3; ++pk)
        for (double delta : kDeltas)
            for (double mu : kMus) {
                double all = 0.0, fixed = 0.0;
                power_rule_errors(preset(pk), delta, mu, 2048, all, fixed);
                worst = std::max(worst, all);
            }
    const double elapsed = now_s() - t0;
    c.pass = worst < 1e-4 && elapsed < 30.0;
    std::ostringstream os;
    os << "max rel err " << worst << ", " << elapsed << " s";
    c.detail = os.str();
    return c;
}

Criterion criterion_2_semigroup()
{
    Criterion c{2, "semigroup: nested vs direct, abs err < 1e-4"};
    const double chi = 0.4;
    double worst = 0.0;
    for (int pk = 0; pk < 3; ++pk)
        for (double delta : kDeltas)
            for (double mu : kMus) {
                const FramePtr fr = make_frame(GradedMesh(1.0, 2048, 2.0), preset(pk),
                                               FractionalOrder(mu, 0.5));
                const double sigma = delta - 1.0;
                SpaceProfile p;
                p.head = SingularHead{sigma, 1.0};
                p.values.resize(fr->u().size());
                for (std::size_t i = 0; i < p.values.size(); ++i)
                    p.values[i] = std::pow(fr->u()[i], sigma);
                p.values[0] = sigma == 0.0 ? 1.0 : 0.0;
                const SpaceProfile inner = psi_rl_apply(*fr, p, chi, Exec::Parallel);
                for (double tfrac : {0.25, 0.5, 1.0}) {
                    const int j = node_at(*fr, tfrac);
                    const double nested =
                        rl_integral_at(fr->u(), inner.values, inner.head, mu, j);
                    const double direct =
                        rl_integral_at(fr->u(), p.values, p.head, mu + chi, j);
                    worst = std::max(worst, std::abs(nested - direct));
                }
            }
    c.pass = worst < 1e-4;
    std::ostringstream os;
    os << "max abs err " << worst;
    c.detail = os.str();
    return c;
}

Criterion criterion_3_annihilation()
{
    Criterion c{3, "annihilation of (psi-inc)^{xi-1}: |D| < 1e-3 on [0.2T, T]"};
    double worst = 0.0;
    for (double mu : kMus)
        for (double nu : kNus)
            for (int pk = 0; pk < 3; ++pk) {
                const FramePtr fr = make_frame(GradedMesh(1.0, 1024, 2.0), preset(pk),
                                               FractionalOrder(mu, nu));
                const GridFunction h = GridFunction::constant_weighted(fr, 1.0);
                const HilferProfile d = psi_hilfer_profile(h, {2, Exec::Parallel});
                for (int j = d.first_valid; j <= fr->N(); ++j) {
                    if (fr->mesh().node(j) < 0.2)
                        continue;
                    worst = std::max(worst,
                                     std::abs(d.derivative[static_cast<std::size_t>(j)]));
                }
            }
    c.pass = worst < 1e-3;
    std::ostringstream os;
    os << "max |D| " << worst << " over 27 cases";
    c.detail = os.str();
    return c;
}

Criterion criterion_4_inversion()
{
    Criterion c{4, "inversion D I^mu h = h within 1e-3 abs on [0.1T, T]"};
    double worst = 0.0;
    const auto run = [&](const PsiFunction& psi, const std::function<double(double)>& h,
                         double mu, double nu) {
        const FramePtr fr =
            make_frame(GradedMesh(1.0, 1024, 2.0), psi, FractionalOrder(mu, nu));
        const SpaceProfile base = profile_from_callable(*fr, h);
        const SpaceProfile integ = psi_rl_apply(*fr, base, mu, Exec::Parallel);
        const HilferProfile rec = psi_hilfer_profile(*fr, integ, {2, Exec::Parallel});
        for (int j = rec.first_valid; j <= fr->N(); ++j) {
            if (fr->mesh().node(j) < 0.1)
                continue;
            worst = std::max(worst, std::abs(rec.derivative[static_cast<std::size_t>(j)] -
                                             h(fr->mesh().node(j))));
        }
    };
    for (double mu : kMus)
        for (double nu : kNus) {
            run(PsiFunction::identity(), [](double t) { return std::sin(t); }, mu, nu);
            run(PsiFunction::shifted_log(), [](double t) { return std::sin(t); }, mu, nu);
        }
    run(PsiFunction::identity(), [](double t) { return std::exp(-t); }, 0.5, 0.5);
    c.pass = worst < 1e-3;
    std::ostringstream os;
    os << "max abs err " << worst;
    c.detail = os.str();
    return c;
}

Criterion criterion_5_ml_identity()
{
    Criterion c{5, "Mittag-Leffler eigen-identity, rel < 1e-3 across sweep, N=2048"};
    double worst = 0.0;
    double worst_eigen_caputo = 0.0;
    for (double L : {0.25, 0.5})
        for (double mu : kMus)
            for (double nu : kNus) {
                const FramePtr fr = make_frame(GradedMesh(1.0, 2048, 2.0),
                                               PsiFunction::identity(),
                                               FractionalOrder(mu, nu));
                const int n = fr->N();
                for (int j = node_at(*fr, 0.2); j <= n; j += std::max(1, n / 6)) {
                    const MlIdentityCheck check =
                        verify_ml_identity(L, fr, j, {2, Exec::Parallel});
                    worst = std::max(worst, check.rel_err);
                    if (nu == 1.0)
                        worst_eigen_caputo = std::max(worst_eigen_caputo, check.rel_err_eigen);
                }
            }
    // The term-by-term series value (the rho-mu-1 power-rule convention) must
    // hold across the whole sweep; the printed eigen equality additionally
    // holds on the Caputo slice, where the constant term is annihilated.
    c.pass = worst < 1e-3 && worst_eigen_caputo < 1e-3;
    std::ostringstream os;
    os << "max rel err " << worst << " (eigen form on nu=1 slice: " << worst_eigen_caputo
       << ")";
    c.detail = os.str();
    return c;
}

struct SolveRecord {
    double y0;
    GridFunction solution;
    SolverReport report;
    double picard_tol;
    const PicardSolver* solver = nullptr;
};

Criterion criterion_6_caputo(std::vector<SolveRecord>& records,
                             std::vector<PicardSolver>& keep_alive)
{
    Criterion c{6, "Caputo reduction: linear vs E_mu, forcing vs 1/Gamma, < 60 s"};
    const double t0 = now_s();
    double worst_linear = 0.0, worst_forcing = 0.0;
    SolverConfig cfg;
    cfg.mesh_n = 2048;
    cfg.picard_tol = 1e-11;
    cfg.max_iters = 400;
    for (double mu : kMus) {
        keep_alive.emplace_back(make_problem("1", "y", 1.0, mu, 1.0, PsiFunction::identity()),
                                cfg);
        const PicardSolver& linear = keep_alive.back();
        auto [y, report] = linear.solve();
        if (!report.converged) {
            c.detail = "linear solve failed to converge";
            return c;
        }
        const double expect = mittag_leffler(mu, 1.0);
        worst_linear = std::max(worst_linear,
                                std::abs(y.weighted_at(y.N()) - expect) / expect);
        records.push_back({1.0, y, report, cfg.picard_tol, &linear});

        keep_alive.emplace_back(make_problem("1", "1", 0.0, mu, 1.0, PsiFunction::identity()),
                                cfg);
        const PicardSolver& forcing = keep_alive.back();
        auto [z, zreport] = forcing.solve();
        if (!zreport.converged) {
            c.detail = "forcing solve failed to converge";
            return c;
        }
        const double expect_f = 1.0 / gamma_fn(mu + 1.0);
        worst_forcing = std::max(worst_forcing, std::abs(z.weighted_at(z.N()) - expect_f));
        records.push_back({0.0, z, zreport, cfg.picard_tol, &forcing});
    }
    const double elapsed = now_s() - t0;
    c.pass = worst_linear < 1e-3 && worst_forcing < 1e-4 && elapsed < 60.0;
    std::ostringstream os;
    os << "E_mu rel " << worst_linear << ", forcing abs " << worst_forcing << ", "
       << elapsed << " s";
    c.detail = os.str();
    return c;
}

Criterion criterion_7_fixed_point(const std::vector<SolveRecord>& records)
{
    Criterion c{7, "fixed-point defect < 10 tol; weighted initial value exact"};
    bool ok = !records.empty();
    double worst_ratio = 0.0;
    for (const SolveRecord& rec : records) {
        const double residual = rec.solver->residual(rec.solution);
        worst_ratio = std::max(worst_ratio, residual / rec.picard_tol);
        ok = ok && rec.report.converged && residual < 10.0 * rec.picard_tol &&
             rec.solution.weighted_at(0) == rec.y0;
    }
    c.pass = ok;
    std::ostringstream os;
    os << records.size() << " solves, worst residual/tol " << worst_ratio;
    c.detail = os.str();
    return c;
}

Criterion criterion_8_touchpoint()
{
    Criterion c{8, "touchpoint derivative sign, 50 randomized cases, zero failures"};
    std::mt19937 rng(424242u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = 512;
    int failures = 0;
    double worst_violation = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double mu = 0.15 + 0.7 * unit(rng);
        const double nu = unit(rng);
        const FramePtr fr =
            make_frame(GradedMesh(1.0, n, 2.0), preset(k % 3), FractionalOrder(mu, nu));
        const int t1 = static_cast<int>((0.3 + 0.6 * unit(rng)) * n);
        const double v1 = fr->u_at(t1);
        const double scale_c = std::pow(10.0, -1.0 + 2.0 * unit(rng));
        const bool dual = (k % 2) == 1;
        const double sign = dual ? -1.0 : 1.0;

        std::vector<double> w(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            const double v = fr->u_at(i);
            double wi = 0.0;
            switch (k % 3) {
            case 0: wi = -scale_c * (v1 - v); break;
            case 1: wi = -scale_c * (v1 - v) * (1.0 + 0.5 * v); break;
            default: wi = v <= v1 ? -scale_c * (v1 - v) * (v1 - v) : 0.0; break;
            }
            w[static_cast<std::size_t>(i)] = sign * wi;
        }
        TouchpointCase tc{GridFunction(fr, std::move(w)), t1,
                          dual ? TouchpointCase::SignBefore::NonNegative
                               : TouchpointCase::SignBefore::NonPositive};
        const double derivative = touchpoint_derivative(tc, {2, Exec::Parallel});
        const double scale = weighted_norm(tc.m).value;
        const double violation =
            dual ? std::max(0.0, derivative) : std::max(0.0, -derivative);
        worst_violation = std::max(worst_violation, violation / std::max(scale, 1e-300));
        if (violation > 1e-6 * scale)
            ++failures;
    }
    c.pass = failures == 0;
    std::ostringstream os;
    os << "failures " << failures << ", worst violation/scale " << worst_violation;
    c.detail = os.str();
    return c;
}

struct Benchmark {
    const char* f;
    const char* g;
    double y0;
    double mu;
    double nu;
    const char* psi;
};

const Benchmark kBenchmarks[5] = {
    {"1", "0.3*cos(y)", 1.0, 0.5, 1.0, "identity"},
    {"1", "1/(1+y^2)", 0.5, 0.3, 0.5, "power:2"},
    {"2+0.1*sin(y)", "0.4*cos(t*y)", 1.0, 0.5, 0.5, "identity"},
    {"1", "0.5*y/(1+y^2)", 0.8, 0.7, 0.0, "shifted-log"},
    {"2-0.2/(1+y^2)", "0.3*sin(t)+0.2*cos(y)", -0.5, 0.4, 0.6, "power:1.5"},
};

Criterion criterion_9_extremal()
{
    Criterion c{9, "extremal ladders monotone, diffs shrinking, sandwich holds"};
    bool ok = true;
    std::ostringstream os;
    for (const Benchmark& b : kBenchmarks) {
        SolverConfig cfg;
        cfg.mesh_n = 512;
        cfg.picard_tol = 1e-11;
        cfg.max_iters = 600;
        cfg.damping = 0.5;  // benchmark 3 oscillates undamped
        const PicardSolver solver(
            make_problem(b.f, b.g, b.y0, b.mu, b.nu, PsiFunction::from_spec(b.psi, 1.0)),
            cfg);
        ExtremalConfig ec;
        ec.eps0 = 0.2;
        ec.stop_tol = 1e-5;
        ec.max_levels = 10;

        const auto [base, base_report] = solver.solve();
        const ExtremalResult maximal = maximal_solution(solver, ec);
        const ExtremalResult minimal = minimal_solution(solver, ec);

        bool problem_ok = base_report.converged && maximal.report.all_levels_converged &&
                          minimal.report.all_levels_converged &&
                          maximal.report.ladder_monotone && minimal.report.ladder_monotone;

        const auto& diffs_max = maximal.report.level_diffs;
        for (std::size_t k = diffs_max.size() / 2; k + 1 < diffs_max.size(); ++k)
            problem_ok = problem_ok && diffs_max[k + 1] <= diffs_max[k] * (1.0 + 1e-9);
        const auto& diffs_min = minimal.report.level_diffs;
        for (std::size_t k = diffs_min.size() / 2; k + 1 < diffs_min.size(); ++k)
            problem_ok = problem_ok && diffs_min[k + 1] <= diffs_min[k] * (1.0 + 1e-9);

        problem_ok = problem_ok &&
                     precedence_violations(minimal.extremal, base, false, 1e-8).empty() &&
                     precedence_violations(base, maximal.extremal, false, 1e-8).empty();
        if (!problem_ok)
            os << " [fail: f=" << b.f << ", g=" << b.g << "]";
        ok = ok && problem_ok;
    }
    c.pass = ok;
    c.detail = "5 benchmark problems" + os.str();
    return c;
}

Criterion criterion_10_comparison()
{
    Criterion c{10, "comparison bounds: sub-solutions pass, controls fail with nodes"};
    bool ok = true;
    std::ostringstream os;
    for (int bi : {0, 2}) {
        const Benchmark& b = kBenchmarks[bi];
        SolverConfig cfg;
        cfg.mesh_n = 512;
        cfg.picard_tol = 1e-11;
        cfg.max_iters = 600;
        cfg.damping = 0.5;
        const PicardSolver solver(
            make_problem(b.f, b.g, b.y0, b.mu, b.nu, PsiFunction::from_spec(b.psi, 1.0)),
            cfg);
        ExtremalConfig ec;
        ec.eps0 = 0.2;
        ec.stop_tol = 1e-5;
        ec.max_levels = 10;

        // Sub-solution: solve with defect -0.2 and lowered initial value.
        const auto [sub, sub_report] =
            solve_perturbed(solver, -0.2);
        const BoundVerdict good = comparison_bound(sub, solver, BoundSide::Lower, ec);
        ok = ok && sub_report.converged && good.pass;

        // Strict comparison between the base solution and a raised super-solution.
        const auto [base, base_report] = solver.solve();
        const auto [super_sol, super_report] = solve_perturbed(solver, 0.25);
        const ComparisonVerdict strict = strict_comparison_check(
            base, super_sol, solver.problem(), StrictSide::ZSide, 1e-9, {2, Exec::Parallel});
        ok = ok && base_report.converged && super_report.converged && strict.pass;

        // Negative control: maximal solution plus a tail bump must fail with
        // exactly the bumped nodes reported.
        ExtremalResult maximal = maximal_solution(solver, ec);
        GridFunction bad = maximal.extremal;
        std::vector<int> bumped;
        for (int i = bad.N() / 2; i <= bad.N(); ++i) {
            bad.weighted_at(i) += 0.5;
            bumped.push_back(i);
        }
        const BoundVerdict control =
            comparison_bound(bad, solver, BoundSide::Lower, ec, false);
        ok = ok && !control.pass && control.violating_nodes == bumped;
        if (!ok)
            os << " [fail on benchmark " << bi << "]";
    }
    c.pass = ok;
    c.detail = "2 problems, positive + strict + negative control" + os.str();
    return c;
}

Criterion criterion_11_existence_gate()
{
    Criterion c{11, "existence gate worked example, both exponent modes"};
    const HybridProblem p = make_problem("1", "0", 1.0, 0.5, 1.0, PsiFunction::identity());
    const ExistenceParams params{0.1, 1.0, 1.0};
    const ExistenceResult printed = existence_check(p, params, ExistenceMode::Printed);
    const ExistenceResult proof = existence_check(p, params, ExistenceMode::Proof);
    const double expect = 0.21283791670955126;  // 0.1 (1 + 1/Gamma(1.5))
    c.pass = std::abs(printed.value - expect) < 1e-4 &&
             std::abs(proof.value - printed.value) < 1e-15 && printed.ok && proof.ok;
    std::ostringstream os;
    os << "printed " << printed.value << ", proof " << proof.value;
    c.detail = os.str();
    return c;
}

Criterion criterion_12_parser()
{
    Criterion c{12, "parser differential test (1000 expressions) + located errors"};
    const std::vector<std::string> vars = {"t", "y"};
    refeval::ExpressionGenerator gen(31415u);
    std::mt19937 rng(27u);
    std::uniform_real_distribution<double> bind(0.2, 2.5);

    int compared = 0, attempts = 0;
    double worst = 0.0;
    bool ok = true;
    while (compared < 1000 && attempts < 10000) {
        ++attempts;
        const std::string src = gen.generate(vars);
        const std::vector<double> vals = {bind(rng), bind(rng)};
        bool lib_threw = false, ref_threw = false;
        double lib = 0.0, ref = 0.0;
        try {
            lib = Expr::parse(src, vars).eval(vals);
        } catch (const EvalError&) {
            lib_threw = true;
        }
        try {
            ref = refeval::eval(src, vars, vals);
        } catch (const refeval::RefError&) {
            ref_threw = true;
        }
        if (lib_threw != ref_threw) {
            ok = false;
            break;
        }
        if (lib_threw || !std::isfinite(lib) || std::abs(ref) > 1e12)
            continue;
        worst = std::max(worst, std::abs(lib - ref) / std::max(1.0, std::abs(ref)));
        ++compared;
    }
    ok = ok && compared >= 1000 && worst <= 1e-12;

    int located = 0;
    const std::vector<std::string> malformed = {"",     "2+",      "(2",    "2)",
                                                "foo(2)", "pow(2)", "sin()", "t y",
                                                "1/",   "2 + * 3", "x+1",   "..+1"};
    for (const std::string& src : malformed) {
        try {
            Expr::parse(src, vars);
        } catch (const ExprError& e) {
            if (e.offset() <= src.size())
                ++located;
        }
    }
    ok = ok && located == static_cast<int>(malformed.size());
    c.pass = ok;
    std::ostringstream os;
    os << compared << " comparisons, worst rel dev " << worst << ", " << located << "/"
       << malformed.size() << " malformed inputs located";
    c.detail = os.str();
    return c;
}

Criterion criterion_13_refinement()
{
    Criterion c{13, "power-rule errors shrink >= 3x per mesh doubling (identity)"};
    bool ok = true;
    double worst_ratio = 1e300;
    for (double mu : kMus)
        for (double delta : kDeltas) {
            double all = 0.0;
            double e1024 = 0.0, e2048 = 0.0, e4096 = 0.0;
            power_rule_errors(PsiFunction::identity(), delta, mu, 1024, all, e1024);
            if (e1024 < 1e-11)
                continue;  // already at the floating-point floor
            power_rule_errors(PsiFunction::identity(), delta, mu, 2048, all, e2048);
            power_rule_errors(PsiFunction::identity(), delta, mu, 4096, all, e4096);
            const double r1 = e1024 / e2048;
            const double r2 = e2048 / e4096;
            worst_ratio = std::min({worst_ratio, r1, r2});
            ok = ok && r1 >= 3.0 && r2 >= 3.0;
        }
    c.pass = ok;
    std::ostringstream os;
    os << "worst doubling ratio " << worst_ratio;
    c.detail = os.str();
    return c;
}

} // namespace

int main()
{
    std::vector<Criterion> results;
    std::vector<SolveRecord> solve_records;
    std::vector<PicardSolver> keep_alive;
    keep_alive.reserve(16);

    const auto guard = [&](const std::function<Criterion()>& fn, int id,
                           const char* name) {
        try {
            results.push_back(fn());
        } catch (const std::exception& e) {
            results.push_back({id, name, false, std::string("exception: ") + e.what()});
        }
    };

    guard(criterion_1_power_rule, 1, "power rule");
    guard(criterion_2_semigroup, 2, "semigroup");
    guard(criterion_3_annihilation, 3, "annihilation");
    guard(criterion_4_inversion, 4, "inversion");
    guard(criterion_5_ml_identity, 5, "mittag-leffler identity");
    guard([&] { return criterion_6_caputo(solve_records, keep_alive); }, 6,
          "caputo reduction");
    guard([&] { return criterion_7_fixed_point(solve_records); }, 7, "fixed-point defect");
    guard(criterion_8_touchpoint, 8, "touchpoint sign");
    guard(criterion_9_extremal, 9, "extremal ladder");
    guard(criterion_10_comparison, 10, "comparison bounds");
    guard(criterion_11_existence_gate, 11, "existence gate");
    guard(criterion_12_parser, 12, "parser differential");
    guard(criterion_13_refinement, 13, "mesh refinement");

    bool all = true;
    for (const Criterion& c : results) {
        std::printf("%s  %2d  %-62s  %s\n", c.pass ? "PASS" : "FAIL", c.id,
                    c.name.c_str(), c.detail.c_str());
        all = all && c.pass;
    }
    std::printf("%s: %zu/%zu criteria passed\n", all ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                static_cast<std::size_t>(
                    std::count_if(results.begin(), results.end(),
                                  [](const Criterion& c) { return c.pass; })),
                results.size());
    return all ? 0 : 1;
}
