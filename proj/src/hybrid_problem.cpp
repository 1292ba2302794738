#include "psifrac/hybrid_problem.hpp"

#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

namespace psifrac {

namespace {

void require_tv_variables(const Expr& e, const char* which)
{
    // Evaluation is positional: the first slot is time, the second the
    // state (conventionally y; the uniqueness machinery passes (t, m)).
    if (e.variables().size() != 2 || e.variables()[0] != "t") {
        std::ostringstream os;
        os << which << " must be parsed over two variables starting with t";
        throw HypothesisError(os.str());
    }
}

} // namespace

HybridProblem::HybridProblem(Expr f, Expr g, double y0, std::optional<double> y0_anchor,
                             double T, PsiFunction psi, FractionalOrder order)
    : f_(std::move(f)), g_(std::move(g)), y0_(y0), anchor_(y0_anchor), T_(T),
      psi_(std::move(psi)), order_(order)
{
    require_tv_variables(f_, "f");
    require_tv_variables(g_, "g");
    if (!(T_ > 0.0))
        throw HypothesisError("horizon T must be positive");
    c0();  // validates finiteness of the initial ratio
}

double HybridProblem::f_at(double t, double y) const
{
    return f_.eval2(t, y);
}

double HybridProblem::g_at(double t, double y) const
{
    return g_.eval2(t, y) + g_shift_;
}

double HybridProblem::c0() const
{
    const double f0 = f_at(0.0, y0_anchor());
    if (f0 == 0.0)
        throw HypothesisError("f(0, y0_anchor) vanishes; c0 = y0/f(0, y0_anchor) undefined");
    const double c = y0_ / f0;
    if (!std::isfinite(c))
        throw HypothesisError("c0 = y0/f(0, y0_anchor) is not finite");
    return c;
}

void HybridProblem::validate_nonvanishing(const LatticeSpec& lattice) const
{
    for (int it = 0; it <= lattice.nt; ++it) {
        const double t = T_ * static_cast<double>(it) / lattice.nt;
        for (int iy = 0; iy <= lattice.ny; ++iy) {
            const double y =
                lattice.y_min + (lattice.y_max - lattice.y_min) * iy / lattice.ny;
            const double v = f_at(t, y);
            if (!std::isfinite(v) || v == 0.0) {
                std::ostringstream os;
                os << "hypothesis violation: f(" << t << ", " << y << ") = " << v;
                throw HypothesisError(os.str());
            }
        }
    }
}

bool HybridProblem::ratio_map_increasing(const LatticeSpec& lattice) const
{
    for (int it = 0; it <= lattice.nt; ++it) {
        const double t = T_ * static_cast<double>(it) / lattice.nt;
        double prev_ratio = 0.0;
        bool have_prev = false;
        for (int iy = 0; iy <= lattice.ny; ++iy) {
            const double y =
                lattice.y_min + (lattice.y_max - lattice.y_min) * iy / lattice.ny;
            const double fv = f_at(t, y);
            if (fv == 0.0)
                return false;
            const double ratio = y / fv;
            if (have_prev && !(ratio > prev_ratio))
                return false;
            prev_ratio = ratio;
            have_prev = true;
        }
    }
    return true;
}

HybridProblem HybridProblem::perturbed(double eps) const
{
    HybridProblem p = *this;
    p.y0_ += eps;
    if (p.anchor_)
        *p.anchor_ += eps;
    p.g_shift_ += eps;
    return p;
}

void ExistenceParams::validate() const
{
    if (!(L >= 0.0) || !(h_norm >= 0.0) || !(K > 0.0))
        throw HypothesisError("existence params must satisfy L >= 0, h_norm >= 0, K > 0");
}

ExistenceParams estimate_params(const HybridProblem& problem, const LatticeSpec& lattice)
{
    ExistenceParams params;
    params.source = ParamSource::Estimated;
    params.K = 0.0;

    std::vector<double> ys(static_cast<std::size_t>(lattice.ny) + 1);
    for (int iy = 0; iy <= lattice.ny; ++iy)
        ys[static_cast<std::size_t>(iy)] =
            lattice.y_min + (lattice.y_max - lattice.y_min) * iy / lattice.ny;

    std::vector<double> fvals(ys.size());
    for (int it = 0; it <= lattice.nt; ++it) {
        const double t = problem.T() * static_cast<double>(it) / lattice.nt;
        for (std::size_t iy = 0; iy < ys.size(); ++iy) {
            fvals[iy] = problem.f_at(t, ys[iy]);
            params.K = std::max(params.K, std::abs(fvals[iy]));
            params.h_norm = std::max(params.h_norm, std::abs(problem.g_at(t, ys[iy])));
        }
        for (std::size_t a = 0; a < ys.size(); ++a)
            for (std::size_t b = a + 1; b < ys.size(); ++b) {
                const double quot =
                    std::abs(fvals[a] - fvals[b]) / std::abs(ys[a] - ys[b]);
                params.L = std::max(params.L, quot);
            }
    }
    if (params.K == 0.0)
        params.K = 1.0;
    return params;
}

} // namespace psifrac
