#include "psifrac/frac_operators.hpp"

#include "psifrac/special_functions.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace psifrac {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double head_limit_value(const SingularHead& head)
{
    if (head.sigma == 0.0)
        return head.w0;
    return head.sigma > 0.0 ? 0.0 : kNaN;
}

} // namespace

namespace kernels {

int max_threads()
{
#if defined(PSIFRAC_HAVE_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace kernels

SpaceProfile profile_from_grid(const GridFunction& h)
{
    SpaceProfile p;
    p.head.sigma = h.frame().xi() - 1.0;
    p.head.w0 = h.weighted_at(0);
    p.values = h.values();
    if (p.head.sigma == 0.0)
        p.values[0] = p.head.w0;
    return p;
}

SpaceProfile profile_from_callable(const Frame& frame,
                                   const std::function<double(double)>& h,
                                   std::optional<SingularHead> head)
{
    SpaceProfile p;
    const int n = frame.N();
    p.values.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i)
        p.values[static_cast<std::size_t>(i)] = h(frame.mesh().node(i));
    if (head) {
        p.head = *head;
        p.values[0] = head_limit_value(p.head);
    } else {
        p.values[0] = h(0.0);
        p.head = SingularHead{0.0, p.values[0]};
    }
    return p;
}

SpaceProfile psi_rl_apply(const Frame& frame, const SpaceProfile& in, double mu,
                          Exec exec)
{
    SpaceProfile out;
    out.values = rl_integral_profile(frame.u(), in.values, in.head, mu, exec);
    out.head.sigma = in.head.sigma + mu;
    out.head.w0 = in.head.w0 * std::exp(log_gamma(in.head.sigma + 1.0) -
                                        log_gamma(in.head.sigma + 1.0 + mu));
    return out;
}

std::vector<double> psi_rl_integral_profile(const GridFunction& h, double mu, Exec exec)
{
    const SpaceProfile p = profile_from_grid(h);
    return rl_integral_profile(h.frame().u(), p.values, p.head, mu, exec);
}

std::vector<double> psi_rl_integral_profile(const Frame& frame,
                                            const std::function<double(double)>& h,
                                            double mu, std::optional<SingularHead> head,
                                            Exec exec)
{
    const SpaceProfile p = profile_from_callable(frame, h, head);
    return rl_integral_profile(frame.u(), p.values, p.head, mu, exec);
}

double psi_rl_integral(const GridFunction& h, double mu, int node)
{
    const SpaceProfile p = profile_from_grid(h);
    return rl_integral_at(h.frame().u(), p.values, p.head, mu, node);
}

double psi_rl_integral(const Frame& frame, const std::function<double(double)>& h,
                       double mu, int node, std::optional<SingularHead> head)
{
    const SpaceProfile p = profile_from_callable(frame, h, head);
    return rl_integral_at(frame.u(), p.values, p.head, mu, node);
}

std::vector<double> u_derivative_profile(const Frame& frame, std::span<const double> p)
{
    const std::vector<double>& u = frame.u();
    const int n = frame.N();
    std::vector<double> q(u.size(), kNaN);

    const auto centered = [&](int i) {
        const double dm = u[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i) - 1];
        const double dp = u[static_cast<std::size_t>(i) + 1] - u[static_cast<std::size_t>(i)];
        return -p[static_cast<std::size_t>(i) - 1] * dp / (dm * (dm + dp)) +
               p[static_cast<std::size_t>(i)] * (dp - dm) / (dm * dp) +
               p[static_cast<std::size_t>(i) + 1] * dm / (dp * (dm + dp));
    };
    const auto forward = [&](int i) {
        // Three-point one-sided stencil using nodes i, i+1, i+2.
        const double d1 = u[static_cast<std::size_t>(i) + 1] - u[static_cast<std::size_t>(i)];
        const double d2 = u[static_cast<std::size_t>(i) + 2] - u[static_cast<std::size_t>(i) + 1];
        return -p[static_cast<std::size_t>(i)] * (2.0 * d1 + d2) / (d1 * (d1 + d2)) +
               p[static_cast<std::size_t>(i) + 1] * (d1 + d2) / (d1 * d2) -
               p[static_cast<std::size_t>(i) + 2] * d1 / (d2 * (d1 + d2));
    };

    for (int i = 1; i < n; ++i) {
        if (i == 1 && !std::isfinite(p[0])) {
            q[1] = forward(1);
            continue;
        }
        q[static_cast<std::size_t>(i)] = centered(i);
    }
    // One-sided at the last node (nodes n-2, n-1, n).
    {
        const double d1 = u[static_cast<std::size_t>(n) - 1] - u[static_cast<std::size_t>(n) - 2];
        const double d2 = u[static_cast<std::size_t>(n)] - u[static_cast<std::size_t>(n) - 1];
        q[static_cast<std::size_t>(n)] =
            p[static_cast<std::size_t>(n) - 2] * d2 / (d1 * (d1 + d2)) -
            p[static_cast<std::size_t>(n) - 1] * (d1 + d2) / (d1 * d2) +
            p[static_cast<std::size_t>(n)] * (d1 + 2.0 * d2) / (d2 * (d1 + d2));
    }
    return q;
}

HilferProfile psi_hilfer_profile(const Frame& frame, const SpaceProfile& in,
                                 const HilferOptions& opts)
{
    const double inner_order = frame.order().inner_order();
    const double outer_order = frame.order().outer_order();
    const std::vector<double>& u = frame.u();

    HilferProfile result;
    result.first_valid = std::max(opts.exclusion_index, 1);

    // Stage 1: inner integral of order (1-nu)(1-mu); identity when zero.
    double inner_head_exp;
    double inner_head_w0;
    if (inner_order == 0.0) {
        result.inner = in.values;
        result.inner[0] = head_limit_value(in.head);
        inner_head_exp = in.head.sigma;
        inner_head_w0 = in.head.w0;
    } else {
        result.inner = rl_integral_profile(u, in.values, in.head, inner_order, opts.exec);
        inner_head_exp = in.head.sigma + inner_order;
        inner_head_w0 = in.head.w0 * std::exp(log_gamma(in.head.sigma + 1.0) -
                                              log_gamma(in.head.sigma + 1.0 + inner_order));
    }

    // Stage 2: (1/Psi') d/dt in the original coordinate is d/du here. With a
    // nonzero head exponent e the centered stencil is applied to the smooth
    // weighted factor w = p u^{-e} and the algebraic factor differentiated
    // exactly: p' = e u^{e-1} w + u^e w'. Differencing p directly across its
    // u^e cusp would lose all accuracy at the first nodes. When the leading
    // term is constant but the next exponent is known, the same treatment
    // applies to p - p(0).
    const auto weighted_derivative = [&](double shift, double exponent,
                                         std::optional<double> w_at_zero) {
        const int n = frame.N();
        std::vector<double> wp(u.size());
        for (int i = 1; i <= n; ++i)
            wp[static_cast<std::size_t>(i)] =
                (result.inner[static_cast<std::size_t>(i)] - shift) *
                std::pow(u[static_cast<std::size_t>(i)], -exponent);
        wp[0] = w_at_zero ? *w_at_zero
                          : wp[1] - (wp[2] - wp[1]) * u[1] / (u[2] - u[1]);
        const std::vector<double> wpd = u_derivative_profile(frame, wp);
        result.inner_deriv.assign(u.size(), kNaN);
        for (int i = 1; i <= n; ++i) {
            const double ui = u[static_cast<std::size_t>(i)];
            result.inner_deriv[static_cast<std::size_t>(i)] =
                exponent * std::pow(ui, exponent - 1.0) * wp[static_cast<std::size_t>(i)] +
                std::pow(ui, exponent) * wpd[static_cast<std::size_t>(i)];
        }
    };
    const bool head_is_constant = std::abs(inner_head_exp) <= 1e-12;
    if (!head_is_constant) {
        weighted_derivative(0.0, inner_head_exp, inner_head_w0);
    } else if (opts.next_exponent && std::isfinite(result.inner[0])) {
        weighted_derivative(result.inner[0], *opts.next_exponent + inner_order, {});
    } else {
        result.inner_deriv = u_derivative_profile(frame, result.inner);
    }

    // Stage 3: outer integral of order nu(1-mu); identity when zero.
    if (outer_order == 0.0) {
        result.derivative = result.inner_deriv;
    } else {
        // The differentiated inner profile behaves like u^{e-1} near zero
        // (e = inner head exponent). When the leading term is constant it
        // differentiates away and the next-order term governs: its exponent
        // comes from the caller's hint when available, else linear
        // extrapolation stands in.
        if (inner_head_exp < -1e-12)
            throw QuadratureError(
                "Hilfer derivative: inner integral is unbounded at 0, the outer "
                "stage does not apply (input outside the weighted space)");
        double gamma_exp = 0.0;
        if (inner_head_exp > 1e-12)
            gamma_exp = inner_head_exp - 1.0;
        else if (opts.next_exponent)
            gamma_exp = *opts.next_exponent + inner_order - 1.0;
        const double u1 = u[1];
        const double u2 = u[2];
        const double wq1 = result.inner_deriv[1] * std::pow(u1, -gamma_exp);
        const double wq2 = result.inner_deriv[2] * std::pow(u2, -gamma_exp);
        const double wq0 = wq1 - (wq2 - wq1) * u1 / (u2 - u1);
        result.derivative = rl_integral_profile(u, result.inner_deriv,
                                                SingularHead{gamma_exp, wq0},
                                                outer_order, opts.exec);
    }

    for (int i = 0; i < result.first_valid && i < static_cast<int>(result.derivative.size()); ++i)
        result.derivative[static_cast<std::size_t>(i)] = kNaN;
    return result;
}

HilferProfile psi_hilfer_profile(const GridFunction& h, const HilferOptions& opts)
{
    return psi_hilfer_profile(h.frame(), profile_from_grid(h), opts);
}

double psi_hilfer_derivative(const GridFunction& h, int node, const HilferOptions& opts)
{
    if (node < std::max(opts.exclusion_index, 1) || node > h.N()) {
        std::ostringstream os;
        os << "Hilfer derivative requested at node " << node
           << " inside the exclusion zone (first admissible node "
           << std::max(opts.exclusion_index, 1) << ")";
        throw QuadratureError(os.str());
    }
    const HilferProfile prof = psi_hilfer_profile(h, opts);
    return prof.derivative[static_cast<std::size_t>(node)];
}

PairCheck verify_semigroup(const GridFunction& h, double mu, double chi, int node,
                           Exec exec)
{
    const Frame& frame = h.frame();
    const SpaceProfile base = profile_from_grid(h);
    const SpaceProfile inner = psi_rl_apply(frame, base, chi, exec);
    const double lhs = rl_integral_at(frame.u(), inner.values, inner.head, mu, node);
    const double rhs = rl_integral_at(frame.u(), base.values, base.head, mu + chi, node);
    return {lhs, rhs, std::abs(lhs - rhs)};
}

InversionCheck verify_inversion(const GridFunction& h, int node, const HilferOptions& opts)
{
    const Frame& frame = h.frame();
    const SpaceProfile base = profile_from_grid(h);
    const SpaceProfile integrated = psi_rl_apply(frame, base, frame.order().mu(), opts.exec);
    const HilferProfile recovered = psi_hilfer_profile(frame, integrated, opts);
    InversionCheck check;
    check.recovered = recovered.derivative[static_cast<std::size_t>(node)];
    check.original = h.value_at(node);
    check.abs_err = std::abs(check.recovered - check.original);
    return check;
}

} // namespace psifrac
