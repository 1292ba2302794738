#include "psifrac/quadrature.hpp"

#include "psifrac/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace psifrac {

namespace detail {

const GaussRule& gauss12()
{
    static const GaussRule rule = [] {
        // Abscissas/weights on [-1, 1]; mapped to [0, 1] below.
        const double x[6] = {0.1252334085114689, 0.3678314989981802,
                             0.5873179542866175, 0.7699026741943047,
                             0.9041172563704749, 0.9815606342467192};
        const double w[6] = {0.2491470458134028, 0.2334925365383548,
                             0.2031674267230659, 0.1600783285433462,
                             0.1069393259953184, 0.0471753363865118};
        GaussRule r{};
        for (int k = 0; k < 6; ++k) {
            r.node[2 * k] = 0.5 * (1.0 - x[k]);
            r.node[2 * k + 1] = 0.5 * (1.0 + x[k]);
            r.weight[2 * k] = 0.5 * w[k];
            r.weight[2 * k + 1] = 0.5 * w[k];
        }
        return r;
    }();
    return rule;
}

} // namespace detail

namespace {

// Cells whose endpoint ratio exceeds this are integrated with the
// weighted-linear Gauss rule when a singular head is attached; beyond it the
// power factor is indistinguishable from linear at the target tolerances.
constexpr double kCellRatioCut = 1.01;

void check_inputs(std::span<const double> u, std::span<const double> values,
                  const std::optional<SingularHead>& head, double alpha)
{
    if (!(alpha > 0.0))
        throw QuadratureError("integration order must be positive");
    if (u.size() < 2 || u[0] != 0.0)
        throw QuadratureError("transformed nodes must start at u = 0");
    if (values.size() != u.size())
        throw QuadratureError("sample count does not match node count");
    for (std::size_t i = 1; i < u.size(); ++i) {
        if (!(u[i] > u[i - 1]))
            throw QuadratureError("transformed nodes must be strictly increasing");
        if (!std::isfinite(values[i])) {
            std::ostringstream os;
            os << "non-finite sample at node " << i;
            throw QuadratureError(os.str());
        }
    }
    if (head) {
        if (!(head->sigma > -1.0))
            throw QuadratureError("singular head exponent must exceed -1");
        if (!std::isfinite(head->w0))
            throw QuadratureError("non-finite head coefficient");
    } else if (!std::isfinite(values[0])) {
        throw QuadratureError("non-finite sample at node 0");
    }
}

// Closed-form kernel moments over one cell: M0 = int (U-u)^{a-1} du and
// M1 = int (U-u)^{a-1} (u - u_i) du. The exact differences cancel
// catastrophically once du << U - u_i, so a short expansion in du/(U-u_i)
// takes over there (truncation below 1e-9 at the switch point, where the
// cancellation error of the exact form is of the same order).
inline void cell_moments(double alpha, double thick, double thin, double pow_thick,
                         double pow_thin, double du, double& m0, double& m1)
{
    const double x = du / thick;
    if (x < 1e-3) {
        const double a1 = alpha - 1.0;
        const double c0 = pow_thick / thick;  // (U - u_i)^{alpha-1}
        m0 = c0 * du * (1.0 + x * (-a1 / 2.0 + x * (a1 * (alpha - 2.0) / 6.0)));
        m1 = c0 * du * du * (0.5 + x * (-a1 / 3.0 + x * (a1 * (alpha - 2.0) / 8.0)));
    } else {
        m0 = (pow_thick - pow_thin) / alpha;
        m1 = thick * m0 - (pow_thick * thick - pow_thin * thin) / (alpha + 1.0);
    }
}

inline double plain_cell(double alpha, double thick, double thin, double pow_thick,
                         double pow_thin, double du, double va, double vb)
{
    double m0, m1;
    cell_moments(alpha, thick, thin, pow_thick, pow_thin, du, m0, m1);
    return va * m0 + (vb - va) * (m1 / du);
}

// Plain path: linear interpolation of the raw samples everywhere.
double row_plain(std::span<const double> u, std::span<const double> vals,
                 double alpha, int j)
{
    const double U = u[static_cast<std::size_t>(j)];
    double acc = 0.0;
    double thick = U;
    double pow_thick = std::pow(U, alpha);
    for (int i = 0; i < j; ++i) {
        const double ub = u[static_cast<std::size_t>(i) + 1];
        const double thin = U - ub;
        const double pow_thin = (i + 1 == j) ? 0.0 : std::pow(thin, alpha);
        const double du = ub - u[static_cast<std::size_t>(i)];
        acc += plain_cell(alpha, thick, thin, pow_thick, pow_thin, du,
                          vals[static_cast<std::size_t>(i)],
                          vals[static_cast<std::size_t>(i) + 1]);
        thick = thin;
        pow_thick = pow_thin;
    }
    return acc;
}

// 12-point Gauss rule over [a, b].
template <typename F>
double gl_segment(double a, double b, F&& f)
{
    const auto& g = detail::gauss12();
    double acc = 0.0;
    for (int k = 0; k < g.n; ++k)
        acc += g.weight[k] * f(a + (b - a) * g.node[k]);
    return acc * (b - a);
}

// Composite rule with geometric refinement toward the left endpoint; used on
// [0, 1] reference intervals whose integrand has an algebraic kink at 0.
template <typename F>
double gl_left_refined(F&& f)
{
    static constexpr double cuts[5] = {0.0, 0.004, 0.02, 0.1, 0.5};
    double acc = 0.0;
    for (int s = 0; s < 4; ++s)
        acc += gl_segment(cuts[s], cuts[s + 1], f);
    acc += gl_segment(0.5, 1.0, f);
    return acc;
}

// Gauss integration of f over [a, b] with 0 < a < b, subdividing
// geometrically so no piece spans an endpoint ratio above 2 (the integrands
// carry u^sigma factors that vary violently across wide-ratio cells).
template <typename F>
double gl_ratio_bounded(double a, double b, F&& f)
{
    const double ratio = b / a;
    if (ratio <= 2.0)
        return gl_segment(a, b, f);
    const int pieces = std::min(60, static_cast<int>(std::ceil(std::log2(ratio))));
    double acc = 0.0;
    double lo = a;
    for (int s = 0; s < pieces; ++s) {
        const double hi = s + 1 == pieces ? b : a * std::pow(ratio, double(s + 1) / pieces);
        acc += gl_segment(lo, hi, f);
        lo = hi;
    }
    return acc;
}

// Head path: weighted-linear interpolation h ~ (w_a + slope u) u^sigma on
// steep cells, generalized moments by singularity-absorbing substitutions.
double row_head(std::span<const double> u, std::span<const double> vals,
                std::span<const double> wvals, double sigma, double alpha, int j)
{
    const double U = u[static_cast<std::size_t>(j)];
    double acc = 0.0;
    for (int i = 0; i < j; ++i) {
        const double ua = u[static_cast<std::size_t>(i)];
        const double ub = u[static_cast<std::size_t>(i) + 1];
        const double du = ub - ua;
        if (i == 0) {
            const double wa = wvals[0];
            const double slope = (wvals[1] - wa) / du;
            if (j == 1) {
                // Both endpoints singular: exact Beta moments.
                const double lg_a = log_gamma(alpha);
                const double b1 = std::exp(lg_a + log_gamma(sigma + 1.0) -
                                           log_gamma(alpha + sigma + 1.0));
                const double b2 = std::exp(lg_a + log_gamma(sigma + 2.0) -
                                           log_gamma(alpha + sigma + 2.0));
                acc += wa * b1 * std::pow(ub, alpha + sigma) +
                       slope * b2 * std::pow(ub, alpha + sigma + 1.0);
            } else if (sigma < 0.0) {
                // Absorb u^sigma exactly: u = u_1 v^p with p = 1/(sigma+1) >= 1.
                const double p = 1.0 / (sigma + 1.0);
                const double cell = gl_left_refined([&](double v) {
                    const double uu = ub * std::pow(v, p);
                    return std::pow(U - uu, alpha - 1.0) * (wa + slope * uu);
                });
                acc += cell * std::pow(ub, sigma + 1.0) / (sigma + 1.0);
            } else {
                const double cell = gl_left_refined([&](double v) {
                    const double uu = ub * v;
                    return std::pow(U - uu, alpha - 1.0) * (wa + slope * uu) *
                           std::pow(uu, sigma);
                });
                acc += cell * ub;
            }
            continue;
        }
        if (ub <= kCellRatioCut * ua) {
            // u^sigma is effectively linear across this cell.
            const double thick = U - ua;
            const double thin = U - ub;
            const double pow_thick = std::pow(thick, alpha);
            const double pow_thin = (i + 1 == j) ? 0.0 : std::pow(thin, alpha);
            acc += plain_cell(alpha, thick, thin, pow_thick, pow_thin, du,
                              vals[static_cast<std::size_t>(i)],
                              vals[static_cast<std::size_t>(i) + 1]);
            continue;
        }
        const double wa = wvals[static_cast<std::size_t>(i)];
        const double slope = (wvals[static_cast<std::size_t>(i) + 1] - wa) / du;
        if (i + 1 == j && alpha < 1.0) {
            // Kernel-absorbing substitution: U - u = du z^{1/alpha}; the
            // z^{1/alpha} kink at z = 0 gets the left-refined composite.
            const double q = 1.0 / alpha;
            const double cell = gl_left_refined([&](double z) {
                const double uu = U - du * std::pow(z, q);
                return (wa + slope * (uu - ua)) * std::pow(uu, sigma);
            });
            acc += cell * std::pow(du, alpha) / alpha;
            continue;
        }
        acc += gl_ratio_bounded(ua, ub, [&](double uu) {
            return std::pow(U - uu, alpha - 1.0) * (wa + slope * (uu - ua)) *
                   std::pow(uu, sigma);
        });
    }
    return acc;
}

double limit_at_zero(const std::optional<SingularHead>& head,
                     std::span<const double> /*values*/, double alpha)
{
    if (!head)
        return 0.0;
    const double e = head->sigma + alpha;
    if (std::abs(e) < 1e-12)
        return head->w0 *
               std::exp(log_gamma(head->sigma + 1.0) - log_gamma(head->sigma + 1.0 + alpha));
    if (e > 0.0)
        return 0.0;
    // The integral itself is unbounded at u = 0; callers exclude node 0.
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace

std::vector<double> rl_integral_profile(std::span<const double> u,
                                        std::span<const double> values,
                                        std::optional<SingularHead> head,
                                        double alpha, Exec exec)
{
    check_inputs(u, values, head, alpha);
    const int n = static_cast<int>(u.size()) - 1;
    const double inv_gamma = 1.0 / gamma_fn(alpha);

    std::vector<double> out(u.size());
    out[0] = limit_at_zero(head, values, alpha);

    std::vector<double> patched;
    std::span<const double> vals = values;
    const bool use_head = head && head->sigma != 0.0;
    std::vector<double> wvals;
    if (use_head) {
        wvals.resize(u.size());
        wvals[0] = head->w0;
        for (std::size_t i = 1; i < u.size(); ++i)
            wvals[i] = values[i] * std::pow(u[i], -head->sigma);
    } else if (head) {
        // sigma == 0: the head only pins the node-0 value.
        patched.assign(values.begin(), values.end());
        patched[0] = head->w0;
        vals = patched;
    }

    kernels::rows(n, exec, [&](int row) {
        const int j = row + 1;
        const double v = use_head ? row_head(u, values, wvals, head->sigma, alpha, j)
                                  : row_plain(u, vals, alpha, j);
        out[static_cast<std::size_t>(j)] = v * inv_gamma;
    });
    return out;
}

double rl_integral_at(std::span<const double> u, std::span<const double> values,
                      std::optional<SingularHead> head, double alpha, int node)
{
    check_inputs(u, values, head, alpha);
    if (node < 0 || node >= static_cast<int>(u.size()))
        throw QuadratureError("target node out of range");
    if (node == 0)
        return limit_at_zero(head, values, alpha);
    const double inv_gamma = 1.0 / gamma_fn(alpha);
    if (head && head->sigma != 0.0) {
        std::vector<double> wvals(u.size());
        wvals[0] = head->w0;
        for (std::size_t i = 1; i < u.size(); ++i)
            wvals[i] = values[i] * std::pow(u[i], -head->sigma);
        return row_head(u, values, wvals, head->sigma, alpha, node) * inv_gamma;
    }
    std::vector<double> patched;
    std::span<const double> vals = values;
    if (head) {
        patched.assign(values.begin(), values.end());
        patched[0] = head->w0;
        vals = patched;
    }
    return row_plain(u, vals, alpha, node) * inv_gamma;
}

ProductIntegralOperator::ProductIntegralOperator(std::vector<double> u, double alpha,
                                                 Exec exec)
    : u_(std::move(u)), alpha_(alpha)
{
    if (!(alpha_ > 0.0))
        throw QuadratureError("integration order must be positive");
    if (u_.size() < 2 || u_[0] != 0.0)
        throw QuadratureError("transformed nodes must start at u = 0");
    for (std::size_t i = 1; i < u_.size(); ++i)
        if (!(u_[i] > u_[i - 1]))
            throw QuadratureError("transformed nodes must be strictly increasing");

    const std::size_t n_nodes = u_.size();
    row_offset_.resize(n_nodes + 1);
    for (std::size_t j = 0; j <= n_nodes; ++j)
        row_offset_[j] = j * (j + 1) / 2;
    weights_.assign(row_offset_[n_nodes], 0.0);

    const double inv_gamma = 1.0 / gamma_fn(alpha_);
    kernels::rows(static_cast<int>(n_nodes) - 1, exec, [&](int row) {
        const int j = row + 1;
        double* w = weights_.data() + row_offset_[static_cast<std::size_t>(j)];
        const double U = u_[static_cast<std::size_t>(j)];
        double thick = U;
        double pow_thick = std::pow(U, alpha_);
        for (int i = 0; i < j; ++i) {
            const double ub = u_[static_cast<std::size_t>(i) + 1];
            const double thin = U - ub;
            const double pow_thin = (i + 1 == j) ? 0.0 : std::pow(thin, alpha_);
            const double du = ub - u_[static_cast<std::size_t>(i)];
            double m0, m1;
            cell_moments(alpha_, thick, thin, pow_thick, pow_thin, du, m0, m1);
            const double c1 = (m1 / du) * inv_gamma;
            w[i] += m0 * inv_gamma - c1;
            w[i + 1] += c1;
            thick = thin;
            pow_thick = pow_thin;
        }
    });
}

void ProductIntegralOperator::apply(std::span<const double> values,
                                    std::span<double> out, Exec exec) const
{
    const std::size_t n_nodes = u_.size();
    if (values.size() != n_nodes || out.size() != n_nodes)
        throw QuadratureError("apply: size mismatch");
    out[0] = 0.0;
    kernels::rows(static_cast<int>(n_nodes) - 1, exec, [&](int row) {
        const std::size_t j = static_cast<std::size_t>(row) + 1;
        const double* w = weights_.data() + row_offset_[j];
        double acc = 0.0;
        for (std::size_t i = 0; i <= j; ++i)
            acc += w[i] * values[i];
        out[j] = acc;
    });
}

std::span<const double> ProductIntegralOperator::row(int j) const
{
    const std::size_t jj = static_cast<std::size_t>(j);
    return {weights_.data() + row_offset_[jj], jj + 1};
}

} // namespace psifrac
