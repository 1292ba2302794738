#pragma once

#include "psifrac/grid_function.hpp"
#include "psifrac/quadrature.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace psifrac {

/// A weighted-space function in sampled form: unweighted values at the
/// frame's nodes plus the algebraic head describing it near t = 0.
/// values[0] is meaningful only when head.sigma == 0 (it then equals w0).
struct SpaceProfile {
    std::vector<double> values;
    SingularHead head;
};

SpaceProfile profile_from_grid(const GridFunction& h);
SpaceProfile profile_from_callable(const Frame& frame,
                                   const std::function<double(double)>& h,
                                   std::optional<SingularHead> head = {});

/// I^{mu;Psi} applied to a sampled profile, with the output's head derived
/// from the power rule: exponent sigma + mu, coefficient scaled by
/// Gamma(sigma+1)/Gamma(sigma+mu+1).
SpaceProfile psi_rl_apply(const Frame& frame, const SpaceProfile& in, double mu,
                          Exec exec = Exec::Parallel);

/// I^{mu;Psi} h at every node (raw values).
std::vector<double> psi_rl_integral_profile(const GridFunction& h, double mu,
                                            Exec exec = Exec::Parallel);
std::vector<double> psi_rl_integral_profile(const Frame& frame,
                                            const std::function<double(double)>& h,
                                            double mu,
                                            std::optional<SingularHead> head = {},
                                            Exec exec = Exec::Parallel);

/// I^{mu;Psi} h at one mesh node.
double psi_rl_integral(const GridFunction& h, double mu, int node);
double psi_rl_integral(const Frame& frame, const std::function<double(double)>& h,
                       double mu, int node, std::optional<SingularHead> head = {});

struct HilferOptions {
    /// Derivative reported for node indices >= exclusion_index (default:
    /// exclude nodes 0 and 1, where the difference stencil is unreliable).
    int exclusion_index = 2;
    Exec exec = Exec::Parallel;
    /// Exponent of the input's first correction term beyond its head, when
    /// known: h ~ w0 u^sigma + c u^{next_exponent} + ... Solutions of the
    /// integral equation carry next_exponent = mu. Used to model the outer
    /// integrand near zero once the leading term differentiates away.
    std::optional<double> next_exponent = {};
};

struct HilferProfile {
    std::vector<double> derivative;   // NaN below first_valid
    int first_valid = 2;
    std::vector<double> inner;        // stage 1: I^{(1-nu)(1-mu)} at all nodes
    std::vector<double> inner_deriv;  // stage 2: d/du of stage 1 (NaN at node 0)
};

/// Three-stage Psi-Hilfer derivative
///   I^{nu(1-mu);Psi} ( (1/Psi') d/dt ) I^{(1-nu)(1-mu);Psi}
/// computed in the transformed coordinate: inner integral at all nodes,
/// centered differences in u (one-sided at the last node), outer integral.
/// Zero-order stages collapse to the identity.
HilferProfile psi_hilfer_profile(const GridFunction& h, const HilferOptions& opts = {});
HilferProfile psi_hilfer_profile(const Frame& frame, const SpaceProfile& in,
                                 const HilferOptions& opts = {});

/// Derivative at a single interior node; throws if the node lies inside the
/// exclusion zone.
double psi_hilfer_derivative(const GridFunction& h, int node,
                             const HilferOptions& opts = {});

struct PairCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_err = 0.0;
};

/// Lemma-style semigroup check: nested I^{mu} I^{chi} h against the direct
/// I^{mu+chi} h at one node.
PairCheck verify_semigroup(const GridFunction& h, double mu, double chi, int node,
                           Exec exec = Exec::Parallel);

struct InversionCheck {
    double recovered = 0.0;
    double original = 0.0;
    double abs_err = 0.0;
};

/// Applies I^{mu;Psi} then the Hilfer derivative and compares with the
/// original sample.
InversionCheck verify_inversion(const GridFunction& h, int node,
                                const HilferOptions& opts = {});

/// First derivative in the u coordinate from samples at the frame nodes:
/// nonuniform centered stencils, one-sided at the last node, NaN at node 0.
std::vector<double> u_derivative_profile(const Frame& frame,
                                         std::span<const double> p);

} // namespace psifrac
