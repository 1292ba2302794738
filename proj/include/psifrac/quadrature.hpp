#pragma once

#include "psifrac/kernels.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace psifrac {

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Algebraic behavior of a sampled profile on the first cell:
/// profile(u) ~ w(u) u^sigma with w continuous, w(0) = w0, sigma > -1.
/// Weighted-space members carry sigma = xi - 1; smooth profiles sigma = 0.
struct SingularHead {
    double sigma = 0.0;
    double w0 = 0.0;
};

/// Product integration of the Riemann-Liouville convolution in the
/// transformed coordinate u = Psi(s) - Psi(0):
///
///     I[h](U) = 1/Gamma(alpha) * integral_0^U (U - u)^{alpha-1} h(u) du.
///
/// Regular profiles are interpolated linearly per cell and the kernel
/// moments are integrated in closed form. Profiles carrying a singular
/// head are interpolated linearly in their weighted form w = h u^{-sigma}
/// on cells near u = 0, with the generalized moments evaluated by
/// substitution-based Gauss-Legendre (exact Beta form when the target is
/// node 1). u[0] must be 0; values[0] is ignored whenever a head with
/// sigma != 0 is attached.
std::vector<double> rl_integral_profile(std::span<const double> u,
                                        std::span<const double> values,
                                        std::optional<SingularHead> head,
                                        double alpha,
                                        Exec exec = Exec::Parallel);

/// Single-target version of rl_integral_profile.
double rl_integral_at(std::span<const double> u, std::span<const double> values,
                      std::optional<SingularHead> head, double alpha, int node);

/// Precomputed product-integration weights for the regular path. Row j
/// holds the weights applied to values[0..j]; applying the operator is an
/// O(N^2) triangular mat-vec, which is what the Picard iteration repeats.
/// All weights are nonnegative, so h >= 0 implies I[h] >= 0.
class ProductIntegralOperator {
public:
    ProductIntegralOperator(std::vector<double> u, double alpha,
                            Exec exec = Exec::Parallel);

    int node_count() const { return static_cast<int>(u_.size()); }
    double alpha() const { return alpha_; }

    /// out[j] = I[values](u_j) for every node; out[0] = 0.
    void apply(std::span<const double> values, std::span<double> out,
               Exec exec = Exec::Parallel) const;

    std::span<const double> row(int j) const;

private:
    std::vector<double> u_;
    double alpha_;
    std::vector<double> weights_;
    std::vector<std::size_t> row_offset_;
};

namespace detail {

/// 12-point Gauss-Legendre rule mapped to [0, 1].
struct GaussRule {
    static constexpr int n = 12;
    double node[12];
    double weight[12];
};
const GaussRule& gauss12();

} // namespace detail

} // namespace psifrac
