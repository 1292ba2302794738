#pragma once

#include "psifrac/grid_function.hpp"

#include <vector>

namespace psifrac {

struct WeightedNormResult {
    double value = 0.0;
    int argmax_node = 0;
};

/// Sup norm of C_{1-xi;Psi}: max_i |w_i| over the weighted samples, with its
/// location. Throws QuadratureError-compatible MeshError on non-finite data.
WeightedNormResult weighted_norm(const GridFunction& h);

/// Norm of the difference without materializing it.
WeightedNormResult weighted_norm_diff(const GridFunction& a, const GridFunction& b);

enum class Ordering { Precedes, Equals, Succeeds, Incomparable };

const char* to_string(Ordering o);

/// Default slack absorbing quadrature noise in order verdicts.
inline constexpr double kDefaultOrderSlack = 1e-9;

/// Nodes where h1 <= h2 fails in the weighted order: w1_i > w2_i + slack
/// (strict variant: w1_i >= w2_i - slack).
std::vector<int> precedence_violations(const GridFunction& h1, const GridFunction& h2,
                                       bool strict = false,
                                       double slack = kDefaultOrderSlack);

/// Pointwise partial-order verdict on the weighted samples. Equality within
/// slack wins over the directional verdicts.
Ordering weighted_compare(const GridFunction& h1, const GridFunction& h2,
                          bool strict = false, double slack = kDefaultOrderSlack);

} // namespace psifrac
