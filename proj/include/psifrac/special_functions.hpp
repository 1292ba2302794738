#pragma once

#include <cstdint>
#include <stdexcept>

namespace psifrac {

/// Thrown when a special function is evaluated at a pole or outside its
/// supported range.
class SpecialFunctionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Gamma function for real arguments.
///
/// Lanczos approximation with reflection for x < 0.5. Relative error is
/// below 1e-13 on (0, 170]. Poles at 0, -1, -2, ... and arguments past the
/// double overflow threshold (~171.62) raise SpecialFunctionError.
double gamma_fn(double x);

/// log |Gamma(x)| for x > 0. Used where Gamma itself would overflow.
double log_gamma(double x);

struct MittagLefflerParams {
    double eta;                    // series order, > 0
    double series_tol = 1e-15;     // relative truncation tolerance
    int max_terms = 400;

    void validate() const;
};

struct MittagLefflerResult {
    double value = 0.0;
    bool converged = false;
    int terms_used = 0;
};

/// One-parameter Mittag-Leffler function E_eta(z) = sum_k z^k / Gamma(k*eta + 1),
/// by direct Taylor summation. Intended for z >= 0 at desk scales (z <= 30);
/// the result carries a convergence flag instead of silently truncating.
MittagLefflerResult mittag_leffler(const MittagLefflerParams& params, double z);

/// Convenience wrapper with default tolerances; throws on non-convergence.
double mittag_leffler(double eta, double z);

} // namespace psifrac
