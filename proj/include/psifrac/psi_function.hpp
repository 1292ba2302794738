#pragma once

#include "psifrac/expr.hpp"

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

namespace psifrac {

class PsiValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The increasing C^1 clock function Psi with Psi' > 0 on [0, T].
///
/// All operators consume Psi through increments Psi(t) - Psi(0), so a
/// constant offset in the definition is immaterial. Immutable; safe to share.
class PsiFunction {
public:
    enum class Kind { Identity, Power, ShiftedLog, Custom };

    double psi(double t) const { return psi_(t); }
    double psi_prime(double t) const { return prime_(t); }

    /// Psi(t) - Psi(0); every formula in the library uses this form.
    double increment(double t) const { return psi_(t) - psi0_; }

    const std::string& label() const { return label_; }
    Kind kind() const { return kind_; }

    /// Psi(t) = t.
    static PsiFunction identity();

    /// Psi(t) = t^rho, rho > 0.
    static PsiFunction power(double rho);

    /// Psi(t) = ln(1 + t): Hadamard-style clock shifted so Psi(0) is finite.
    static PsiFunction shifted_log();

    /// Builds Psi from expression strings in the single variable "t" and
    /// validates on (0, T]: psi_prime positive, psi strictly increasing, and
    /// psi_prime consistent with centered finite differences of psi
    /// (relative error < 1e-4 at interior probes, step 1e-5 * T).
    /// Throws PsiValidationError naming the failed check and probe point.
    static PsiFunction custom(const Expr& psi_expr, const Expr& psi_prime_expr,
                              double T, int probe_points = 64);

    /// Parses "identity" | "power:RHO" | "shifted-log" | "custom:EXPR,EXPR".
    static PsiFunction from_spec(const std::string& spec, double T);

private:
    PsiFunction(Kind kind, std::string label, std::function<double(double)> psi,
                std::function<double(double)> prime);

    Kind kind_;
    std::string label_;
    std::function<double(double)> psi_;
    std::function<double(double)> prime_;
    double psi0_ = 0.0;
};

} // namespace psifrac
