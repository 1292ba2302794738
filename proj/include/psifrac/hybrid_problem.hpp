#pragma once

#include "psifrac/expr.hpp"
#include "psifrac/mesh.hpp"
#include "psifrac/psi_function.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace psifrac {

/// Raised when a problem violates the standing hypotheses (nonvanishing f,
/// finiteness of the initial ratio, ...).
class HypothesisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LatticeSpec {
    int nt = 17;
    int ny = 17;
    double y_min = -10.0;
    double y_max = 10.0;
};

/// The full problem datum: hybrid equation D^{mu,nu;Psi}[y/f(t,y)] = g(t,y)
/// on (0,T] with the weighted initial value y0. The anchor is the state
/// value used inside f(0, .): the unweighted initial value it stands in for
/// is unbounded when xi < 1. It defaults to y0.
class HybridProblem {
public:
    HybridProblem(Expr f, Expr g, double y0, std::optional<double> y0_anchor,
                  double T, PsiFunction psi, FractionalOrder order);

    double f_at(double t, double y) const;
    double g_at(double t, double y) const;

    double y0() const { return y0_; }
    double y0_anchor() const { return anchor_ ? *anchor_ : y0_; }
    double T() const { return T_; }
    const PsiFunction& psi() const { return psi_; }
    const FractionalOrder& order() const { return order_; }
    const Expr& f_expr() const { return f_; }
    const Expr& g_expr() const { return g_; }
    double g_shift() const { return g_shift_; }

    /// c0 = y0 / f(0, anchor); throws HypothesisError if not finite.
    double c0() const;

    /// Probes |f| > 0 on a (t, y) lattice; throws HypothesisError naming
    /// the first violating point.
    void validate_nonvanishing(const LatticeSpec& lattice = {}) const;

    /// Checks hypothesis H1(i): v -> v / f(t, v) increasing, by sampling.
    bool ratio_map_increasing(const LatticeSpec& lattice = {}) const;

    /// The epsilon-perturbed problem of the extremal construction:
    /// g := g + eps, y0 := y0 + eps (the anchor tracks y0 unless it was set
    /// explicitly).
    HybridProblem perturbed(double eps) const;

private:
    Expr f_;
    Expr g_;
    double y0_;
    std::optional<double> anchor_;
    double T_;
    PsiFunction psi_;
    FractionalOrder order_;
    double g_shift_ = 0.0;
};

enum class ParamSource { UserSupplied, Estimated };

/// The constants of hypotheses (H1)(ii) and (H2): Lipschitz bound L of f in
/// y, sup bound on |g|, and the bound K on |f|. Estimated values are lower
/// bounds of the true suprema.
struct ExistenceParams {
    double L = 0.0;
    double h_norm = 0.0;
    double K = 1.0;
    ParamSource source = ParamSource::UserSupplied;

    void validate() const;
};

/// Samples the hypothesis constants on a lattice.
ExistenceParams estimate_params(const HybridProblem& problem, const LatticeSpec& lattice = {});

} // namespace psifrac
