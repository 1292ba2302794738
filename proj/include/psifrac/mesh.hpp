#pragma once

#include <stdexcept>
#include <vector>

namespace psifrac {

class MeshError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Hilfer order pair (mu, nu) with the derived weight exponent
/// xi = mu + nu (1 - mu). nu = 0 is the Riemann-Liouville type, nu = 1 the
/// Caputo type.
class FractionalOrder {
public:
    FractionalOrder(double mu, double nu);

    double mu() const { return mu_; }
    double nu() const { return nu_; }
    double xi() const { return xi_; }

    /// Order of the inner integral in the Hilfer composition, (1-nu)(1-mu).
    double inner_order() const { return (1.0 - nu_) * (1.0 - mu_); }
    /// Order of the outer integral, nu (1 - mu).
    double outer_order() const { return nu_ * (1.0 - mu_); }

    bool operator==(const FractionalOrder&) const = default;

private:
    double mu_;
    double nu_;
    double xi_;
};

/// Nodes t_i = T (i/N)^r, i = 0..N. r = 1 is uniform; r > 1 clusters nodes
/// at t = 0 to resolve the weighted-space boundary layer.
class GradedMesh {
public:
    GradedMesh(double T, int N, double r);

    double T() const { return T_; }
    int N() const { return N_; }
    double r() const { return r_; }
    const std::vector<double>& nodes() const { return nodes_; }
    double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }

    bool operator==(const GradedMesh& other) const
    {
        return T_ == other.T_ && N_ == other.N_ && r_ == other.r_;
    }

private:
    double T_;
    int N_;
    double r_;
    std::vector<double> nodes_;
};

} // namespace psifrac
