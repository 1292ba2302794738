#pragma once

#include "psifrac/mesh.hpp"
#include "psifrac/psi_function.hpp"

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace psifrac {

/// Shared discretization context: graded mesh, clock function, order, and
/// the cached Psi-increments u_i = Psi(t_i) - Psi(0) with their weight powers.
/// Everything that samples, integrates, or compares functions refers to one
/// Frame; mixing frames is a contract violation surfaced by `compatible`.
class Frame {
public:
    Frame(GradedMesh mesh, PsiFunction psi, FractionalOrder order);

    const GradedMesh& mesh() const { return mesh_; }
    const PsiFunction& psi() const { return psi_; }
    const FractionalOrder& order() const { return order_; }
    int N() const { return mesh_.N(); }
    double T() const { return mesh_.T(); }
    double xi() const { return order_.xi(); }

    /// u_i = Psi(t_i) - Psi(0); u interior is strictly increasing, u_0 = 0.
    const std::vector<double>& u() const { return u_; }
    double u_at(int i) const { return u_[static_cast<std::size_t>(i)]; }

    /// u_i^{1-xi}: the weight turning values into weighted samples (0 at
    /// node 0 when xi < 1).
    double weight(int i) const { return w_pow_[static_cast<std::size_t>(i)]; }
    /// u_i^{xi-1} for i >= 1: recovers values from weighted samples.
    double unweight(int i) const { return uw_pow_[static_cast<std::size_t>(i)]; }

    static bool compatible(const Frame& a, const Frame& b);

private:
    GradedMesh mesh_;
    PsiFunction psi_;
    FractionalOrder order_;
    std::vector<double> u_;
    std::vector<double> w_pow_;
    std::vector<double> uw_pow_;
};

using FramePtr = std::shared_ptr<const Frame>;

FramePtr make_frame(GradedMesh mesh, PsiFunction psi, FractionalOrder order);

/// A function of the weighted space C_{1-xi;Psi} sampled on a frame.
/// Stores weighted samples w_i = u_i^{1-xi} y(t_i) for i >= 1 and the
/// weighted limit at node 0; the unweighted value blows up like u^{xi-1}
/// at t = 0 whenever xi < 1 and w_0 != 0.
class GridFunction {
public:
    GridFunction(FramePtr frame, std::vector<double> weighted);

    /// Samples a bounded function of t; the weighted limit at 0 is
    /// h(0) u^{1-xi} -> 0 for xi < 1, h(0) for xi = 1.
    static GridFunction from_values(FramePtr frame, const std::function<double(double)>& h);

    /// Samples the weighted profile directly: w_i = wfn(t_i). wfn(0) must be
    /// the weighted limit. The profile (Psi - Psi(0))^{xi-1} is wfn == 1.
    static GridFunction from_weighted(FramePtr frame, const std::function<double(double)>& wfn);

    static GridFunction constant_weighted(FramePtr frame, double w);

    const Frame& frame() const { return *frame_; }
    const FramePtr& frame_ptr() const { return frame_; }
    int N() const { return frame_->N(); }

    std::span<const double> weighted() const { return weighted_; }
    double weighted_at(int i) const { return weighted_[static_cast<std::size_t>(i)]; }
    double& weighted_at(int i) { return weighted_[static_cast<std::size_t>(i)]; }

    /// Unweighted value y(t_i) for i >= 1.
    double value_at(int i) const
    {
        return weighted_[static_cast<std::size_t>(i)] * frame_->unweight(i);
    }

    /// Unweighted values at all nodes; entry 0 is the weighted limit times
    /// u_0^{xi-1} only when xi = 1, otherwise it is set to the node-1 value
    /// as a bounded placeholder (the quadrature engine never reads it when a
    /// singular head is attached).
    std::vector<double> values() const;

    bool all_finite() const;

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator*=(double s);
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }

private:
    FramePtr frame_;
    std::vector<double> weighted_;
};

/// Throws MeshError unless both functions live on compatible frames.
void require_same_frame(const GridFunction& a, const GridFunction& b, const char* what);

} // namespace psifrac
