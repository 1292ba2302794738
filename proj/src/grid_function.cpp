#include "psifrac/grid_function.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace psifrac {

Frame::Frame(GradedMesh mesh, PsiFunction psi, FractionalOrder order)
    : mesh_(std::move(mesh)), psi_(std::move(psi)), order_(order)
{
    const int n = mesh_.N();
    u_.resize(static_cast<std::size_t>(n) + 1);
    w_pow_.resize(u_.size());
    uw_pow_.resize(u_.size());
    const double one_minus_xi = 1.0 - order_.xi();
    u_[0] = 0.0;
    w_pow_[0] = one_minus_xi == 0.0 ? 1.0 : 0.0;
    uw_pow_[0] = one_minus_xi == 0.0 ? 1.0 : 0.0;  // unused placeholder for xi < 1
    double prev = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double ui = psi_.increment(mesh_.node(i));
        if (!(ui > prev)) {
            std::ostringstream os;
            os << "Psi increments not strictly increasing at mesh node " << i;
            throw PsiValidationError(os.str());
        }
        if (!(psi_.psi_prime(mesh_.node(i)) > 0.0)) {
            std::ostringstream os;
            os << "Psi' not positive at mesh node " << i;
            throw PsiValidationError(os.str());
        }
        u_[static_cast<std::size_t>(i)] = ui;
        w_pow_[static_cast<std::size_t>(i)] =
            one_minus_xi == 0.0 ? 1.0 : std::pow(ui, one_minus_xi);
        uw_pow_[static_cast<std::size_t>(i)] =
            one_minus_xi == 0.0 ? 1.0 : std::pow(ui, -one_minus_xi);
        prev = ui;
    }
}

bool Frame::compatible(const Frame& a, const Frame& b)
{
    return a.mesh_ == b.mesh_ && a.order_ == b.order_ &&
           a.psi_.label() == b.psi_.label();
}

FramePtr make_frame(GradedMesh mesh, PsiFunction psi, FractionalOrder order)
{
    return std::make_shared<const Frame>(std::move(mesh), std::move(psi), order);
}

GridFunction::GridFunction(FramePtr frame, std::vector<double> weighted)
    : frame_(std::move(frame)), weighted_(std::move(weighted))
{
    if (weighted_.size() != static_cast<std::size_t>(frame_->N()) + 1)
        throw MeshError("GridFunction: sample count does not match mesh");
}

GridFunction GridFunction::from_values(FramePtr frame,
                                       const std::function<double(double)>& h)
{
    const int n = frame->N();
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    w[0] = frame->xi() == 1.0 ? h(0.0) : 0.0;
    for (int i = 1; i <= n; ++i)
        w[static_cast<std::size_t>(i)] = h(frame->mesh().node(i)) * frame->weight(i);
    return GridFunction(std::move(frame), std::move(w));
}

GridFunction GridFunction::from_weighted(FramePtr frame,
                                         const std::function<double(double)>& wfn)
{
    const int n = frame->N();
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        w[static_cast<std::size_t>(i)] = wfn(frame->mesh().node(i));
    return GridFunction(std::move(frame), std::move(w));
}

GridFunction GridFunction::constant_weighted(FramePtr frame, double value)
{
    std::vector<double> w(static_cast<std::size_t>(frame->N()) + 1, value);
    return GridFunction(std::move(frame), std::move(w));
}

std::vector<double> GridFunction::values() const
{
    const int n = frame_->N();
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i)
        out[static_cast<std::size_t>(i)] = value_at(i);
    out[0] = frame_->xi() == 1.0 ? weighted_[0] : out[1];
    return out;
}

bool GridFunction::all_finite() const
{
    for (double w : weighted_)
        if (!std::isfinite(w))
            return false;
    return true;
}

GridFunction& GridFunction::operator+=(const GridFunction& other)
{
    require_same_frame(*this, other, "GridFunction::operator+=");
    for (std::size_t i = 0; i < weighted_.size(); ++i)
        weighted_[i] += other.weighted_[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other)
{
    require_same_frame(*this, other, "GridFunction::operator-=");
    for (std::size_t i = 0; i < weighted_.size(); ++i)
        weighted_[i] -= other.weighted_[i];
    return *this;
}

GridFunction& GridFunction::operator*=(double s)
{
    for (double& w : weighted_)
        w *= s;
    return *this;
}

void require_same_frame(const GridFunction& a, const GridFunction& b, const char* what)
{
    if (a.frame_ptr() == b.frame_ptr())
        return;
    if (!Frame::compatible(a.frame(), b.frame())) {
        std::ostringstream os;
        os << what << ": mesh/order/Psi mismatch between grid functions";
        throw MeshError(os.str());
    }
}

} // namespace psifrac
