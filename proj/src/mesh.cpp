#include "psifrac/mesh.hpp"

#include <cmath>
#include <sstream>

namespace psifrac {

FractionalOrder::FractionalOrder(double mu, double nu) : mu_(mu), nu_(nu)
{
    if (!(mu > 0.0 && mu < 1.0)) {
        std::ostringstream os;
        os << "mu must be in (0,1), got " << mu;
        throw MeshError(os.str());
    }
    if (!(nu >= 0.0 && nu <= 1.0)) {
        std::ostringstream os;
        os << "nu must be in [0,1], got " << nu;
        throw MeshError(os.str());
    }
    xi_ = mu + nu * (1.0 - mu);
}

GradedMesh::GradedMesh(double T, int N, double r) : T_(T), N_(N), r_(r)
{
    if (!(T > 0.0))
        throw MeshError("mesh horizon T must be positive");
    if (N < 4)
        throw MeshError("mesh needs at least 4 intervals");
    if (!(r >= 1.0))
        throw MeshError("grading exponent r must be >= 1");
    nodes_.resize(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N; ++i)
        nodes_[static_cast<std::size_t>(i)] =
            T * std::pow(static_cast<double>(i) / N, r);
    nodes_.front() = 0.0;
    nodes_.back() = T;
}

} // namespace psifrac
