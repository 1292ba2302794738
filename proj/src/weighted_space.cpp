#include "psifrac/weighted_space.hpp"

#include <cmath>
#include <sstream>

namespace psifrac {

WeightedNormResult weighted_norm(const GridFunction& h)
{
    WeightedNormResult res;
    const auto w = h.weighted();
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
        const double a = std::abs(w[static_cast<std::size_t>(i)]);
        if (!std::isfinite(a)) {
            std::ostringstream os;
            os << "weighted_norm: non-finite sample at node " << i;
            throw MeshError(os.str());
        }
        if (a > res.value) {
            res.value = a;
            res.argmax_node = i;
        }
    }
    return res;
}

WeightedNormResult weighted_norm_diff(const GridFunction& a, const GridFunction& b)
{
    require_same_frame(a, b, "weighted_norm_diff");
    WeightedNormResult res;
    const auto wa = a.weighted();
    const auto wb = b.weighted();
    for (int i = 0; i < static_cast<int>(wa.size()); ++i) {
        const double d = std::abs(wa[static_cast<std::size_t>(i)] - wb[static_cast<std::size_t>(i)]);
        if (!std::isfinite(d)) {
            std::ostringstream os;
            os << "weighted_norm_diff: non-finite sample at node " << i;
            throw MeshError(os.str());
        }
        if (d > res.value) {
            res.value = d;
            res.argmax_node = i;
        }
    }
    return res;
}

const char* to_string(Ordering o)
{
    switch (o) {
    case Ordering::Precedes: return "precedes";
    case Ordering::Equals: return "equals";
    case Ordering::Succeeds: return "succeeds";
    case Ordering::Incomparable: return "incomparable";
    }
    return "?";
}

std::vector<int> precedence_violations(const GridFunction& h1, const GridFunction& h2,
                                       bool strict, double slack)
{
    require_same_frame(h1, h2, "precedence_violations");
    std::vector<int> out;
    const auto w1 = h1.weighted();
    const auto w2 = h2.weighted();
    for (int i = 0; i < static_cast<int>(w1.size()); ++i) {
        const double a = w1[static_cast<std::size_t>(i)];
        const double b = w2[static_cast<std::size_t>(i)];
        const bool ok = strict ? a < b - slack : a <= b + slack;
        if (!ok)
            out.push_back(i);
    }
    return out;
}

Ordering weighted_compare(const GridFunction& h1, const GridFunction& h2, bool strict,
                          double slack)
{
    require_same_frame(h1, h2, "weighted_compare");
    const auto w1 = h1.weighted();
    const auto w2 = h2.weighted();
    bool equal = true;
    for (std::size_t i = 0; i < w1.size(); ++i)
        if (std::abs(w1[i] - w2[i]) > slack) {
            equal = false;
            break;
        }
    if (equal)
        return Ordering::Equals;
    if (precedence_violations(h1, h2, strict, slack).empty())
        return Ordering::Precedes;
    if (precedence_violations(h2, h1, strict, slack).empty())
        return Ordering::Succeeds;
    return Ordering::Incomparable;
}

} // namespace psifrac
