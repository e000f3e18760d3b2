#include "diracgl/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "diracgl/errors.hpp"

namespace diracgl {

double hermite_cell_interp(double xa, double xb, double fa, double fb, double da, double db,
                           double x) {
    const double h = xb - xa;
    const double t = (x - xa) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * fa + h10 * h * da + h01 * fb + h11 * h * db;
}

void VectorTrajectory::check_consistency() const {
    const std::size_t n = grid.size();
    if (y1.size() != n || y2.size() != n)
        throw error("VectorTrajectory: component length does not match grid");
    if (!dy1.empty() && (dy1.size() != n || dy2.size() != n))
        throw error("VectorTrajectory: derivative length does not match grid");
}

Vec2 VectorTrajectory::value(double x) const {
    if (eval) return eval(x);
    const auto& xs = grid.nodes;
    if (xs.empty()) throw error("VectorTrajectory::value: empty trajectory");
    if (x < xs.front() - 1e-12 || x > xs.back() + 1e-12)
        throw error("VectorTrajectory::value: x outside sampled range");
    x = std::clamp(x, xs.front(), xs.back());
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t k = (it == xs.begin()) ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
    if (k + 1 >= xs.size()) k = xs.size() - 2;
    if (x == xs[k]) return at(k);
    if (dy1.empty())
        throw error("VectorTrajectory::value: interpolation needs derivative samples");
    return {hermite_cell_interp(xs[k], xs[k + 1], y1[k], y1[k + 1], dy1[k], dy1[k + 1], x),
            hermite_cell_interp(xs[k], xs[k + 1], y2[k], y2[k + 1], dy2[k], dy2[k + 1], x)};
}

}  // namespace diracgl
