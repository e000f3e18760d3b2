#include "diracgl/grid.hpp"

#include <cmath>
#include <cstdio>

#include "diracgl/errors.hpp"

namespace diracgl {

Grid Grid::uniform(double x_min, double x_max, double step) {
    if (!(x_min < x_max)) throw error("Grid::uniform: x_min must be < x_max");
    if (!(step > 0.0)) throw error("Grid::uniform: step must be positive");
    const double span = x_max - x_min;
    const auto n = static_cast<long long>(std::llround(span / step));
    if (n < 1 || std::fabs(n * step - span) > 1e-9 * std::fmax(1.0, std::fabs(x_max)))
        throw error("Grid::uniform: step does not divide the interval");
    Grid g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.nodes.resize(static_cast<std::size_t>(n) + 1);
    for (long long k = 0; k <= n; ++k)
        g.nodes[static_cast<std::size_t>(k)] = x_min + span * (static_cast<double>(k) / static_cast<double>(n));
    g.nodes.front() = x_min;
    g.nodes.back() = x_max;
    return g;
}

void Grid::validate() const {
    if (nodes.size() < 2) throw error("Grid: needs at least 2 nodes");
    if (nodes.front() != x_min || nodes.back() != x_max)
        throw error("Grid: endpoint nodes do not match x_min/x_max");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i - 1] < nodes[i])) throw error("Grid: nodes not strictly increasing");
}

bool Grid::uniform_spacing(double* h_out) const {
    if (nodes.size() < 2) return false;
    const double h = (x_max - x_min) / static_cast<double>(nodes.size() - 1);
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (std::fabs(nodes[i] - nodes[i - 1] - h) > 1e-12 * std::fmax(1.0, std::fabs(x_max)))
            return false;
    if (h_out) *h_out = h;
    return true;
}

double Grid::step() const {
    double h = 0.0;
    if (!uniform_spacing(&h)) throw nonuniform_grid_error("Grid::step: grid is not uniform");
    return h;
}

bool Grid::same_nodes(const Grid& other) const {
    if (nodes.size() != other.nodes.size()) return false;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] != other.nodes[i]) return false;
    return true;
}

}  // namespace diracgl
