#pragma once

#include <functional>
#include <vector>

#include "diracgl/grid.hpp"

namespace diracgl {

struct Vec2 {
    double y1 = 0.0;
    double y2 = 0.0;
};

// Two-component real function sampled on a grid. Producers also store the
// derivative samples (from the ladder relations or the ODE right-hand side),
// which makes cubic Hermite interpolation between nodes fourth order.
// Closed-form families additionally carry an exact off-grid evaluator.
struct VectorTrajectory {
    Grid grid;
    std::vector<double> y1, y2;
    std::vector<double> dy1, dy2;
    std::function<Vec2(double)> eval;  // empty for purely numerical solutions

    std::size_t size() const { return y1.size(); }
    Vec2 at(std::size_t k) const { return {y1[k], y2[k]}; }

    bool has_exact_eval() const { return static_cast<bool>(eval); }

    // exact evaluator when present, else cubic Hermite on the containing cell;
    // x must lie inside the grid range for interpolated trajectories
    Vec2 value(double x) const;

    void check_consistency() const;
};

// cubic Hermite interpolation on [xa, xb] from endpoint values and derivatives
double hermite_cell_interp(double xa, double xb, double fa, double fb, double da, double db,
                           double x);

}  // namespace diracgl
