#pragma once

#include <functional>
#include <vector>

#include "diracgl/grid.hpp"
#include "diracgl/trajectory.hpp"

namespace diracgl {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_panels = 4000;
};

// Adaptive Gauss-Kronrod (G7,K15) with QUADPACK-style error estimation.
// Throws quadrature_error when the panel limit is reached above tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt);
double integrate(const std::function<double(double)>& f, double a, double b, double tol);

// Running integral of u1 w1 + u2 w2 on a shared grid.
struct CumulativeIntegral {
    Grid grid;
    std::vector<double> values;     // values[0] = 0
    std::vector<double> integrand;  // u1 w1 + u2 w2 at the nodes
    double total = 0.0;             // full half-axis integral, tail-refined when possible

    // cubic Hermite between nodes (the integrand samples are the exact slopes)
    double value_at(double x) const;
};

CumulativeIntegral cumulative_inner(const VectorTrajectory& u, const VectorTrajectory& w,
                                    const Grid& grid);

// Integral of u1 w1 + u2 w2 over [x, infinity), computed by direct quadrature
// over [x, x + tail window] -- never by subtracting near-equal quantities.
// Both trajectories must carry exact evaluators (decaying closed forms).
// `total` supplies the magnitude scale for the absolute tolerance floor.
double tail_inner(const VectorTrajectory& u, const VectorTrajectory& w, double x, double total);

inline constexpr double kTailExtension = 6.0;

}  // namespace diracgl
