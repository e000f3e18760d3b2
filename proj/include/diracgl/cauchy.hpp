#pragma once

#include <functional>
#include <string>

#include "diracgl/grid.hpp"
#include "diracgl/model.hpp"
#include "diracgl/trajectory.hpp"

namespace diracgl {

// Symmetric trace-free 2x2 potential, represented by the scalar pair
// (p on the diagonal, q off-diagonal). Both callables must be reentrant.
struct PotentialField {
    std::function<double(double)> p;
    std::function<double(double)> q;
    std::string description;
};

// the model operator: p = 0, q(x) = x
PotentialField model_potential();

struct CauchyProblem {
    PotentialField potential;
    double lambda = 0.0;
    double alpha = 0.0;  // radians; initial value is (sin alpha, -cos alpha)
};

// Solutions of the system grow like e^{+x^2/2}; local errors committed near
// the origin are amplified by the mode ratio e^{x^2} downstream, so the
// integration runs in long double with a tolerance far below the double
// round-off to keep decaying solutions accurate to ~1e-10 on [0, 6].
struct IntegratorOptions {
    long double rel_tol = 3e-17L;
    long double abs_tol = 1e-20L;
    double h_init = 1e-3;
    double h_min = 1e-14;
};

struct CauchySolution {
    VectorTrajectory trajectory;  // sampled at the grid nodes reached
    bool truncated = false;       // step size underflowed before x_max
    double truncation_x = 0.0;
};

// Dormand-Prince 5(4) with dense output, sampled at the grid nodes.
CauchySolution solve_cauchy(const CauchyProblem& problem, const Grid& grid,
                            const IntegratorOptions& opt = {});

// W(mu) = psi(x, mu, alpha, model potential); mu must stay clear of the
// model spectrum of the matching boundary condition.
VectorTrajectory reference_solution_W(double mu, const Grid& grid,
                                      BoundaryCondition bc = BoundaryCondition::alpha0);

bool collides_with_model_spectrum(double mu, BoundaryCondition bc, double tol = 1e-9);

}  // namespace diracgl
