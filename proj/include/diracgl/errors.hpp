#pragma once

#include <stdexcept>
#include <string>

namespace diracgl {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// hermite_poly called with an order whose raw polynomial values overflow
struct order_too_large_error : error { using error::error; };

// two trajectories (or a trajectory and a grid) do not share their nodes
struct grid_mismatch_error : error { using error::error; };

// finite-difference operations require a uniform grid
struct nonuniform_grid_error : error { using error::error; };

// closed-form spectral data exist only for the two model boundary conditions
struct unsupported_boundary_error : error { using error::error; };

// spectral_function requires its points sorted by eigenvalue
struct unsorted_spectrum_error : error { using error::error; };

// adaptive quadrature hit the subdivision limit above tolerance
struct quadrature_error : error { using error::error; };

// a requested new eigenvalue collides with the model spectrum
struct spectrum_collision_error : error { using error::error; };

// perturbation plan failed validation
struct plan_error : error { using error::error; };

// eigenfunction requested for an index the plan removed
struct removed_index_error : error { using error::error; };

// the per-x linear system is numerically singular; carries the offending x
struct singular_system_error : error {
    singular_system_error(const std::string& msg, double x_at)
        : error(msg), x(x_at) {}
    double x;
};

}  // namespace diracgl
