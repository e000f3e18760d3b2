#pragma once

#include <span>
#include <vector>

#include "diracgl/grid.hpp"
#include "diracgl/trajectory.hpp"

namespace diracgl {

// Boundary condition y1(0) cos(alpha) + y2(0) sin(alpha) = 0. Closed-form
// spectral data exist for the two model values; the Cauchy integrator
// accepts any real alpha.
enum class BoundaryCondition { alpha0, alphaHalfPi };

double boundary_alpha(BoundaryCondition bc);

// One eigenvalue with the squared L2 norm of its canonical eigenfunction.
struct SpectralPoint {
    double lambda = 0.0;
    double norming = 0.0;
};

// lambda_n(0,x) = sqrt(2|n|) sign(n), n in Z
double whole_axis_eigenvalue(int n);

// U_n sampled on the grid:
//   n > 0 -> (phi_{n-1}, phi_n), n < 0 -> (-phi_{|n|-1}, phi_{|n|}), n = 0 -> (0, phi_0)
VectorTrajectory whole_axis_eigenfunction(int n, const Grid& grid);

// alpha = 0:    lambda_k = 2 sqrt(|k|) sign(k)
// alpha = pi/2: lambda_k = sqrt(2|2k+1|) sign(2k+1)
double half_axis_eigenvalue(int k, BoundaryCondition bc);

// Cauchy-normalized eigenfunction: value (0,-1) at the origin for alpha = 0
// (V_k = -U_{2k}/phi_{2|k|}(0)), value (1,0) for alpha = pi/2.
VectorTrajectory model_eigenfunction(int k, BoundaryCondition bc, const Grid& grid);

// alpha = 0 closed form: a_0 = sqrt(pi)/2, a_{+-n} = 4^n (n!)^2 sqrt(pi)/(2n)!.
// alpha = pi/2: quadrature of the eigenfunction's squared norm.
SpectralPoint norming_constant(int k, BoundaryCondition bc);

// closed-form a_|k| of the alpha = 0 family (helper used by the GL engine)
double model_norming_alpha0(int k);

// Step spectral function: sum of reciprocal normings over 0 < lambda_n <= lambda
// for lambda > 0, minus the sum over lambda <= lambda_n < 0 for lambda < 0, 0 at 0.
// Points must be sorted by eigenvalue.
double spectral_function(double lambda, std::span<const SpectralPoint> points);

std::vector<SpectralPoint> model_spectrum(BoundaryCondition bc, int k_min, int k_max);

}  // namespace diracgl
