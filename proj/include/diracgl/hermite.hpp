#pragma once

#include <utility>
#include <vector>

namespace diracgl {

// Raw H_n values overflow double range past this order; phi() has no such limit.
inline constexpr int kMaxHermitePolyOrder = 60;

// Chebyshev-Hermite polynomial H_n(x) by the three-term recurrence
// H_{n+1} = 2x H_n - 2n H_{n-1}, seeded with H_0 = 1, H_1 = 2x.
double hermite_poly(int n, double x);

// Orthonormal Chebyshev-Hermite function phi_n(x) = C_n e^{-x^2/2} H_n(x),
// evaluated by the normalized recurrence
//   phi_{k+1} = sqrt(2/(k+1)) x phi_k - sqrt(k/(k+1)) phi_{k-1}
// so raw polynomial values are never formed. For |x| large enough that
// e^{-x^2/2} underflows (|x| > ~38) the result is exactly 0.
double phi(int n, double x);

// phi_n'(x) from the ladder relation phi_n' + x phi_n = sqrt(2n) phi_{n-1}.
double phi_derivative(int n, double x);

// phi_k(x) for k = 0..n_max in one recurrence pass; element k equals
// phi(k, x) on the same rounding path.
std::vector<double> phi_batch(int n_max, double x);

// (phi_{n-1}(x), phi_n(x)) without allocating; phi_{-1} := 0
std::pair<double, double> phi_pair(int n, double x);

}  // namespace diracgl
