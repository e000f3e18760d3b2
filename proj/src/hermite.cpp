#include "diracgl/hermite.hpp"

#include <cmath>

#include "diracgl/errors.hpp"

namespace diracgl {

namespace {
// pi^{-1/4} = phi_0(0)
const double kPhi0Origin = 0.75112554446494248286;
}  // namespace

double hermite_poly(int n, double x) {
    if (n < 0) throw error("hermite_poly: order must be non-negative");
    if (n > kMaxHermitePolyOrder)
        throw order_too_large_error("hermite_poly: raw values overflow past order 60");
    double p0 = 1.0;
    if (n == 0) return p0;
    double p1 = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double p2 = 2.0 * x * p1 - 2.0 * k * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double phi(int n, double x) {
    if (n < 0) throw error("phi: order must be non-negative");
    double p0 = kPhi0Origin * std::exp(-0.5 * x * x);
    if (n == 0) return p0;
    double p1 = std::sqrt(2.0) * x * p0;
    for (int k = 1; k < n; ++k) {
        const double p2 =
            std::sqrt(2.0 / (k + 1)) * x * p1 - std::sqrt(static_cast<double>(k) / (k + 1)) * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

std::vector<double> phi_batch(int n_max, double x) {
    if (n_max < 0) throw error("phi_batch: order must be non-negative");
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
    double p0 = kPhi0Origin * std::exp(-0.5 * x * x);
    out[0] = p0;
    if (n_max == 0) return out;
    double p1 = std::sqrt(2.0) * x * p0;
    out[1] = p1;
    for (int k = 1; k < n_max; ++k) {
        const double p2 =
            std::sqrt(2.0 / (k + 1)) * x * p1 - std::sqrt(static_cast<double>(k) / (k + 1)) * p0;
        p0 = p1;
        p1 = p2;
        out[static_cast<std::size_t>(k) + 1] = p2;
    }
    return out;
}

std::pair<double, double> phi_pair(int n, double x) {
    if (n < 0) throw error("phi_pair: order must be non-negative");
    double p0 = kPhi0Origin * std::exp(-0.5 * x * x);
    if (n == 0) return {0.0, p0};
    double p1 = std::sqrt(2.0) * x * p0;
    for (int k = 1; k < n; ++k) {
        const double p2 =
            std::sqrt(2.0 / (k + 1)) * x * p1 - std::sqrt(static_cast<double>(k) / (k + 1)) * p0;
        p0 = p1;
        p1 = p2;
    }
    return {p0, p1};
}

double phi_derivative(int n, double x) {
    if (n < 0) throw error("phi_derivative: order must be non-negative");
    if (n == 0) return -x * phi(0, x);
    const auto values = phi_batch(n, x);
    return std::sqrt(2.0 * n) * values[static_cast<std::size_t>(n) - 1] -
           x * values[static_cast<std::size_t>(n)];
}

}  // namespace diracgl
