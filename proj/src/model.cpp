#include "diracgl/model.hpp"

#include <cmath>
#include <numbers>

#include "diracgl/errors.hpp"
#include "diracgl/hermite.hpp"
#include "diracgl/quadrature.hpp"

namespace diracgl {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

// signed scale s and orders (m1, m2) so the eigenfunction is
// (s1 * phi_{m1}, s2 * phi_{m2}); m1 < 0 encodes an identically zero component
struct ClosedForm {
    int m1, m2;
    double s1, s2;
};

ClosedForm model_closed_form(int k, BoundaryCondition bc) {
    if (bc == BoundaryCondition::alpha0) {
        // V_k = -U_{2k} / phi_{2|k|}(0)
        const int m = 2 * std::abs(k);
        if (k == 0) return {-1, 0, 0.0, -1.0 / phi(0, 0.0)};
        const double inv = -1.0 / phi(m, 0.0);
        const double sign1 = (k > 0) ? 1.0 : -1.0;
        return {m - 1, m, sign1 * inv, inv};
    }
    // U_{2k+1} scaled so the value at the origin is (1, 0)
    const int j = 2 * k + 1;
    const int m = std::abs(j);
    const double sign1 = (j > 0) ? 1.0 : -1.0;
    const double inv = 1.0 / (sign1 * phi(m - 1, 0.0));
    return {m - 1, m, sign1 * inv, inv};
}

VectorTrajectory sample_closed_form(const ClosedForm& cf, const Grid& grid) {
    grid.validate();
    VectorTrajectory t;
    t.grid = grid;
    const std::size_t n = grid.size();
    t.y1.resize(n);
    t.y2.resize(n);
    t.dy1.resize(n);
    t.dy2.resize(n);
    const int top = std::max(cf.m1, cf.m2);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.nodes[i];
        const auto ph = phi_batch(top, x);
        if (cf.m1 < 0) {
            t.y1[i] = 0.0;
            t.dy1[i] = 0.0;
        } else {
            t.y1[i] = cf.s1 * ph[static_cast<std::size_t>(cf.m1)];
            const double lower = (cf.m1 == 0) ? 0.0 : ph[static_cast<std::size_t>(cf.m1) - 1];
            t.dy1[i] = cf.s1 * (std::sqrt(2.0 * cf.m1) * lower - x * ph[static_cast<std::size_t>(cf.m1)]);
        }
        t.y2[i] = cf.s2 * ph[static_cast<std::size_t>(cf.m2)];
        const double lower2 = (cf.m2 == 0) ? 0.0 : ph[static_cast<std::size_t>(cf.m2) - 1];
        t.dy2[i] = cf.s2 * (std::sqrt(2.0 * cf.m2) * lower2 - x * ph[static_cast<std::size_t>(cf.m2)]);
    }
    // m1 is always m2 - 1 (or absent), so one recurrence pass serves both
    t.eval = [cf](double x) -> Vec2 {
        const auto [lower, upper] = phi_pair(cf.m2, x);
        const double c1 = (cf.m1 < 0) ? 0.0 : cf.s1 * lower;
        return {c1, cf.s2 * upper};
    };
    return t;
}

}  // namespace

double boundary_alpha(BoundaryCondition bc) {
    return bc == BoundaryCondition::alpha0 ? 0.0 : 0.5 * std::numbers::pi;
}

double whole_axis_eigenvalue(int n) {
    if (n == 0) return 0.0;
    const double v = std::sqrt(2.0 * std::abs(n));
    return n > 0 ? v : -v;
}

VectorTrajectory whole_axis_eigenfunction(int n, const Grid& grid) {
    ClosedForm cf;
    if (n == 0)
        cf = {-1, 0, 0.0, 1.0};
    else {
        const int m = std::abs(n);
        cf = {m - 1, m, n > 0 ? 1.0 : -1.0, 1.0};
    }
    return sample_closed_form(cf, grid);
}

double half_axis_eigenvalue(int k, BoundaryCondition bc) {
    if (bc == BoundaryCondition::alpha0) {
        if (k == 0) return 0.0;
        const double v = 2.0 * std::sqrt(static_cast<double>(std::abs(k)));
        return k > 0 ? v : -v;
    }
    const int j = 2 * k + 1;
    const double v = std::sqrt(2.0 * std::abs(j));
    return j > 0 ? v : -v;
}

VectorTrajectory model_eigenfunction(int k, BoundaryCondition bc, const Grid& grid) {
    return sample_closed_form(model_closed_form(k, bc), grid);
}

double model_norming_alpha0(int k) {
    const int n = std::abs(k);
    if (n == 0) return 0.5 * kSqrtPi;
    double a = 2.0 * kSqrtPi;  // a_1
    for (int j = 2; j <= n; ++j) a *= 2.0 * j / (2.0 * j - 1.0);
    return a;
}

SpectralPoint norming_constant(int k, BoundaryCondition bc) {
    SpectralPoint pt;
    pt.lambda = half_axis_eigenvalue(k, bc);
    if (bc == BoundaryCondition::alpha0) {
        pt.norming = model_norming_alpha0(k);
        return pt;
    }
    const ClosedForm cf = model_closed_form(k, bc);
    const double far_edge = std::sqrt(2.0 * cf.m2 + 1.0) + 10.0;
    QuadratureOptions opt;
    opt.rel_tol = 1e-13;
    opt.abs_tol = 1e-13;
    pt.norming = integrate(
        [&](double x) {
            const auto [lower, upper] = phi_pair(cf.m2, x);
            const double c1 = (cf.m1 < 0) ? 0.0 : cf.s1 * lower;
            const double c2 = cf.s2 * upper;
            return c1 * c1 + c2 * c2;
        },
        0.0, far_edge, opt);
    return pt;
}

double spectral_function(double lambda, std::span<const SpectralPoint> points) {
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        if (!(points[i].lambda < points[i + 1].lambda))
            throw unsorted_spectrum_error("spectral_function: points not sorted by eigenvalue");
    for (const auto& p : points)
        if (!(p.norming > 0.0)) throw error("spectral_function: norming constants must be positive");

    if (lambda == 0.0) return 0.0;
    double sum = 0.0;
    if (lambda > 0.0) {
        for (const auto& p : points)
            if (p.lambda > 0.0 && p.lambda <= lambda) sum += 1.0 / p.norming;
        return sum;
    }
    for (const auto& p : points)
        if (p.lambda >= lambda && p.lambda < 0.0) sum += 1.0 / p.norming;
    return -sum;
}

std::vector<SpectralPoint> model_spectrum(BoundaryCondition bc, int k_min, int k_max) {
    if (k_min > k_max) throw error("model_spectrum: k_min must be <= k_max");
    std::vector<SpectralPoint> pts;
    pts.reserve(static_cast<std::size_t>(k_max - k_min) + 1);
    for (int k = k_min; k <= k_max; ++k) pts.push_back(norming_constant(k, bc));
    return pts;
}

}  // namespace diracgl
