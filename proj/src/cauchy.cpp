#include "diracgl/cauchy.hpp"

#include <cmath>
#include <limits>

#include "diracgl/errors.hpp"

namespace diracgl {

PotentialField model_potential() {
    return {[](double) { return 0.0; }, [](double x) { return x; }, "model"};
}

namespace {

struct LVec2 {
    long double y1 = 0.0L, y2 = 0.0L;
};

// Dormand-Prince 5(4) tableau
constexpr long double c2 = 1.0L / 5, c3 = 3.0L / 10, c4 = 4.0L / 5, c5 = 8.0L / 9;
constexpr long double a21 = 1.0L / 5;
constexpr long double a31 = 3.0L / 40, a32 = 9.0L / 40;
constexpr long double a41 = 44.0L / 45, a42 = -56.0L / 15, a43 = 32.0L / 9;
constexpr long double a51 = 19372.0L / 6561, a52 = -25360.0L / 2187, a53 = 64448.0L / 6561,
                      a54 = -212.0L / 729;
constexpr long double a61 = 9017.0L / 3168, a62 = -355.0L / 33, a63 = 46732.0L / 5247,
                      a64 = 49.0L / 176, a65 = -5103.0L / 18656;
constexpr long double b1 = 35.0L / 384, b3 = 500.0L / 1113, b4 = 125.0L / 192,
                      b5 = -2187.0L / 6784, b6 = 11.0L / 84;
constexpr long double e1 = 71.0L / 57600, e3 = -71.0L / 16695, e4 = 71.0L / 1920,
                      e5 = -17253.0L / 339200, e6 = 22.0L / 525, e7 = -1.0L / 40;
// dense-output coefficients
constexpr long double d1 = -12715105075.0L / 11282082432.0L;
constexpr long double d3 = 87487479700.0L / 32700410799.0L;
constexpr long double d4 = -10690763975.0L / 1880347072.0L;
constexpr long double d5 = 701980252875.0L / 199316789632.0L;
constexpr long double d6 = -1453857185.0L / 822651844.0L;
constexpr long double d7 = 69997945.0L / 29380423.0L;

}  // namespace

CauchySolution solve_cauchy(const CauchyProblem& problem, const Grid& grid,
                            const IntegratorOptions& opt) {
    grid.validate();
    if (grid.x_min != 0.0) throw error("solve_cauchy: grid must start at 0");

    const long double lam = problem.lambda;
    const auto& pf = problem.potential;
    auto rhs = [&](long double x, const LVec2& y) -> LVec2 {
        const double xd = static_cast<double>(x);
        const long double p = pf.p(xd);
        const long double q = pf.q(xd);
        return {q * y.y1 - (p + lam) * y.y2, (lam - p) * y.y1 - q * y.y2};
    };

    CauchySolution sol;
    VectorTrajectory& t = sol.trajectory;
    const std::size_t n_nodes = grid.size();
    t.y1.reserve(n_nodes);
    t.y2.reserve(n_nodes);

    LVec2 y{static_cast<long double>(std::sin(problem.alpha)),
            -static_cast<long double>(std::cos(problem.alpha))};
    long double x = 0.0L;
    std::size_t next_node = 0;
    if (grid.nodes[0] == 0.0) {
        t.y1.push_back(static_cast<double>(y.y1));
        t.y2.push_back(static_cast<double>(y.y2));
        next_node = 1;
    }

    const long double x_end = grid.x_max;
    long double h = opt.h_init;
    LVec2 k1 = rhs(x, y);

    auto emit_dense = [&](long double x0, long double hstep, const LVec2& y0, const LVec2& y1n,
                          const LVec2& s1, const LVec2& s3, const LVec2& s4, const LVec2& s5,
                          const LVec2& s6, const LVec2& s7) {
        const long double diff1 = y1n.y1 - y0.y1, diff2 = y1n.y2 - y0.y2;
        const long double bspl1 = hstep * s1.y1 - diff1, bspl2 = hstep * s1.y2 - diff2;
        const long double c41 = -hstep * s7.y1 + diff1 - bspl1;
        const long double c42 = -hstep * s7.y2 + diff2 - bspl2;
        const long double c51 =
            hstep * (d1 * s1.y1 + d3 * s3.y1 + d4 * s4.y1 + d5 * s5.y1 + d6 * s6.y1 + d7 * s7.y1);
        const long double c52 =
            hstep * (d1 * s1.y2 + d3 * s3.y2 + d4 * s4.y2 + d5 * s5.y2 + d6 * s6.y2 + d7 * s7.y2);
        const long double edge = x0 + hstep + 1e-17L * (1.0L + fabsl(x0 + hstep));
        while (next_node < n_nodes && static_cast<long double>(grid.nodes[next_node]) <= edge) {
            const long double th = (static_cast<long double>(grid.nodes[next_node]) - x0) / hstep;
            const long double th1 = 1.0L - th;
            const long double v1 =
                y0.y1 + th * (diff1 + th1 * (bspl1 + th * (c41 + th1 * c51)));
            const long double v2 =
                y0.y2 + th * (diff2 + th1 * (bspl2 + th * (c42 + th1 * c52)));
            t.y1.push_back(static_cast<double>(v1));
            t.y2.push_back(static_cast<double>(v2));
            ++next_node;
        }
    };

    const long double rel = opt.rel_tol;
    const long double abs_floor = opt.abs_tol;
    while (x < x_end) {
        bool last = false;
        if (x + h >= x_end) {
            h = x_end - x;
            last = true;
        }

        const LVec2 k2 = rhs(x + c2 * h, {y.y1 + h * a21 * k1.y1, y.y2 + h * a21 * k1.y2});
        const LVec2 k3 = rhs(x + c3 * h, {y.y1 + h * (a31 * k1.y1 + a32 * k2.y1),
                                          y.y2 + h * (a31 * k1.y2 + a32 * k2.y2)});
        const LVec2 k4 =
            rhs(x + c4 * h, {y.y1 + h * (a41 * k1.y1 + a42 * k2.y1 + a43 * k3.y1),
                             y.y2 + h * (a41 * k1.y2 + a42 * k2.y2 + a43 * k3.y2)});
        const LVec2 k5 = rhs(
            x + c5 * h, {y.y1 + h * (a51 * k1.y1 + a52 * k2.y1 + a53 * k3.y1 + a54 * k4.y1),
                         y.y2 + h * (a51 * k1.y2 + a52 * k2.y2 + a53 * k3.y2 + a54 * k4.y2)});
        const LVec2 k6 = rhs(
            x + h,
            {y.y1 + h * (a61 * k1.y1 + a62 * k2.y1 + a63 * k3.y1 + a64 * k4.y1 + a65 * k5.y1),
             y.y2 + h * (a61 * k1.y2 + a62 * k2.y2 + a63 * k3.y2 + a64 * k4.y2 + a65 * k5.y2)});
        const LVec2 ynew{y.y1 + h * (b1 * k1.y1 + b3 * k3.y1 + b4 * k4.y1 + b5 * k5.y1 + b6 * k6.y1),
                         y.y2 + h * (b1 * k1.y2 + b3 * k3.y2 + b4 * k4.y2 + b5 * k5.y2 + b6 * k6.y2)};
        const LVec2 k7 = rhs(x + h, ynew);

        const long double err1 =
            h * (e1 * k1.y1 + e3 * k3.y1 + e4 * k4.y1 + e5 * k5.y1 + e6 * k6.y1 + e7 * k7.y1);
        const long double err2 =
            h * (e1 * k1.y2 + e3 * k3.y2 + e4 * k4.y2 + e5 * k5.y2 + e6 * k6.y2 + e7 * k7.y2);
        const long double sk1 = abs_floor + rel * std::fmax(fabsl(y.y1), fabsl(ynew.y1));
        const long double sk2 = abs_floor + rel * std::fmax(fabsl(y.y2), fabsl(ynew.y2));
        const long double err =
            sqrtl(0.5L * ((err1 / sk1) * (err1 / sk1) + (err2 / sk2) * (err2 / sk2)));

        // values must stay inside the double range the trajectory is stored in
        const bool finite = fabsl(ynew.y1) < 1e300L && fabsl(ynew.y2) < 1e300L &&
                            std::isfinite(static_cast<double>(ynew.y1)) &&
                            std::isfinite(static_cast<double>(ynew.y2));
        if (!finite) {
            sol.truncated = true;
            sol.truncation_x = static_cast<double>(x);
            break;
        }

        if (err <= 1.0L) {
            emit_dense(x, h, y, ynew, k1, k3, k4, k5, k6, k7);
            x = last ? x_end : x + h;
            y = ynew;
            k1 = k7;
            if (last) break;
            long double fac = 0.9L * powl(err > 0.0L ? err : 1e-30L, -0.2L);
            h *= std::fmax(0.2L, std::fmin(fac, 5.0L));
        } else {
            const long double fac = 0.9L * powl(err, -0.2L);
            h *= std::fmax(0.2L, std::fmin(fac, 1.0L));
            if (h < static_cast<long double>(opt.h_min)) {
                sol.truncated = true;
                sol.truncation_x = static_cast<double>(x);
                break;
            }
        }
    }

    // grid restricted to the nodes actually reached
    const std::size_t reached = t.y1.size();
    Grid g;
    g.nodes.assign(grid.nodes.begin(), grid.nodes.begin() + static_cast<std::ptrdiff_t>(reached));
    g.x_min = grid.x_min;
    g.x_max = reached > 0 ? g.nodes.back() : grid.x_min;
    t.grid = std::move(g);

    t.dy1.resize(reached);
    t.dy2.resize(reached);
    for (std::size_t i = 0; i < reached; ++i) {
        const LVec2 d = rhs(t.grid.nodes[i], {t.y1[i], t.y2[i]});
        t.dy1[i] = static_cast<double>(d.y1);
        t.dy2[i] = static_cast<double>(d.y2);
    }
    return sol;
}

bool collides_with_model_spectrum(double mu, BoundaryCondition bc, double tol) {
    const int k_reach = static_cast<int>(std::ceil(mu * mu)) + 2;
    for (int k = -k_reach; k <= k_reach; ++k)
        if (std::fabs(half_axis_eigenvalue(k, bc) - mu) <= tol) return true;
    return false;
}

VectorTrajectory reference_solution_W(double mu, const Grid& grid, BoundaryCondition bc) {
    if (collides_with_model_spectrum(mu, bc, 1e-9))
        throw spectrum_collision_error("reference_solution_W: mu collides with the model spectrum");
    CauchyProblem problem{model_potential(), mu, boundary_alpha(bc)};
    CauchySolution sol = solve_cauchy(problem, grid);
    if (sol.truncated)
        throw error("reference_solution_W: integration truncated before x_max");
    return std::move(sol.trajectory);
}

}  // namespace diracgl
