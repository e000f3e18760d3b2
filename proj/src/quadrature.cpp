#include "diracgl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "diracgl/errors.hpp"

namespace diracgl {

namespace {

// (G7,K15) abscissae and weights, positive half (QUADPACK dqk15)
const double kXgk[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897, 0.8648644233597690727897128,
    0.7415311855993944398638648, 0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0000000000000000000000000};
const double kWgk[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007, 0.1047900103222501838398763,
    0.1406532597155259187451896, 0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};
const double kWg[4] = {0.1294849661688696932706114, 0.2797053914892766679014678,
                       0.3818300505051189449503698, 0.4179591836734693877551020};

struct PanelResult {
    double integral = 0.0;
    double err = 0.0;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);

    double fval[15];
    for (int i = 0; i < 7; ++i) {
        fval[i] = f(center - hlgth * kXgk[i]);
        fval[14 - i] = f(center + hlgth * kXgk[i]);
    }
    fval[7] = f(center);

    double resk = 0.0, resabs = 0.0;
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fval[i] + fval[14 - i]);
        resabs += kWgk[i] * (std::fabs(fval[i]) + std::fabs(fval[14 - i]));
    }
    resk += kWgk[7] * fval[7];
    resabs += kWgk[7] * std::fabs(fval[7]);

    double resg = kWg[3] * fval[7];
    for (int i = 0; i < 3; ++i) {
        const int j = 2 * i + 1;  // Gauss points interleave at odd Kronrod indices
        resg += kWg[i] * (fval[j] + fval[14 - j]);
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fval[7] - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::fabs(fval[i] - reskh) + std::fabs(fval[14 - i] - reskh));

    resk *= hlgth;
    resg *= hlgth;
    resabs *= hlgth;
    resasc *= hlgth;

    double err = std::fabs(resk - resg);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::fmin(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50)
        err = std::fmax(eps50 * resabs, err);
    return {resk, err};
}

struct Panel {
    double a, b;
    PanelResult r;
    bool operator<(const Panel& other) const { return r.err < other.r.err; }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt) {
    if (!(a < b)) throw error("integrate: requires a < b");
    if (!(opt.abs_tol > 0.0) && !(opt.rel_tol > 0.0))
        throw error("integrate: tolerance must be positive");

    std::priority_queue<Panel> panels;
    Panel first{a, b, gk15(f, a, b)};
    double total = first.r.integral;
    double total_err = first.r.err;
    panels.push(first);
    int count = 1;

    while (total_err > std::fmax(opt.abs_tol, opt.rel_tol * std::fabs(total))) {
        if (count >= opt.max_panels)
            throw quadrature_error("integrate: subdivision limit reached above tolerance");
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw quadrature_error("integrate: panel width underflow");
        Panel left{worst.a, mid, gk15(f, worst.a, mid)};
        Panel right{mid, worst.b, gk15(f, mid, worst.b)};
        total += left.r.integral + right.r.integral - worst.r.integral;
        total_err += left.r.err + right.r.err - worst.r.err;
        panels.push(left);
        panels.push(right);
        ++count;
    }
    return total;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    QuadratureOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = 0.0;
    return integrate(f, a, b, opt);
}

double CumulativeIntegral::value_at(double x) const {
    const auto& xs = grid.nodes;
    if (x < xs.front() - 1e-12 || x > xs.back() + 1e-12)
        throw error("CumulativeIntegral::value_at: x outside grid range");
    x = std::clamp(x, xs.front(), xs.back());
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t k = (it == xs.begin()) ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
    if (k + 1 >= xs.size()) k = xs.size() - 2;
    if (x == xs[k]) return values[k];
    return hermite_cell_interp(xs[k], xs[k + 1], values[k], values[k + 1], integrand[k],
                               integrand[k + 1], x);
}

namespace {

// cumulative composite Simpson on a uniform grid; odd nodes close the last
// cell with the three-point cubic rule
std::vector<double> cumulative_simpson(const std::vector<double>& f, double h) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t k = 1; k < f.size(); ++k) {
        if (k % 2 == 0)
            out[k] = out[k - 2] + h * (f[k - 2] + 4.0 * f[k - 1] + f[k]) / 3.0;
        else if (k == 1)
            out[1] = (f.size() > 2) ? h * (5.0 * f[0] + 8.0 * f[1] - f[2]) / 12.0
                                    : h * 0.5 * (f[0] + f[1]);
        else
            out[k] = out[k - 1] + h * (-f[k - 2] + 8.0 * f[k - 1] + 5.0 * f[k]) / 12.0;
    }
    return out;
}

}  // namespace

CumulativeIntegral cumulative_inner(const VectorTrajectory& u, const VectorTrajectory& w,
                                    const Grid& grid) {
    if (!u.grid.same_nodes(grid) || !w.grid.same_nodes(grid))
        throw grid_mismatch_error("cumulative_inner: trajectories not sampled on the given grid");
    u.check_consistency();
    w.check_consistency();

    const std::size_t n = grid.size();
    CumulativeIntegral out;
    out.grid = grid;
    out.integrand.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        out.integrand[k] = u.y1[k] * w.y1[k] + u.y2[k] * w.y2[k];

    double h = 0.0;
    if (grid.uniform_spacing(&h)) {
        out.values = cumulative_simpson(out.integrand, h);
    } else {
        if (u.dy1.empty() || w.dy1.empty())
            throw nonuniform_grid_error(
                "cumulative_inner: non-uniform grid needs derivative samples");
        out.values.assign(n, 0.0);
        for (std::size_t k = 1; k < n; ++k) {
            const double dx = grid.nodes[k] - grid.nodes[k - 1];
            const double fa = out.integrand[k - 1], fb = out.integrand[k];
            const double da = u.dy1[k - 1] * w.y1[k - 1] + u.y1[k - 1] * w.dy1[k - 1] +
                              u.dy2[k - 1] * w.y2[k - 1] + u.y2[k - 1] * w.dy2[k - 1];
            const double db = u.dy1[k] * w.y1[k] + u.y1[k] * w.dy1[k] + u.dy2[k] * w.y2[k] +
                              u.y2[k] * w.dy2[k];
            out.values[k] = out.values[k - 1] + dx * 0.5 * (fa + fb) + dx * dx / 12.0 * (da - db);
        }
    }

    out.total = out.values.back();
    if (u.has_exact_eval() && w.has_exact_eval())
        out.total += tail_inner(u, w, grid.x_max, out.values.back());
    return out;
}

double tail_inner(const VectorTrajectory& u, const VectorTrajectory& w, double x, double total) {
    if (!u.has_exact_eval() || !w.has_exact_eval())
        throw error("tail_inner: both trajectories must carry exact evaluators");
    const double far_edge =
        std::fmax(x, std::fmax(std::fmax(u.grid.x_max, w.grid.x_max), kDefaultXMax)) +
        kTailExtension;
    QuadratureOptions opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-15 * std::fmax(1.0, std::fabs(total));
    return integrate(
        [&](double s) {
            const Vec2 a = u.eval(s);
            const Vec2 b = w.eval(s);
            return a.y1 * b.y1 + a.y2 * b.y2;
        },
        x, far_edge, opt);
}

}  // namespace diracgl
