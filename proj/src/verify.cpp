#include "diracgl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "diracgl/errors.hpp"
#include "diracgl/quadrature.hpp"

namespace diracgl {

ResidualReport dirac_residual(const PotentialField& potential, double lambda,
                              const VectorTrajectory& y, double tolerance) {
    y.check_consistency();
    double h = 0.0;
    if (!y.grid.uniform_spacing(&h))
        throw nonuniform_grid_error("dirac_residual: finite differences need a uniform grid");
    const std::size_t n = y.size();
    if (n < 5) throw error("dirac_residual: need at least 5 nodes");

    ResidualReport report;
    report.grid = y.grid;
    report.lambda = lambda;
    report.tolerance = tolerance;

    double sup = 0.0;
    for (std::size_t k = 2; k + 2 < n; ++k) {
        const double d1 =
            (-y.y1[k + 2] + 8.0 * y.y1[k + 1] - 8.0 * y.y1[k - 1] + y.y1[k - 2]) / (12.0 * h);
        const double d2 =
            (-y.y2[k + 2] + 8.0 * y.y2[k + 1] - 8.0 * y.y2[k - 1] + y.y2[k - 2]) / (12.0 * h);
        const double x = y.grid.nodes[k];
        const double p = potential.p(x);
        const double q = potential.q(x);
        // B y' + Omega y - lambda y
        const double r1 = d2 + p * y.y1[k] + q * y.y2[k] - lambda * y.y1[k];
        const double r2 = -d1 + q * y.y1[k] - p * y.y2[k] - lambda * y.y2[k];
        sup = std::fmax(sup, std::fmax(std::fabs(r1), std::fabs(r2)));
    }
    report.sup_residual = sup;
    report.pass = sup < tolerance;
    return report;
}

std::vector<std::vector<double>> orthogonality_matrix(
    const std::vector<VectorTrajectory>& family) {
    const std::size_t n = family.size();
    std::vector<std::vector<double>> gram(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            if (!family[i].grid.same_nodes(family[j].grid))
                throw grid_mismatch_error("orthogonality_matrix: family grids differ");
            const double v = cumulative_inner(family[i], family[j], family[i].grid).total;
            gram[i][j] = v;
            gram[j][i] = v;
        }
    return gram;
}

namespace {

double miss_distance(const PotentialField& potential, double alpha, double lambda,
                     const ScanOptions& opt) {
    Grid g;
    g.x_min = 0.0;
    g.x_max = opt.x_scan;
    g.nodes = {0.0, opt.x_scan};
    IntegratorOptions io;
    io.rel_tol = opt.ode_rel_tol;
    io.abs_tol = 1e-16L;
    const CauchySolution sol = solve_cauchy({potential, lambda, alpha}, g, io);
    if (sol.truncated || sol.trajectory.size() < 2) return 709.0;  // log of double overflow
    const double y1 = sol.trajectory.y1.back();
    const double y2 = sol.trajectory.y2.back();
    return 0.5 * std::log(y1 * y1 + y2 * y2);
}

double golden_minimize(const std::function<double(double)>& f, double a, double b, double tol,
                       double* fmin_out) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    const double xm = 0.5 * (a + b);
    if (fmin_out) *fmin_out = std::fmin(fc, fd);
    return xm;
}

SpectrumScan scan_impl(const PotentialField& potential, double alpha, double lo, double hi,
                       int samples, const ScanOptions& opt, bool parallel) {
    if (!(lo < hi)) throw error("spectrum_scan: requires lo < hi");
    if (samples < 16) throw error("spectrum_scan: needs at least 16 samples");

    SpectrumScan scan;
    scan.lo = lo;
    scan.hi = hi;
    scan.lambdas.resize(static_cast<std::size_t>(samples));
    scan.miss.resize(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i)
        scan.lambdas[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * (static_cast<double>(i) / (samples - 1));

    if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (int i = 0; i < samples; ++i)
            scan.miss[static_cast<std::size_t>(i)] =
                miss_distance(potential, alpha, scan.lambdas[static_cast<std::size_t>(i)], opt);
    } else {
        for (int i = 0; i < samples; ++i)
            scan.miss[static_cast<std::size_t>(i)] =
                miss_distance(potential, alpha, scan.lambdas[static_cast<std::size_t>(i)], opt);
    }

    // local minima, qualified by depth below the flanking local maxima
    const auto& m = scan.miss;
    const std::size_t n = m.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(m[i] < m[i - 1] && m[i] <= m[i + 1])) continue;
        std::size_t l = i;
        while (l > 0 && m[l - 1] >= m[l]) --l;
        std::size_t r = i;
        while (r + 1 < n && m[r + 1] >= m[r]) ++r;
        double fmin = 0.0;
        const double lam = golden_minimize(
            [&](double t) { return miss_distance(potential, alpha, t, opt); },
            scan.lambdas[i - 1], scan.lambdas[i + 1], opt.lambda_tol, &fmin);
        fmin = std::fmin(fmin, m[i]);
        const double background = std::fmin(m[l], m[r]);
        if (background - fmin >= opt.min_depth) scan.detected.push_back(lam);
    }
    std::sort(scan.detected.begin(), scan.detected.end());
    return scan;
}

}  // namespace

SpectrumScan spectrum_scan(const PotentialField& potential, double alpha, double lo, double hi,
                           int samples, const ScanOptions& opt) {
    return scan_impl(potential, alpha, lo, hi, samples, opt, true);
}

SpectrumScan spectrum_scan_serial(const PotentialField& potential, double alpha, double lo,
                                  double hi, int samples, const ScanOptions& opt) {
    return scan_impl(potential, alpha, lo, hi, samples, opt, false);
}

bool VerifyReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

std::string key_name(const EigenfunctionKey& key) {
    if (key.added) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "mu=%.6g", key.mu);
        return buf;
    }
    return "k=" + std::to_string(key.index);
}

}  // namespace

VerifyReport verify_plan(const PerturbedOperator& op, const VerifyTolerances& tol) {
    VerifyReport report;
    const PerturbationPlan& plan = op.plan();
    const double alpha = boundary_alpha(plan.bc);

    // verification targets: window of surviving model indices plus every
    // rescaled index and added eigenvalue
    std::vector<EigenfunctionKey> keys;
    for (int k = -tol.index_window; k <= tol.index_window; ++k)
        if (!op.is_removed(k)) keys.push_back(EigenfunctionKey::model(k));
    for (const auto& [k, b] : plan.rescalings)
        if (std::abs(k) > tol.index_window) keys.push_back(EigenfunctionKey::model(k));
    for (const auto& [mu, c] : plan.additions) keys.push_back(EigenfunctionKey::added_mu(mu));

    const Grid vgrid = Grid::half_axis(tol.x_verify, tol.verify_step);

    // potential values at the verification nodes, shared by the residual checks
    const PotentialCurve curve = tabulate_potential(op, vgrid);
    PotentialField node_field{
        [curve](double x) {
            const auto& xs = curve.grid.nodes;
            const auto it = std::lower_bound(xs.begin(), xs.end(), x - 1e-12);
            if (it != xs.end() && std::fabs(*it - x) <= 1e-12)
                return curve.p[static_cast<std::size_t>(it - xs.begin())];
            throw error("verify: potential requested off the verification grid");
        },
        [curve](double x) {
            const auto& xs = curve.grid.nodes;
            const auto it = std::lower_bound(xs.begin(), xs.end(), x - 1e-12);
            if (it != xs.end() && std::fabs(*it - x) <= 1e-12)
                return curve.q[static_cast<std::size_t>(it - xs.begin())];
            throw error("verify: potential requested off the verification grid");
        },
        "gl-synthesized (node table)"};

    std::vector<VectorTrajectory> family;
    family.reserve(keys.size());
    for (const auto& key : keys) {
        const VectorTrajectory t = op.eigenfunction(key, vgrid);
        const double lambda = key.added ? key.mu : half_axis_eigenvalue(key.index, plan.bc);
        const std::string name = key_name(key);

        const double boundary_value =
            plan.bc == BoundaryCondition::alpha0 ? t.y1.front() : t.y2.front();
        report.checks.push_back(
            {"boundary " + name, std::fabs(boundary_value), 0.0, boundary_value == 0.0});

        const ResidualReport rr = dirac_residual(node_field, lambda, t, tol.residual);
        report.checks.push_back({"residual " + name, rr.sup_residual, tol.residual, rr.pass});

        const double norm = cumulative_inner(t, t, vgrid).values.back();
        const double expected = op.norming_of(key);
        const double norm_err = std::fabs(norm - expected);
        report.checks.push_back({"norming " + name, norm_err, tol.norming, norm_err < tol.norming});

        family.push_back(t);
    }

    const auto gram = orthogonality_matrix(family);
    double off_diag = 0.0;
    for (std::size_t i = 0; i < gram.size(); ++i)
        for (std::size_t j = 0; j < gram.size(); ++j)
            if (i != j) off_diag = std::fmax(off_diag, std::fabs(gram[i][j]));
    report.checks.push_back(
        {"orthogonality", off_diag, tol.orthogonality, off_diag < tol.orthogonality});

    double min_det = 1.0;
    bool det_ok = true;
    try {
        for (double x = 0.0; x <= tol.scan.x_scan + 1e-9; x += 1.0 / 32.0)
            min_det = std::fmin(min_det, op.kernel().assemble(x).determinant);
    } catch (const singular_system_error&) {
        det_ok = false;
    }
    report.checks.push_back({"det positivity", min_det, 0.0, det_ok && min_det > 0.0});

    // shooting scans: prescribed eigenvalues must appear, removed ones must not
    if (!plan.empty()) {
        const PotentialField fast =
            op.interpolated_potential_field(tol.scan.x_scan, tol.verify_step);
        for (const auto& pt : op.prescribed_points()) {
            const SpectrumScan s = spectrum_scan(fast, alpha, pt.lambda - tol.scan_window,
                                                 pt.lambda + tol.scan_window, 64, tol.scan);
            double best = 1e300;
            for (double d : s.detected) best = std::fmin(best, std::fabs(d - pt.lambda));
            report.checks.push_back({"scan present " + std::to_string(pt.lambda), best,
                                     tol.scan_location, best <= tol.scan_location});
        }
        for (double lam : op.removed_lambdas()) {
            const SpectrumScan s = spectrum_scan(fast, alpha, lam - tol.scan_window,
                                                 lam + tol.scan_window, 64, tol.scan);
            report.checks.push_back({"scan absent " + std::to_string(lam),
                                     static_cast<double>(s.detected.size()), 0.0,
                                     s.detected.empty()});
        }
    }
    return report;
}

std::string format_report(const VerifyReport& report) {
    std::ostringstream os;
    for (const auto& c : report.checks) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-4s %-28s observed=%.6e threshold=%.6e\n",
                      c.pass ? "PASS" : "FAIL", c.name.c_str(), c.observed, c.threshold);
        os << buf;
    }
    os << (report.all_pass() ? "ALL CHECKS PASSED\n" : "CHECKS FAILED\n");
    return os.str();
}

}  // namespace diracgl
