#include "diracgl/glcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "diracgl/errors.hpp"
#include "diracgl/spline.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace diracgl {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);
constexpr double kLambdaMatchTol = 1e-9;
constexpr double kSingularFloor = 1e-13;

double current_norming(const PerturbationPlan& plan, int k) {
    if (auto it = plan.rescalings.find(k); it != plan.rescalings.end()) return it->second;
    return norming_constant(k, plan.bc).norming;
}

}  // namespace

void PerturbationPlan::validate() const {
    for (const auto& [k, b] : rescalings) {
        if (removals.count(k))
            throw plan_error("plan: index " + std::to_string(k) + " both removed and rescaled");
        if (!(b > 0.0))
            throw plan_error("plan: rescaled norming must be positive (index " +
                             std::to_string(k) + ")");
        const double a = norming_constant(k, bc).norming;
        if (b == a)
            throw plan_error("plan: rescaling to the current norming is a no-op (index " +
                             std::to_string(k) + ")");
    }
    for (std::size_t i = 0; i < additions.size(); ++i) {
        const auto& [mu, c] = additions[i];
        if (!(c > 0.0)) throw plan_error("plan: added norming constants must be positive");
        if (collides_with_model_spectrum(mu, bc, kLambdaMatchTol))
            throw plan_error("plan: added eigenvalue collides with the model spectrum");
        for (std::size_t j = i + 1; j < additions.size(); ++j)
            if (std::fabs(additions[j].first - mu) <= kLambdaMatchTol)
                throw plan_error("plan: added eigenvalues must be distinct");
    }
}

namespace {

SpectralJump model_jump(const PerturbationPlan& plan, int z, double coefficient,
                        const Grid& grid) {
    SpectralJump j;
    j.lambda = half_axis_eigenvalue(z, plan.bc);
    j.coefficient = coefficient;
    j.kind = JumpSource::model_eigenfunction;
    j.model_index = z;
    j.source_total = norming_constant(z, plan.bc).norming;
    j.source = model_eigenfunction(z, plan.bc, grid);
    return j;
}

}  // namespace

std::vector<SpectralJump> build_jumps(const PerturbationPlan& plan, const Grid& grid) {
    grid.validate();
    std::vector<SpectralJump> jumps;

    // additions that revive a removed model eigenvalue collapse to a single
    // model-sourced jump (the Cauchy solution at lambda_z is V_z itself)
    std::set<int> removals = plan.removals;
    std::map<int, double> revived;  // model index -> prescribed norming c
    std::vector<std::pair<double, double>> additions;
    for (const auto& [mu, c] : plan.additions) {
        int matched = 0;
        bool found = false;
        const int k_reach = static_cast<int>(std::ceil(mu * mu)) + 2;
        for (int k = -k_reach; k <= k_reach && !found; ++k)
            if (std::fabs(half_axis_eigenvalue(k, plan.bc) - mu) <= kLambdaMatchTol) {
                matched = k;
                found = true;
            }
        if (found) {
            if (!removals.count(matched))
                throw plan_error("plan: added eigenvalue collides with a surviving eigenvalue");
            removals.erase(matched);
            revived.emplace(matched, c);
        } else {
            additions.emplace_back(mu, c);
        }
    }

    for (int z : removals) {
        const double a = norming_constant(z, plan.bc).norming;
        auto j = model_jump(plan, z, -1.0 / a, grid);
        j.source_total = a;
        jumps.push_back(std::move(j));
    }
    for (const auto& [z, b] : plan.rescalings) {
        const double a = norming_constant(z, plan.bc).norming;
        const double coeff = 1.0 / b - 1.0 / a;
        if (coeff == 0.0) continue;  // no-op introduced by composition
        jumps.push_back(model_jump(plan, z, coeff, grid));
    }
    for (const auto& [z, c] : revived) {
        const double a = norming_constant(z, plan.bc).norming;
        const double coeff = 1.0 / c - 1.0 / a;
        if (coeff == 0.0) continue;
        jumps.push_back(model_jump(plan, z, coeff, grid));
    }
    for (const auto& [mu, c] : additions) {
        SpectralJump j;
        j.lambda = mu;
        j.coefficient = 1.0 / c;
        j.kind = JumpSource::reference_solution;
        j.source_total = 0.0;
        j.source = reference_solution_W(mu, grid, plan.bc);
        jumps.push_back(std::move(j));
    }

    std::sort(jumps.begin(), jumps.end(),
              [](const SpectralJump& a, const SpectralJump& b) { return a.lambda < b.lambda; });
    return jumps;
}

// ---------------------------------------------------------------------------

namespace {

// diagonal factor 1 + c_i a_i of the tail-form assembly, evaluated without
// cancellation: 0 for removals, a/b for rescalings
double diag_factor(const SpectralJump& j) {
    if (j.kind != JumpSource::model_eigenfunction) return 1.0;
    const double a = j.source_total;
    const double c = j.coefficient;
    // c = -1/a  (removal)  ->  0 ;  c = 1/b - 1/a (rescale) -> a/b
    const double b_inv = c + 1.0 / a;
    if (b_inv == 0.0) return 0.0;
    return a * b_inv;
}

struct LUResult {
    double det = 1.0;
    bool singular = false;
};

// in-place LU with partial pivoting; rhs columns solved together
LUResult lu_solve(std::vector<double>& a, int n, std::array<std::vector<double>, 2>& rhs) {
    LUResult r;
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::fabs(a[static_cast<std::size_t>(col) * n + col]);
        for (int row = col + 1; row < n; ++row) {
            const double v = std::fabs(a[static_cast<std::size_t>(row) * n + col]);
            if (v > best) {
                best = v;
                pivot = row;
            }
        }
        if (best == 0.0) {
            r.singular = true;
            r.det = 0.0;
            return r;
        }
        if (pivot != col) {
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<std::size_t>(pivot) * n + j],
                          a[static_cast<std::size_t>(col) * n + j]);
            for (auto& col_rhs : rhs)
                std::swap(col_rhs[static_cast<std::size_t>(pivot)],
                          col_rhs[static_cast<std::size_t>(col)]);
            r.det = -r.det;
        }
        const double d = a[static_cast<std::size_t>(col) * n + col];
        r.det *= d;
        for (int row = col + 1; row < n; ++row) {
            const double f = a[static_cast<std::size_t>(row) * n + col] / d;
            if (f == 0.0) continue;
            a[static_cast<std::size_t>(row) * n + col] = 0.0;
            for (int j = col + 1; j < n; ++j)
                a[static_cast<std::size_t>(row) * n + j] -=
                    f * a[static_cast<std::size_t>(col) * n + j];
            for (auto& col_rhs : rhs)
                col_rhs[static_cast<std::size_t>(row)] -= f * col_rhs[static_cast<std::size_t>(col)];
        }
    }
    for (auto& col_rhs : rhs) {
        for (int row = n - 1; row >= 0; --row) {
            double s = col_rhs[static_cast<std::size_t>(row)];
            for (int j = row + 1; j < n; ++j)
                s -= a[static_cast<std::size_t>(row) * n + j] * col_rhs[static_cast<std::size_t>(j)];
            col_rhs[static_cast<std::size_t>(row)] = s / a[static_cast<std::size_t>(row) * n + row];
        }
    }
    return r;
}

double det_small(const std::vector<double>& m, int n) {
    if (n == 1) return m[0];
    if (n == 2) return m[0] * m[3] - m[1] * m[2];
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

}  // namespace

GLKernel::GLKernel(std::vector<SpectralJump> jumps) : jumps_(std::move(jumps)) {
    if (jumps_.empty()) return;
    grid_ = jumps_.front().source.grid;
    for (const auto& j : jumps_) {
        if (!j.source.grid.same_nodes(grid_))
            throw grid_mismatch_error("GLKernel: jump sources on different grids");
        if (j.coefficient == 0.0) throw error("GLKernel: zero jump coefficient");
    }
    const int n = size();
    pair_cum_.assign(static_cast<std::size_t>(n) * n, nullptr);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const bool any_ref = jumps_[static_cast<std::size_t>(i)].kind ==
                                     JumpSource::reference_solution ||
                                 jumps_[static_cast<std::size_t>(j)].kind ==
                                     JumpSource::reference_solution;
            if (!any_ref) continue;  // model-model pairs go through tail integrals
            auto cum = std::make_shared<CumulativeIntegral>(
                cumulative_inner(jumps_[static_cast<std::size_t>(i)].source,
                                 jumps_[static_cast<std::size_t>(j)].source, grid_));
            pair_cum_[static_cast<std::size_t>(i) * n + j] = cum;
            pair_cum_[static_cast<std::size_t>(j) * n + i] = cum;
        }
}

double GLKernel::pair_tail(int i, int j, double x) const {
    const auto& ji = jumps_[static_cast<std::size_t>(i)];
    const auto& jj = jumps_[static_cast<std::size_t>(j)];
    if (ji.kind != JumpSource::model_eigenfunction ||
        jj.kind != JumpSource::model_eigenfunction)
        throw error("GLKernel::pair_tail: defined for model-model pairs only");
    const double scale = (i == j) ? ji.source_total : 0.0;
    return tail_inner(ji.source, jj.source, x, scale);
}

double GLKernel::pair_integral(int i, int j, double x) const {
    const auto& cum = pair_cum_[static_cast<std::size_t>(i) * size() + j];
    if (cum) return cum->value_at(x);
    // model-model: orthogonal family, total is a_i delta_ij
    const double total = (i == j) ? jumps_[static_cast<std::size_t>(i)].source_total : 0.0;
    return total - pair_tail(i, j, x);
}

Vec2 GLKernel::source_value(int i, double x) const {
    return jumps_[static_cast<std::size_t>(i)].source.value(x);
}

GLSystem GLKernel::assemble(double x) const {
    if (x < 0.0) throw error("GLKernel::assemble: x must be >= 0");
    const int n = size();
    GLSystem sys;
    sys.x = x;
    sys.n = n;
    if (n == 0) {
        sys.determinant = 1.0;
        return sys;
    }

    sys.matrix_S.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (auto& h : sys.columns_H) h.assign(static_cast<std::size_t>(n), 0.0);

    // symmetric scalar integrals first
    std::vector<double> tails(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> cums(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<bool> model(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        model[static_cast<std::size_t>(i)] =
            jumps_[static_cast<std::size_t>(i)].kind == JumpSource::model_eigenfunction;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (model[static_cast<std::size_t>(i)] && model[static_cast<std::size_t>(j)]) {
                const double t = (x == 0.0) ? ((i == j) ? jumps_[static_cast<std::size_t>(i)]
                                                              .source_total
                                                        : 0.0)
                                            : pair_tail(i, j, x);
                tails[static_cast<std::size_t>(i) * n + j] = t;
                tails[static_cast<std::size_t>(j) * n + i] = t;
            } else {
                const double m = pair_integral(i, j, x);
                cums[static_cast<std::size_t>(i) * n + j] = m;
                cums[static_cast<std::size_t>(j) * n + i] = m;
            }
        }

    for (int i = 0; i < n; ++i) {
        const auto& ji = jumps_[static_cast<std::size_t>(i)];
        const double ci = ji.coefficient;
        for (int j = 0; j < n; ++j) {
            double s;
            if (model[static_cast<std::size_t>(i)] && model[static_cast<std::size_t>(j)]) {
                // delta_ij (1 + c_i a_i) - c_i tail_ij(x), cancellation-free
                s = -ci * tails[static_cast<std::size_t>(i) * n + j];
                if (i == j) s += diag_factor(ji);
            } else {
                s = ci * cums[static_cast<std::size_t>(i) * n + j];
                if (i == j) s += 1.0;
            }
            sys.matrix_S[static_cast<std::size_t>(i) * n + j] = s;
        }
        const Vec2 v = source_value(i, x);
        sys.columns_H[0][static_cast<std::size_t>(i)] = -ci * v.y1;
        sys.columns_H[1][static_cast<std::size_t>(i)] = -ci * v.y2;
    }

    // scale for the singularity floor: product of row maxima
    double scale = 1.0;
    for (int i = 0; i < n; ++i) {
        double row_max = 0.0;
        for (int j = 0; j < n; ++j)
            row_max = std::fmax(row_max,
                                std::fabs(sys.matrix_S[static_cast<std::size_t>(i) * n + j]));
        scale *= row_max;
    }

    std::vector<double> lu = sys.matrix_S;
    sys.solution_g = sys.columns_H;
    const LUResult r = lu_solve(lu, n, sys.solution_g);
    sys.determinant = r.det;
    if (r.singular || std::fabs(r.det) <= kSingularFloor * scale)
        throw singular_system_error(
            "assemble_system: determinant below the trust floor at x = " + std::to_string(x), x);
    return sys;
}

GLSystem assemble_system(std::span<const SpectralJump> jumps, double x) {
    GLKernel kernel(std::vector<SpectralJump>(jumps.begin(), jumps.end()));
    return kernel.assemble(x);
}

// ---------------------------------------------------------------------------

namespace {

// Omega~ = Omega_0 + G(x,x) B - B G(x,x) with G(x,x) = sum_k g_k(x) psi_k^*(x)
std::pair<double, double> potential_from_kernel(const GLKernel& kernel, double x) {
    const int n = kernel.size();
    if (n == 0) return {0.0, x};
    const GLSystem sys = kernel.assemble(x);
    double g11 = 0.0, g12 = 0.0, g21 = 0.0, g22 = 0.0;
    for (int k = 0; k < n; ++k) {
        const Vec2 v = kernel.source_value(k, x);
        const double gk1 = sys.solution_g[0][static_cast<std::size_t>(k)];
        const double gk2 = sys.solution_g[1][static_cast<std::size_t>(k)];
        g11 += gk1 * v.y1;
        g12 += gk1 * v.y2;
        g21 += gk2 * v.y1;
        g22 += gk2 * v.y2;
    }
    return {-(g12 + g21), x + (g11 - g22)};
}

}  // namespace

PerturbedOperator::PerturbedOperator(PerturbationPlan plan, Grid grid)
    : plan_(std::move(plan)), grid_(std::move(grid)) {
    kernel_ = std::make_shared<const GLKernel>(build_jumps(plan_, grid_));
}

std::pair<double, double> PerturbedOperator::potential_at(double x) const {
    return potential_from_kernel(*kernel_, x);
}

std::pair<double, double> PerturbedOperator::potential_at_determinant(double x) const {
    const int n = kernel_->size();
    if (n == 0) return {0.0, x};
    if (n > 3)
        throw error("potential_at_determinant: Cramer path is kept verbatim only for n <= 3");
    const GLSystem sys = kernel_->assemble(x);
    const double det = det_small(sys.matrix_S, n);
    double p = 0.0, q = x;
    for (int k = 0; k < n; ++k) {
        const Vec2 v = kernel_->source_value(k, x);
        for (int comp = 0; comp < 2; ++comp) {
            std::vector<double> sk = sys.matrix_S;
            for (int row = 0; row < n; ++row)
                sk[static_cast<std::size_t>(row) * n + k] =
                    sys.columns_H[static_cast<std::size_t>(comp)][static_cast<std::size_t>(row)];
            const double u = det_small(sk, n) / det;
            const double v_same = (comp == 0) ? v.y1 : v.y2;
            const double v_other = (comp == 0) ? v.y2 : v.y1;
            p -= v_other * u;
            q += ((comp == 0) ? 1.0 : -1.0) * v_same * u;
        }
    }
    return {p, q};
}

PotentialField PerturbedOperator::potential_field() const {
    if (kernel_->size() == 0) return model_potential();
    auto kernel = kernel_;
    return {[kernel](double x) { return potential_from_kernel(*kernel, x).first; },
            [kernel](double x) { return potential_from_kernel(*kernel, x).second; },
            "gl-synthesized"};
}

PotentialField PerturbedOperator::interpolated_potential_field(double x_hi, double step) const {
    if (kernel_->size() == 0) return model_potential();
    const PotentialCurve curve = tabulate_potential(*this, Grid::half_axis(x_hi, step));
    auto sp = std::make_shared<CubicSpline>(curve.grid.nodes, curve.p);
    auto sq = std::make_shared<CubicSpline>(curve.grid.nodes, curve.q);
    return {[sp](double x) { return (*sp)(x); }, [sq](double x) { return (*sq)(x); },
            "gl-synthesized (spline)"};
}

VectorTrajectory PerturbedOperator::eigenfunction(const EigenfunctionKey& key,
                                                  const Grid& grid) const {
    grid.validate();
    if (grid.x_min != 0.0) throw error("eigenfunction: grid must start at 0");

    double lambda = 0.0;
    VectorTrajectory base;
    bool model_target = false;
    int target_index = 0;
    if (key.added) {
        bool found = false;
        for (const auto& [mu, c] : plan_.additions)
            if (std::fabs(mu - key.mu) <= 1e-12) found = true;
        if (!found) throw error("eigenfunction: no added eigenvalue at the requested mu");
        lambda = key.mu;
        // a revived model eigenvalue (composition): the Cauchy solution at
        // lambda_z is the model eigenfunction itself
        const int k_reach = static_cast<int>(std::ceil(key.mu * key.mu)) + 2;
        for (int k = -k_reach; k <= k_reach && !model_target; ++k)
            if (std::fabs(half_axis_eigenvalue(k, plan_.bc) - key.mu) <= kLambdaMatchTol) {
                model_target = true;
                target_index = k;
            }
        base = model_target ? model_eigenfunction(target_index, plan_.bc, grid)
                            : reference_solution_W(key.mu, grid, plan_.bc);
    } else {
        if (plan_.removals.count(key.index))
            throw removed_index_error("eigenfunction: index " + std::to_string(key.index) +
                                      " was removed by the plan");
        lambda = half_axis_eigenvalue(key.index, plan_.bc);
        model_target = true;
        target_index = key.index;
        base = model_eigenfunction(key.index, plan_.bc, grid);
    }

    const int n = kernel_->size();
    const std::size_t n_nodes = grid.size();
    VectorTrajectory out;
    out.grid = grid;
    out.y1.resize(n_nodes);
    out.y2.resize(n_nodes);
    out.dy1.resize(n_nodes);
    out.dy2.resize(n_nodes);

    if (n == 0) {
        out = base;
        return out;
    }

    // cross integrals r_j(x) = ∫_0^x psi_j^* base ds per jump: model-model
    // targets through tail integrals (a_m delta - tail), everything touching a
    // reference solution through forward cumulative tables on this grid
    struct Cross {
        bool tail_form = false;
        double delta_term = 0.0;                       // a_m delta_{z_j m}
        VectorTrajectory source_here;                  // source sampled on `grid`
        std::shared_ptr<CumulativeIntegral> cum;       // when !tail_form
    };
    std::vector<Cross> cross(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const auto& jump = kernel_->jumps()[static_cast<std::size_t>(j)];
        Cross& c = cross[static_cast<std::size_t>(j)];
        if (jump.kind == JumpSource::model_eigenfunction)
            c.source_here = model_eigenfunction(jump.model_index, plan_.bc, grid);
        else
            c.source_here = reference_solution_W(jump.lambda, grid, plan_.bc);
        const bool both_model = jump.kind == JumpSource::model_eigenfunction && model_target;
        if (both_model) {
            c.tail_form = true;
            c.delta_term = (jump.model_index == target_index) ? jump.source_total : 0.0;
        } else {
            c.cum = std::make_shared<CumulativeIntegral>(
                cumulative_inner(c.source_here, base, grid));
        }
    }

    for (std::size_t i = 0; i < n_nodes; ++i) {
        const double x = grid.nodes[i];
        const GLSystem sys = kernel_->assemble(x);
        double v1 = base.y1[i];
        double v2 = base.y2[i];
        double g11 = 0.0, g12 = 0.0, g21 = 0.0, g22 = 0.0;
        for (int j = 0; j < n; ++j) {
            const Cross& c = cross[static_cast<std::size_t>(j)];
            const double gj1 = sys.solution_g[0][static_cast<std::size_t>(j)];
            const double gj2 = sys.solution_g[1][static_cast<std::size_t>(j)];
            if (x > 0.0) {  // every correction integral vanishes at the origin
                const double r = c.tail_form
                                     ? c.delta_term -
                                           tail_inner(c.source_here, base, x, c.delta_term)
                                     : c.cum->values[i];
                v1 += gj1 * r;
                v2 += gj2 * r;
            }
            g11 += gj1 * c.source_here.y1[i];
            g12 += gj1 * c.source_here.y2[i];
            g21 += gj2 * c.source_here.y1[i];
            g22 += gj2 * c.source_here.y2[i];
        }
        out.y1[i] = v1;
        out.y2[i] = v2;
        const double p = -(g12 + g21);
        const double q = x + (g11 - g22);
        out.dy1[i] = q * v1 - (p + lambda) * v2;
        out.dy2[i] = (lambda - p) * v1 - q * v2;
    }
    return out;
}

std::vector<SpectralPoint> PerturbedOperator::spectral_points(int k_min, int k_max) const {
    std::vector<SpectralPoint> pts;
    for (int k = k_min; k <= k_max; ++k) {
        if (plan_.removals.count(k)) continue;
        SpectralPoint pt = norming_constant(k, plan_.bc);
        if (auto it = plan_.rescalings.find(k); it != plan_.rescalings.end())
            pt.norming = it->second;
        pts.push_back(pt);
    }
    for (const auto& [mu, c] : plan_.additions) pts.push_back({mu, c});
    std::sort(pts.begin(), pts.end(),
              [](const SpectralPoint& a, const SpectralPoint& b) { return a.lambda < b.lambda; });
    return pts;
}

std::vector<SpectralPoint> PerturbedOperator::prescribed_points() const {
    std::vector<SpectralPoint> pts;
    for (const auto& [k, b] : plan_.rescalings)
        pts.push_back({half_axis_eigenvalue(k, plan_.bc), b});
    for (const auto& [mu, c] : plan_.additions) pts.push_back({mu, c});
    std::sort(pts.begin(), pts.end(),
              [](const SpectralPoint& a, const SpectralPoint& b) { return a.lambda < b.lambda; });
    return pts;
}

std::vector<double> PerturbedOperator::removed_lambdas() const {
    std::vector<double> out;
    for (int k : plan_.removals) out.push_back(half_axis_eigenvalue(k, plan_.bc));
    std::sort(out.begin(), out.end());
    return out;
}

double PerturbedOperator::norming_of(const EigenfunctionKey& key) const {
    if (key.added) {
        for (const auto& [mu, c] : plan_.additions)
            if (std::fabs(mu - key.mu) <= 1e-12) return c;
        throw error("norming_of: no added eigenvalue at the requested mu");
    }
    if (plan_.removals.count(key.index))
        throw removed_index_error("norming_of: index was removed by the plan");
    return current_norming(plan_, key.index);
}

PerturbedOperator synthesize(const PerturbationPlan& plan, const Grid& grid) {
    plan.validate();
    return PerturbedOperator(plan, grid);
}

PerturbedOperator resynthesize(const PerturbedOperator& base, const PerturbationPlan& plan) {
    const PerturbationPlan& bp = base.plan();
    if (plan.bc != bp.bc)
        throw plan_error("resynthesize: boundary condition does not match the base operator");

    // validate the incremental plan against the base's current spectral data
    for (int k : plan.removals)
        if (bp.removals.count(k))
            throw plan_error("resynthesize: index " + std::to_string(k) + " already removed");
    for (const auto& [k, b] : plan.rescalings) {
        if (bp.removals.count(k))
            throw plan_error("resynthesize: cannot rescale removed index " + std::to_string(k));
        if (plan.removals.count(k))
            throw plan_error("resynthesize: index " + std::to_string(k) +
                             " both removed and rescaled");
        if (!(b > 0.0)) throw plan_error("resynthesize: rescaled norming must be positive");
        if (b == current_norming(bp, k))
            throw plan_error("resynthesize: rescaling to the current norming is a no-op");
    }
    const auto current = [&](double mu) {
        for (const auto& [m, c] : bp.additions)
            if (std::fabs(m - mu) <= kLambdaMatchTol) return true;
        const int k_reach = static_cast<int>(std::ceil(mu * mu)) + 2;
        for (int k = -k_reach; k <= k_reach; ++k)
            if (!bp.removals.count(k) && !plan.removals.count(k) &&
                std::fabs(half_axis_eigenvalue(k, bp.bc) - mu) <= kLambdaMatchTol)
                return true;
        return false;
    };
    for (const auto& [mu, c] : plan.additions) {
        if (!(c > 0.0)) throw plan_error("resynthesize: added norming constants must be positive");
        if (current(mu))
            throw plan_error("resynthesize: added eigenvalue collides with the current spectrum");
    }

    // merge into one plan against the model
    PerturbationPlan merged = bp;
    for (int k : plan.removals) {
        merged.rescalings.erase(k);
        merged.removals.insert(k);
    }
    for (const auto& [k, b] : plan.rescalings) {
        if (b == norming_constant(k, merged.bc).norming)
            merged.rescalings.erase(k);  // back to the model value: no jump left
        else
            merged.rescalings[k] = b;
    }
    for (const auto& [mu, c] : plan.additions) merged.additions.emplace_back(mu, c);
    return PerturbedOperator(std::move(merged), base.grid());
}

std::pair<double, double> closed_form_remove_zero(double x) {
    if (x < 0.0) throw error("closed_form_remove_zero: x must be >= 0");
    const double denom = 0.5 * kSqrtPi * std::erfc(x);
    if (denom == 0.0) throw error("closed_form_remove_zero: tail underflow");
    return {0.0, x - std::exp(-x * x) / denom};
}

PotentialCurve tabulate_potential_serial(const PerturbedOperator& op, const Grid& grid) {
    grid.validate();
    PotentialCurve curve;
    curve.grid = grid;
    const std::size_t n = grid.size();
    curve.p.resize(n);
    curve.q.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [p, q] = op.potential_at(grid.nodes[i]);
        curve.p[i] = p;
        curve.q[i] = q;
    }
    return curve;
}

PotentialCurve tabulate_potential(const PerturbedOperator& op, const Grid& grid) {
    grid.validate();
    PotentialCurve curve;
    curve.grid = grid;
    const std::size_t n = grid.size();
    curve.p.resize(n);
    curve.q.resize(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const auto [p, q] = op.potential_at(grid.nodes[static_cast<std::size_t>(i)]);
        curve.p[static_cast<std::size_t>(i)] = p;
        curve.q[static_cast<std::size_t>(i)] = q;
    }
    return curve;
}

}  // namespace diracgl
