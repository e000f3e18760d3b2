#pragma once

#include <array>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "diracgl/cauchy.hpp"
#include "diracgl/grid.hpp"
#include "diracgl/model.hpp"
#include "diracgl/quadrature.hpp"

namespace diracgl {

// Declarative description of the spectral changes applied to a model operator.
struct PerturbationPlan {
    BoundaryCondition bc = BoundaryCondition::alpha0;
    std::set<int> removals;
    std::map<int, double> rescalings;                   // index -> new norming b > 0
    std::vector<std::pair<double, double>> additions;   // (mu, c > 0)

    bool empty() const { return removals.empty() && rescalings.empty() && additions.empty(); }
    void validate() const;  // throws plan_error
};

enum class JumpSource { model_eigenfunction, reference_solution };

// One point mass of d(rho_tilde - rho): removal -a^{-1}, rescaling b^{-1}-a^{-1},
// addition +c^{-1}; the source is the Cauchy solution at that eigenvalue.
struct SpectralJump {
    double lambda = 0.0;
    double coefficient = 0.0;
    JumpSource kind = JumpSource::model_eigenfunction;
    int model_index = 0;       // meaningful for model sources
    double source_total = 0.0; // ∫_0^inf |source|^2 (= a_z for model sources)
    VectorTrajectory source;
};

std::vector<SpectralJump> build_jumps(const PerturbationPlan& plan, const Grid& grid);

// The per-x linear system S g_p = H_p, p = 1, 2, with
//   S_ij = delta_ij + coeff_i * m_ij(x),  H_{p,i} = -coeff_i * psi_{i,p}(x),
// m_ij(x) = ∫_0^x psi_i^* psi_j ds. Model-model entries are assembled through
// tail integrals so a_i delta_ij - v_ij(x) never suffers cancellation.
struct GLSystem {
    double x = 0.0;
    int n = 0;
    std::vector<double> matrix_S;                   // row-major n x n
    std::array<std::vector<double>, 2> columns_H;   // components p = 1, 2
    std::array<std::vector<double>, 2> solution_g;
    double determinant = 1.0;
};

// Degenerate GL kernel built from a jump list. Pairwise integrals involving
// reference solutions are tabulated once; all per-x evaluation afterwards is
// pure and safe to run concurrently.
class GLKernel {
public:
    explicit GLKernel(std::vector<SpectralJump> jumps);

    int size() const { return static_cast<int>(jumps_.size()); }
    std::span<const SpectralJump> jumps() const { return jumps_; }
    const Grid& grid() const { return grid_; }

    GLSystem assemble(double x) const;  // throws singular_system_error

    // m_ij(x) = ∫_0^x psi_i^* psi_j
    double pair_integral(int i, int j, double x) const;
    // ∫_x^inf psi_i^* psi_j (model-model pairs only)
    double pair_tail(int i, int j, double x) const;
    Vec2 source_value(int i, double x) const;

private:
    std::vector<SpectralJump> jumps_;
    Grid grid_;
    // forward cumulative tables for pairs with at least one reference source,
    // keyed i * n + j with i <= j
    std::vector<std::shared_ptr<const CumulativeIntegral>> pair_cum_;
};

// one-shot convenience around GLKernel
GLSystem assemble_system(std::span<const SpectralJump> jumps, double x);

// Addresses an eigenfunction of the perturbed operator: a surviving or
// rescaled model index, or an added eigenvalue by its mu value.
struct EigenfunctionKey {
    bool added = false;
    int index = 0;
    double mu = 0.0;

    static EigenfunctionKey model(int k) { return {false, k, 0.0}; }
    static EigenfunctionKey added_mu(double mu) { return {true, 0, mu}; }
};

class PerturbedOperator {
public:
    PerturbedOperator(PerturbationPlan plan, Grid grid);

    const PerturbationPlan& plan() const { return plan_; }
    const Grid& grid() const { return grid_; }
    const GLKernel& kernel() const { return *kernel_; }

    // (p, q) through the transformation-kernel commutator (authoritative path)
    std::pair<double, double> potential_at(double x) const;
    // (p, q) through the expanded determinant formulas (Cramer, n <= 3)
    std::pair<double, double> potential_at_determinant(double x) const;

    PotentialField potential_field() const;  // exact per-x evaluation
    // spline over a tabulated curve; cheap enough for shooting scans
    PotentialField interpolated_potential_field(double x_hi, double step) const;

    VectorTrajectory eigenfunction(const EigenfunctionKey& key, const Grid& grid) const;

    // post-perturbation spectrum: survivors in [k_min, k_max] with their
    // normings, rescalings applied, additions merged in, sorted by lambda
    std::vector<SpectralPoint> spectral_points(int k_min, int k_max) const;
    // the points the plan touched (rescaled + added), with prescribed normings
    std::vector<SpectralPoint> prescribed_points() const;
    std::vector<double> removed_lambdas() const;

    double norming_of(const EigenfunctionKey& key) const;
    bool is_removed(int k) const { return plan_.removals.count(k) != 0; }

private:
    PerturbationPlan plan_;
    Grid grid_;
    std::shared_ptr<const GLKernel> kernel_;
};

PerturbedOperator synthesize(const PerturbationPlan& plan, const Grid& grid);

// Composition through re-synthesis from the model with a merged jump list.
// The additional plan is validated against the base's current spectral data.
PerturbedOperator resynthesize(const PerturbedOperator& base, const PerturbationPlan& plan);

// Reference potential of the single-removal {0} operator:
// p = 0, q(x) = x - e^{-x^2} / ∫_x^inf e^{-s^2} ds  (complementary-integral form)
std::pair<double, double> closed_form_remove_zero(double x);

// --- grid tabulation kernels -------------------------------------------------
// The OpenMP kernel and its serial reference produce identical bytes: each
// node is an independent pure evaluation.
struct PotentialCurve {
    Grid grid;
    std::vector<double> p, q;
};

PotentialCurve tabulate_potential(const PerturbedOperator& op, const Grid& grid);
PotentialCurve tabulate_potential_serial(const PerturbedOperator& op, const Grid& grid);

}  // namespace diracgl
