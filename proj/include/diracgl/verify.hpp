#pragma once

#include <string>
#include <vector>

#include "diracgl/cauchy.hpp"
#include "diracgl/glcore.hpp"
#include "diracgl/grid.hpp"
#include "diracgl/trajectory.hpp"

namespace diracgl {

struct ResidualReport {
    double sup_residual = 0.0;
    Grid grid;
    double lambda = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// sup-norm of B y' + Omega y - lambda y over interior nodes, y' by
// fourth-order central differences (uniform grid required)
ResidualReport dirac_residual(const PotentialField& potential, double lambda,
                              const VectorTrajectory& y, double tolerance = 1e-6);

// Gram matrix of half-axis inner products (shared grid required)
std::vector<std::vector<double>> orthogonality_matrix(
    const std::vector<VectorTrajectory>& family);

struct ScanOptions {
    double x_scan = 8.0;          // far boundary for the shooting classification
    double min_depth = 6.0;       // log-units below the local background
    double lambda_tol = 1e-6;     // golden-section refinement width
    long double ode_rel_tol = 1e-12L;
};

struct SpectrumScan {
    double lo = 0.0, hi = 0.0;
    std::vector<double> lambdas;   // sample positions
    std::vector<double> miss;      // log ||psi(x_scan, lambda)||
    std::vector<double> detected;  // refined eigenvalue estimates, increasing
};

SpectrumScan spectrum_scan(const PotentialField& potential, double alpha, double lo, double hi,
                           int samples, const ScanOptions& opt = {});
SpectrumScan spectrum_scan_serial(const PotentialField& potential, double alpha, double lo,
                                  double hi, int samples, const ScanOptions& opt = {});

struct CheckResult {
    std::string name;
    double observed = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

struct VerifyTolerances {
    double residual = 1e-6;
    double norming = 1e-6;
    double orthogonality = 1e-6;
    double scan_location = 1e-4;
    double scan_window = 0.3;
    int index_window = 4;        // model indices |k| <= window are verified
    double x_verify = 6.5;       // residual/norming grid reach
    double verify_step = 1.0 / 256.0;
    ScanOptions scan;
};

// Residuals, boundary values, norming quadrature, orthogonality, determinant
// positivity, and shooting scans around every prescribed or removed
// eigenvalue. Failures are report entries, not exceptions.
VerifyReport verify_plan(const PerturbedOperator& op, const VerifyTolerances& tol = {});

std::string format_report(const VerifyReport& report);

}  // namespace diracgl
