#pragma once

#include <vector>

namespace diracgl {

// Natural cubic spline through (x_k, f_k); x strictly increasing.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> f);

    // clamped to the table range with linear extension outside
    double operator()(double x) const;

private:
    std::vector<double> x_, f_, m_;  // m_ = second derivatives at nodes
};

}  // namespace diracgl
