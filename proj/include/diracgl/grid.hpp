#pragma once

#include <cstddef>
#include <vector>

namespace diracgl {

// Discretization of [x_min, x_max]; nodes strictly increasing, endpoints exact.
struct Grid {
    double x_min = 0.0;
    double x_max = 0.0;
    std::vector<double> nodes;

    static Grid uniform(double x_min, double x_max, double step);
    static Grid half_axis(double x_max, double step) { return uniform(0.0, x_max, step); }

    std::size_t size() const { return nodes.size(); }
    double operator[](std::size_t i) const { return nodes[i]; }

    // spacing of a uniform grid; throws nonuniform_grid_error otherwise
    double step() const;
    bool uniform_spacing(double* h_out = nullptr) const;
    bool same_nodes(const Grid& other) const;

    void validate() const;
};

inline constexpr double kDefaultXMax = 12.0;
inline constexpr double kDefaultStep = 1.0 / 256.0;

}  // namespace diracgl
