#pragma once

#include <iosfwd>
#include <string>

#include "diracgl/glcore.hpp"

namespace diracgl {

// Plan document: JSON with a strict schema; unknown fields are rejected.
//   {
//     "boundary": "alpha0" | "alphaPiOver2",       (default "alpha0")
//     "remove":  [0, 1],                            (default [])
//     "rescale": [{"k": 1, "b": 5.0}],              (default [])
//     "add":     [{"mu": 1.5, "c": 2.0}],           (default [])
//     "grid":    {"x_max": 12.0, "step": 0.00390625} (default 12, 1/256)
//   }
struct PlanDocument {
    PerturbationPlan plan;
    double grid_x_max = kDefaultXMax;
    double grid_step = kDefaultStep;
};

PlanDocument parse_plan(const std::string& text);       // throws plan_error
PlanDocument load_plan_file(const std::string& path);   // throws plan_error

std::string plan_echo(const PlanDocument& doc);  // plan plus resolved spectral data

}  // namespace diracgl
