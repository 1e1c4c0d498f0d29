#pragma once

#include <cstdint>

namespace catlab {

// Tolerances and limits shared by every numeric routine.
struct SolverConfig {
    double series_tol = 1e-12;   // absolute error target for series evaluation
    double root_tol = 1e-10;     // absolute x-tolerance for bracketed root finding
    double scan_step = 1e-3;     // step of the sign-change scan over [0,1)
    double quad_tol = 1e-8;      // absolute error target for adaptive quadrature
    std::int64_t max_terms = 100000;  // series term cap before a convergence error
    double lambda_max = 1e6;     // upper limit when growing a bracket in lambda
};

}  // namespace catlab
