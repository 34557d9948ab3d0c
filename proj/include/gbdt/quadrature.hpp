#pragma once

#include <functional>

#include "gbdt/types.hpp"

namespace gbdt {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_depth = 28;
};

/// Adaptive Gauss-Legendre integration of a matrix-valued function over
/// [a, b] (b < a integrates with the opposite sign). Each panel is
/// accepted when the 10-point value and its two-half refinement agree;
/// the refined value plus the extrapolated correction is kept. Throws
/// QuadratureFailure when the bisection depth limit is reached first.
ComplexMatrix integrate(const std::function<ComplexMatrix(double)>& f, double a, double b,
                        const QuadratureOptions& opts = {});

}  // namespace gbdt
