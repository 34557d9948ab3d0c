#include "gbdt/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace gbdt {

namespace {

// 10-point Gauss-Legendre nodes (positive half) and weights on [-1, 1].
constexpr double kNode[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                             0.8650633666889845, 0.9739065285171717};
constexpr double kWeight[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                               0.1494513491505806, 0.0666713443086881};

ComplexMatrix panel(const std::function<ComplexMatrix(double)>& f, double a, double b,
                    Index rows, Index cols) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    ComplexMatrix acc = ComplexMatrix::Zero(rows, cols);
    for (int i = 0; i < 5; ++i) {
        acc += kWeight[i] * (f(mid - half * kNode[i]) + f(mid + half * kNode[i]));
    }
    return half * acc;
}

ComplexMatrix refine(const std::function<ComplexMatrix(double)>& f, double a, double b,
                     const ComplexMatrix& whole, double tol, int depth, int max_depth) {
    const double mid = 0.5 * (a + b);
    const ComplexMatrix left = panel(f, a, mid, whole.rows(), whole.cols());
    const ComplexMatrix right = panel(f, mid, b, whole.rows(), whole.cols());
    const ComplexMatrix both = left + right;
    const double err = (both - whole).norm();
    if (err <= tol) {
        // Richardson correction for the order-20 rule.
        return both + (both - whole) / (std::pow(2.0, 20) - 1.0);
    }
    if (depth >= max_depth)
        throw QuadratureFailure("integrate: bisection depth limit reached before convergence");
    return refine(f, a, mid, left, 0.5 * tol, depth + 1, max_depth) +
           refine(f, mid, b, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

ComplexMatrix integrate(const std::function<ComplexMatrix(double)>& f, double a, double b,
                        const QuadratureOptions& opts) {
    const ComplexMatrix probe = f(0.5 * (a + b));
    require_finite(probe, "integrate");
    if (a == b) return ComplexMatrix::Zero(probe.rows(), probe.cols());
    const ComplexMatrix whole = panel(f, a, b, probe.rows(), probe.cols());
    const double tol = std::max(opts.abs_tol, opts.rel_tol * whole.norm());
    return refine(f, a, b, whole, tol, 0, opts.max_depth);
}

}  // namespace gbdt
