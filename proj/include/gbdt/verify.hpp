#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gbdt/grid.hpp"
#include "gbdt/types.hpp"

namespace gbdt::verify {

/// A sample the residual scan could not take (singular S there).
struct SkippedPoint {
    double x = 0.0;
    double t = 0.0;
    bool has_t = false;
    std::string reason;
};

struct ResidualReport {
    double max_residual = 0.0;
    double at_x = 0.0;  // argmax location
    double at_t = 0.0;
    double scale = 0.0;  // data-derived magnitude for relative bounds
    int evaluated = 0;   // stencil centers measured
    std::vector<SkippedPoint> skipped;

    /// max(floor, c * step^order * scale): the tolerance shape used by the
    /// finite-difference checks.
    double bound(double floor, double c, double step, int order) const {
        double rel = c * scale;
        for (int k = 0; k < order; ++k) rel *= step;
        return floor > rel ? floor : rel;
    }
};

using PotentialSampler = std::function<ComplexMatrix(double)>;
using SolutionSampler = std::function<ComplexVector(double)>;
using PotentialSampler2 = std::function<ComplexMatrix(double, double)>;
using MatrixSampler2 = std::function<ComplexMatrix(double, double)>;

/// max over interior grid points of | -y'' + u y - lambda y | with a
/// five-point fourth-order stencil for y''. Samplers may throw SingularS;
/// such points are recorded and every stencil touching them is skipped.
/// scale ~ sup|y| (1 + sup|u| + |lambda|)^3, a proxy for the sixth
/// derivative entering the truncation error. Throws GridTooCoarse
/// below five points.
ResidualReport schrodinger_residual(const PotentialSampler& u, const SolutionSampler& y,
                                    Complex lambda, const GridSpec& grid);

/// max over interior points of | i psi_t + psi_xx - u psi |, fourth-order
/// in x, second-order central in t. scale = sup(|psi_t| + |psi_xx| + |u psi|).
ResidualReport dynamic_residual(const PotentialSampler& u, const MatrixSampler2& psi,
                                const GridSpec& xgrid, const GridSpec& tgrid);

/// max over interior points of | u_t - 3 u u_x - 3 u_x u + u_xxx |, with
/// a second-order five-point stencil for u_xxx and central differences in
/// t. scale = sup(|u_t| + 3|u u_x| + 3|u_x u| + |u_xxx|).
ResidualReport kdv_residual(const PotentialSampler2& u, const GridSpec& xgrid,
                            const GridSpec& tgrid);

/// | A S - S A^* - (L1 L2^* - L2 L1^*) |: the invariant the construction
/// propagates from its input data to every x (and, for KdV, every t).
double identity_residual(const ComplexMatrix& a, const ComplexMatrix& s,
                         const ComplexMatrix& lambda1, const ComplexMatrix& lambda2);

/// Companion magnitude for relative identity bounds.
double identity_scale(const ComplexMatrix& a, const ComplexMatrix& s,
                      const ComplexMatrix& lambda1, const ComplexMatrix& lambda2);

/// Dense Kronecker solve of P Z + Z R = C, independent of the Schur route;
/// for cross-checks on small systems only (dimensions capped at 6).
/// Throws SingularSystem when the assembled matrix is singular.
ComplexMatrix brute_force_sylvester(const ComplexMatrix& p, const ComplexMatrix& r,
                                    const ComplexMatrix& c);

}  // namespace gbdt::verify
