#pragma once

#include <optional>
#include <vector>

#include "gbdt/core.hpp"
#include "gbdt/grid.hpp"

namespace gbdt {

/// Dressing for the KdV flow; the time exponent needs Q^3, cached here.
struct KdvDressing {
    Dressing base;
    ComplexMatrix q3;
};

KdvDressing make_kdv_dressing(const Dressing& d);
KdvDressing make_kdv_dressing(const Triple& t, std::optional<ComplexMatrix> q = std::nullopt,
                              const Tolerances& tol = {});

/// Lambda pair with exponent i (x Q + 4 t Q^3); reduces to the stationary
/// pair at t = 0.
LambdaPair kdv_lambda_pair(const KdvDressing& d, double x, double t);

/// dS/dt = 4 (A L2 L2^* + L2 L2^* A^* + L1 L1^*) at (x, t).
ComplexMatrix kdv_s_rate_t(const KdvDressing& d, double x, double t);

/// Which leg of the L-shaped path from (0,0) to (x,t) is integrated first.
/// The two orders agree because the cross derivatives of S match; the
/// second order is kept as an independent check.
enum class KdvPath { t_then_x, x_then_t };

ComplexMatrix kdv_s_matrix(const KdvDressing& d, double x, double t,
                           KdvPath path = KdvPath::t_then_x,
                           const QuadratureOptions& opts = {});

/// The transformed h x h KdV solution at (x, t). Throws SingularS
/// (carrying x and t) when rcond(S) < tol.cond_tol.
ComplexMatrix kdv_potential(const KdvDressing& d, double x, double t,
                            const Tolerances& tol = {});

struct KdvSample {
    bool singular = false;
    double rcond = 0.0;  // sigma_min / sigma_max of S at this point
    double smin = 0.0;   // raw singular-value extremes of S; rcond of a
    double smax = 0.0;   // 1 x 1 matrix is always 1, these are not
    ComplexMatrix u;     // h x h, valid when !singular
};

struct KdvField {
    GridSpec xgrid;
    GridSpec tgrid;
    std::vector<KdvSample> samples;  // index = it * xgrid.count() + ix

    const KdvSample& at(int ix, int it) const {
        return samples[static_cast<size_t>(it) * static_cast<size_t>(xgrid.count()) +
                       static_cast<size_t>(ix)];
    }
};

/// Samples u over a rectangle, accumulating the path integrals
/// incrementally along each leg. Singular points are flagged, not fatal.
KdvField sample_kdv_field(const KdvDressing& d, const GridSpec& xgrid, const GridSpec& tgrid,
                          const Tolerances& tol = {});

}  // namespace gbdt
