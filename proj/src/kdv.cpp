#include "gbdt/kdv.hpp"

namespace gbdt {

KdvDressing make_kdv_dressing(const Dressing& d) {
    return KdvDressing{d, d.q * d.q * d.q};
}

KdvDressing make_kdv_dressing(const Triple& t, std::optional<ComplexMatrix> q,
                              const Tolerances& tol) {
    return make_kdv_dressing(make_dressing(t, std::move(q), tol));
}

LambdaPair kdv_lambda_pair(const KdvDressing& d, double x, double t) {
    const ComplexMatrix arg = Complex(0.0, 1.0) * (x * d.base.q + 4.0 * t * d.q3);
    const ComplexMatrix t1 = matfun::expm(arg) * d.base.f1;
    const ComplexMatrix t2 = matfun::expm(-arg) * d.base.f2;
    LambdaPair p;
    p.lambda1 = Complex(0.0, -1.0) * (d.base.q * (t1 - t2));
    p.lambda2 = t1 + t2;
    return p;
}

ComplexMatrix kdv_s_rate_t(const KdvDressing& d, double x, double t) {
    const LambdaPair lp = kdv_lambda_pair(d, x, t);
    const ComplexMatrix g2 = lp.lambda2 * lp.lambda2.adjoint();
    return 4.0 * (d.base.triple.a * g2 + g2 * d.base.triple.a.adjoint() +
                  lp.lambda1 * lp.lambda1.adjoint());
}

ComplexMatrix kdv_s_matrix(const KdvDressing& d, double x, double t, KdvPath path,
                           const QuadratureOptions& opts) {
    auto rate_x = [&d](double xi, double tau) {
        const ComplexMatrix l2 = kdv_lambda_pair(d, xi, tau).lambda2;
        return ComplexMatrix(l2 * l2.adjoint());
    };
    ComplexMatrix s = d.base.triple.s0;
    if (path == KdvPath::t_then_x) {
        if (t != 0.0)
            s += integrate([&](double tau) { return kdv_s_rate_t(d, 0.0, tau); }, 0.0, t, opts);
        if (x != 0.0)
            s += integrate([&](double xi) { return rate_x(xi, t); }, 0.0, x, opts);
    } else {
        if (x != 0.0)
            s += integrate([&](double xi) { return rate_x(xi, 0.0); }, 0.0, x, opts);
        if (t != 0.0)
            s += integrate([&](double tau) { return kdv_s_rate_t(d, x, tau); }, 0.0, t, opts);
    }
    return s;
}

ComplexMatrix kdv_potential(const KdvDressing& d, double x, double t, const Tolerances& tol) {
    const LambdaPair lp = kdv_lambda_pair(d, x, t);
    const ComplexMatrix s = kdv_s_matrix(d, x, t, KdvPath::t_then_x, tol.quad);
    const double rc = matfun::rcond(s);
    if (rc < tol.cond_tol) throw SingularS(x, t, rc);
    return detail::potential_from(lp.lambda1, lp.lambda2, s);
}

KdvField sample_kdv_field(const KdvDressing& d, const GridSpec& xgrid, const GridSpec& tgrid,
                          const Tolerances& tol) {
    xgrid.validate();
    tgrid.validate();
    const int nx = xgrid.count();
    const int nt = tgrid.count();
    KdvField field;
    field.xgrid = xgrid;
    field.tgrid = tgrid;
    field.samples.resize(static_cast<size_t>(nx) * static_cast<size_t>(nt));

    // March the t-leg at x = 0 once, then the x-leg within each row, so
    // every path segment is integrated exactly once.
    ComplexMatrix base = d.base.triple.s0;
    double t_prev = 0.0;
    for (int it = 0; it < nt; ++it) {
        const double t = tgrid.point(it);
        if (t != t_prev)
            base += integrate([&](double tau) { return kdv_s_rate_t(d, 0.0, tau); }, t_prev, t,
                              tol.quad);
        t_prev = t;
        auto rate_x = [&d, t](double xi) {
            const ComplexMatrix l2 = kdv_lambda_pair(d, xi, t).lambda2;
            return ComplexMatrix(l2 * l2.adjoint());
        };
        ComplexMatrix s = base;
        double x_prev = 0.0;
        for (int ix = 0; ix < nx; ++ix) {
            const double x = xgrid.point(ix);
            if (x != x_prev) s += integrate(rate_x, x_prev, x, tol.quad);
            x_prev = x;
            KdvSample& sample =
                field.samples[static_cast<size_t>(it) * static_cast<size_t>(nx) +
                              static_cast<size_t>(ix)];
            const auto [smin, smax] = matfun::sigma_extremes(s);
            sample.smin = smin;
            sample.smax = smax;
            sample.rcond = smax > 0.0 ? smin / smax : 0.0;
            if (sample.rcond < tol.cond_tol) {
                sample.singular = true;
                continue;
            }
            const LambdaPair lp = kdv_lambda_pair(d, x, t);
            sample.u = detail::potential_from(lp.lambda1, lp.lambda2, s);
        }
    }
    return field;
}

}  // namespace gbdt
