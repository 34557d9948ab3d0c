#include "gbdt/verify.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "gbdt/errors.hpp"

namespace gbdt::verify {

namespace {

template <typename T, typename F>
std::optional<T> try_sample(const F& f, double x, double t, bool has_t,
                            std::vector<SkippedPoint>& skipped) {
    try {
        if constexpr (std::is_invocable_v<F, double, double>)
            return f(x, t);
        else
            return f(x);
    } catch (const SingularS& e) {
        skipped.push_back(SkippedPoint{x, t, has_t, e.what()});
        return std::nullopt;
    }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

}  // namespace

ResidualReport schrodinger_residual(const PotentialSampler& u, const SolutionSampler& y,
                                    Complex lambda, const GridSpec& grid) {
    grid.validate();
    const int n = grid.count();
    if (n < 5)
        throw GridTooCoarse("schrodinger_residual: five-point stencil needs >= 5 grid points");
    ResidualReport rep;
    std::vector<std::optional<ComplexVector>> ys(static_cast<size_t>(n));
    std::vector<std::optional<ComplexMatrix>> us(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = grid.point(i);
        ys[i] = try_sample<ComplexVector>(y, x, 0.0, false, rep.skipped);
        if (ys[i]) {
            us[i] = try_sample<ComplexMatrix>(u, x, 0.0, false, rep.skipped);
            if (!us[i]) ys[i].reset();
        }
    }
    double amp = 0.0, pot = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!ys[i]) continue;
        amp = std::max(amp, ys[i]->norm());
        pot = std::max(pot, us[i]->norm());
    }
    const double base = 1.0 + pot + std::abs(lambda);
    rep.scale = amp * base * base * base;
    const double h2 = 12.0 * grid.step * grid.step;
    for (int i = 2; i + 2 < n; ++i) {
        if (!(ys[i - 2] && ys[i - 1] && ys[i] && ys[i + 1] && ys[i + 2])) continue;
        const ComplexVector ypp = (-(*ys[i - 2]) + 16.0 * (*ys[i - 1]) - 30.0 * (*ys[i]) +
                                   16.0 * (*ys[i + 1]) - (*ys[i + 2])) /
                                  h2;
        const ComplexVector r = -ypp + (*us[i]) * (*ys[i]) - lambda * (*ys[i]);
        const double rn = r.norm();
        ++rep.evaluated;
        if (rn > rep.max_residual) {
            rep.max_residual = rn;
            rep.at_x = grid.point(i);
        }
    }
    return rep;
}

ResidualReport dynamic_residual(const PotentialSampler& u, const MatrixSampler2& psi,
                                const GridSpec& xgrid, const GridSpec& tgrid) {
    xgrid.validate();
    tgrid.validate();
    const int nx = xgrid.count();
    const int nt = tgrid.count();
    if (nx < 5 || nt < 3)
        throw GridTooCoarse("dynamic_residual: need >= 5 x-points and >= 3 t-points");
    ResidualReport rep;
    std::vector<std::optional<ComplexMatrix>> us(static_cast<size_t>(nx));
    std::vector<std::vector<std::optional<ComplexMatrix>>> ps(
        static_cast<size_t>(nx), std::vector<std::optional<ComplexMatrix>>(static_cast<size_t>(nt)));
    for (int i = 0; i < nx; ++i) {
        const double x = xgrid.point(i);
        us[i] = try_sample<ComplexMatrix>(u, x, 0.0, false, rep.skipped);
        if (!us[i]) continue;
        for (int j = 0; j < nt; ++j)
            ps[i][j] = try_sample<ComplexMatrix>(psi, x, tgrid.point(j), true, rep.skipped);
    }
    const double hx2 = 12.0 * xgrid.step * xgrid.step;
    const double ht2 = 2.0 * tgrid.step;
    for (int i = 2; i + 2 < nx; ++i) {
        if (!us[i]) continue;
        for (int j = 1; j + 1 < nt; ++j) {
            if (!(ps[i - 2][j] && ps[i - 1][j] && ps[i][j] && ps[i + 1][j] && ps[i + 2][j] &&
                  ps[i][j - 1] && ps[i][j + 1]))
                continue;
            const ComplexMatrix pxx = (-(*ps[i - 2][j]) + 16.0 * (*ps[i - 1][j]) -
                                       30.0 * (*ps[i][j]) + 16.0 * (*ps[i + 1][j]) -
                                       (*ps[i + 2][j])) /
                                      hx2;
            const ComplexMatrix pt = ((*ps[i][j + 1]) - (*ps[i][j - 1])) / ht2;
            const ComplexMatrix up = (*us[i]) * (*ps[i][j]);
            const double rn = (Complex(0.0, 1.0) * pt + pxx - up).norm();
            const double local = pt.norm() + pxx.norm() + up.norm();
            ++rep.evaluated;
            if (local > rep.scale) rep.scale = local;
            if (rn > rep.max_residual) {
                rep.max_residual = rn;
                rep.at_x = xgrid.point(i);
                rep.at_t = tgrid.point(j);
            }
        }
    }
    return rep;
}

ResidualReport kdv_residual(const PotentialSampler2& u, const GridSpec& xgrid,
                            const GridSpec& tgrid) {
    xgrid.validate();
    tgrid.validate();
    const int nx = xgrid.count();
    const int nt = tgrid.count();
    if (nx < 5 || nt < 3)
        throw GridTooCoarse("kdv_residual: need >= 5 x-points and >= 3 t-points");
    ResidualReport rep;
    std::vector<std::vector<std::optional<ComplexMatrix>>> fs(
        static_cast<size_t>(nx), std::vector<std::optional<ComplexMatrix>>(static_cast<size_t>(nt)));
    for (int j = 0; j < nt; ++j)
        for (int i = 0; i < nx; ++i)
            fs[i][j] = try_sample<ComplexMatrix>(u, xgrid.point(i), tgrid.point(j), true,
                                                 rep.skipped);
    const double dx = xgrid.step;
    const double dt = tgrid.step;
    for (int i = 2; i + 2 < nx; ++i) {
        for (int j = 1; j + 1 < nt; ++j) {
            if (!(fs[i - 2][j] && fs[i - 1][j] && fs[i][j] && fs[i + 1][j] && fs[i + 2][j] &&
                  fs[i][j - 1] && fs[i][j + 1]))
                continue;
            const ComplexMatrix ux = ((*fs[i - 2][j]) - 8.0 * (*fs[i - 1][j]) +
                                      8.0 * (*fs[i + 1][j]) - (*fs[i + 2][j])) /
                                     (12.0 * dx);
            const ComplexMatrix uxxx = (-(*fs[i - 2][j]) + 2.0 * (*fs[i - 1][j]) -
                                        2.0 * (*fs[i + 1][j]) + (*fs[i + 2][j])) /
                                       (2.0 * dx * dx * dx);
            const ComplexMatrix ut = ((*fs[i][j + 1]) - (*fs[i][j - 1])) / (2.0 * dt);
            const ComplexMatrix uux = (*fs[i][j]) * ux;
            const ComplexMatrix uxu = ux * (*fs[i][j]);
            const double rn = (ut - 3.0 * uux - 3.0 * uxu + uxxx).norm();
            const double local = ut.norm() + 3.0 * uux.norm() + 3.0 * uxu.norm() + uxxx.norm();
            ++rep.evaluated;
            if (local > rep.scale) rep.scale = local;
            if (rn > rep.max_residual) {
                rep.max_residual = rn;
                rep.at_x = xgrid.point(i);
                rep.at_t = tgrid.point(j);
            }
        }
    }
    return rep;
}

double identity_residual(const ComplexMatrix& a, const ComplexMatrix& s,
                         const ComplexMatrix& lambda1, const ComplexMatrix& lambda2) {
    return (a * s - s * a.adjoint() -
            (lambda1 * lambda2.adjoint() - lambda2 * lambda1.adjoint()))
        .norm();
}

double identity_scale(const ComplexMatrix& a, const ComplexMatrix& s,
                      const ComplexMatrix& lambda1, const ComplexMatrix& lambda2) {
    return std::max(1.0, a.norm() * s.norm() + lambda1.squaredNorm() + lambda2.squaredNorm());
}

ComplexMatrix brute_force_sylvester(const ComplexMatrix& p, const ComplexMatrix& r,
                                    const ComplexMatrix& c) {
    require_square(p, "brute_force_sylvester");
    require_square(r, "brute_force_sylvester");
    const Index n = p.rows();
    const Index k = r.rows();
    if (c.rows() != n || c.cols() != k)
        throw ShapeMismatch("brute_force_sylvester: right side must be rows(P) x rows(R)");
    if (n > 6 || k > 6)
        throw std::invalid_argument("brute_force_sylvester: cross-check route is capped at 6");
    const ComplexMatrix sys = kron(ComplexMatrix::Identity(k, k), p) +
                              kron(r.transpose(), ComplexMatrix::Identity(n, n));
    Eigen::FullPivLU<ComplexMatrix> lu(sys);
    if (!lu.isInvertible())
        throw SingularSystem("brute_force_sylvester: assembled system is singular");
    const ComplexVector vec = Eigen::Map<const ComplexVector>(c.data(), c.size());
    const ComplexVector sol = lu.solve(vec);
    return Eigen::Map<const ComplexMatrix>(sol.data(), n, k);
}

}  // namespace gbdt::verify
