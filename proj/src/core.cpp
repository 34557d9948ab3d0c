#include "gbdt/core.hpp"

#include <cmath>
#include <utility>

namespace gbdt {

Triple::Triple(ComplexMatrix a_in, ComplexMatrix s0_in, ComplexMatrix theta1_in,
               ComplexMatrix theta2_in)
    : a(std::move(a_in)), s0(std::move(s0_in)), theta1(std::move(theta1_in)),
      theta2(std::move(theta2_in)) {
    require_square(a, "Triple");
    require_square(s0, "Triple");
    const Index nn = a.rows();
    if (s0.rows() != nn || theta1.rows() != nn || theta2.rows() != nn)
        throw ShapeMismatch("Triple: A, S0, theta1, theta2 must share the row count");
    if (theta1.cols() != theta2.cols() || theta1.cols() < 1)
        throw ShapeMismatch("Triple: theta1 and theta2 must be n x h with h >= 1");
    require_finite(a, "Triple");
    require_finite(s0, "Triple");
    require_finite(theta1, "Triple");
    require_finite(theta2, "Triple");
}

ComplexMatrix Triple::pi0() const {
    ComplexMatrix pi(n(), 2 * h());
    pi.leftCols(h()) = theta1;
    pi.rightCols(h()) = theta2;
    return pi;
}

TripleResidual validate_triple(const Triple& t) {
    const ComplexMatrix lhs = t.a * t.s0 - t.s0 * t.a.adjoint();
    const ComplexMatrix rhs = t.theta1 * t.theta2.adjoint() - t.theta2 * t.theta1.adjoint();
    TripleResidual r;
    r.identity = (lhs - rhs).norm();
    r.hermiticity = hermiticity_defect(t.s0);
    r.scale = std::max(1.0, t.a.norm() * t.s0.norm() + t.pi0().squaredNorm());
    return r;
}

Dressing make_dressing(const Triple& t, std::optional<ComplexMatrix> q, const Tolerances& tol) {
    const Index n = t.n();
    ComplexMatrix root;
    if (q.has_value()) {
        root = std::move(*q);
        require_square(root, "make_dressing");
        require_finite(root, "make_dressing");
        if (root.rows() != n)
            throw ShapeMismatch("make_dressing: Q must match the size of A");
        const double defect = (root * root - t.a).norm();
        if (defect > tol.root_tol * std::max(1.0, t.a.norm()))
            throw InconsistentRoot("make_dressing: supplied Q fails Q*Q = A");
    } else {
        root = matfun::sqrtm(t.a, tol.rank_tol);
    }

    // Minimum-norm g with Q g = i theta1; equals i Q^{-1} theta1 when Q is
    // invertible. The residual test rejects theta1 outside the range of Q.
    const ComplexMatrix rhs = Complex(0.0, 1.0) * t.theta1;
    Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(root);
    const ComplexMatrix g = cod.solve(rhs);
    if ((root * g - rhs).norm() > tol.root_tol * std::max(1.0, t.theta1.norm()))
        throw NoDressing("make_dressing: theta1 is not in the range of Q");

    return Dressing{t, std::move(root), 0.5 * (t.theta2 + g), 0.5 * (t.theta2 - g)};
}

LambdaPair lambda_pair(const Dressing& d, double x) {
    const Complex ix(0.0, x);
    const ComplexMatrix t1 = matfun::expm(ix * d.q) * d.f1;
    const ComplexMatrix t2 = matfun::expm(-ix * d.q) * d.f2;
    LambdaPair p;
    p.lambda1 = Complex(0.0, -1.0) * (d.q * (t1 - t2));
    p.lambda2 = t1 + t2;
    return p;
}

LambdaPair lambda_pair_blockexp(const Dressing& d, double x) {
    const Index n = d.triple.n();
    ComplexMatrix blk = ComplexMatrix::Zero(2 * n, 2 * n);
    blk.topRightCorner(n, n) = d.triple.a;
    blk.bottomLeftCorner(n, n) = -ComplexMatrix::Identity(n, n);
    ComplexMatrix stacked(2 * n, d.triple.h());
    stacked.topRows(n) = d.triple.theta1;
    stacked.bottomRows(n) = d.triple.theta2;
    const ComplexMatrix prop = matfun::expm(x * blk) * stacked;
    return LambdaPair{prop.topRows(n), prop.bottomRows(n)};
}

namespace {

// The closed form needs unique solutions of all three shifted equations:
// spec(Q) must clear its conjugate mirror (Z1, Z3) and its negated
// conjugate mirror (Z2) by a relative margin.
bool sylvester_route_open(const ComplexMatrix& q, double margin) {
    const ComplexVector eig = matfun::eigenvalues(q);
    const double scale = std::max(1.0, q.norm());
    for (Index i = 0; i < eig.size(); ++i) {
        for (Index j = 0; j < eig.size(); ++j) {
            const Complex mirror = std::conj(eig(j));
            if (std::abs(eig(i) - mirror) <= margin * scale) return false;
            if (std::abs(eig(i) + mirror) <= margin * scale) return false;
        }
    }
    return true;
}

}  // namespace

SMatrixEngine build_s_engine(const Dressing& d, const Tolerances& tol) {
    if (sylvester_route_open(d.q, tol.closed_form_margin))
        return build_s_engine(d, SMatrixEngine::Mode::closed_form, tol);
    return build_s_engine(d, SMatrixEngine::Mode::quadrature, tol);
}

SMatrixEngine build_s_engine(const Dressing& d, SMatrixEngine::Mode mode,
                             const Tolerances& tol) {
    SMatrixEngine e;
    e.dressing_ = d;
    e.mode_ = mode;
    e.quad_ = tol.quad;
    if (mode == SMatrixEngine::Mode::closed_form) {
        const ComplexMatrix qa = d.q.adjoint();
        const Complex mi(0.0, -1.0);
        e.z1_ = matfun::solve_sylvester(d.q, -qa, mi * (d.f1 * d.f1.adjoint()), tol.eigen_tol);
        e.z2_ = matfun::solve_sylvester(d.q, qa, mi * (d.f1 * d.f2.adjoint()), tol.eigen_tol);
        e.z3_ = matfun::solve_sylvester(d.q, -qa, -mi * (d.f2 * d.f2.adjoint()), tol.eigen_tol);
        e.offset_ = d.triple.s0 - (e.z1_ + e.z2_ + e.z2_.adjoint() + e.z3_);
    }
    return e;
}

ComplexMatrix SMatrixEngine::at(double x) const {
    if (mode_ == Mode::closed_form) {
        const Complex ix(0.0, x);
        const ComplexMatrix ep = matfun::expm(ix * dressing_.q);
        const ComplexMatrix em = matfun::expm(-ix * dressing_.q);
        return ep * z1_ * ep.adjoint() + ep * z2_ * em.adjoint() +
               em * z2_.adjoint() * ep.adjoint() + em * z3_ * em.adjoint() + offset_;
    }
    if (x == 0.0) return dressing_.triple.s0;
    const Dressing& d = dressing_;
    auto integrand = [&d](double xi) {
        const ComplexMatrix l2 = lambda_pair(d, xi).lambda2;
        return ComplexMatrix(l2 * l2.adjoint());
    };
    return dressing_.triple.s0 + integrate(integrand, 0.0, x, quad_);
}

namespace detail {

ComplexMatrix potential_from(const ComplexMatrix& lambda1, const ComplexMatrix& lambda2,
                             const ComplexMatrix& s) {
    Eigen::PartialPivLU<ComplexMatrix> lu(s);
    const ComplexMatrix w1 = lu.solve(lambda1);
    const ComplexMatrix w2 = lu.solve(lambda2);
    const ComplexMatrix x12 = lambda1.adjoint() * w2;
    const ComplexMatrix x21 = lambda2.adjoint() * w1;
    const ComplexMatrix x22 = lambda2.adjoint() * w2;
    return 2.0 * (x12 + x21 + x22 * x22);
}

}  // namespace detail

ComplexMatrix potential(const Dressing& d, const SMatrixEngine& engine, double x,
                        const Tolerances& tol) {
    const LambdaPair lp = lambda_pair(d, x);
    const ComplexMatrix s = engine.at(x);
    const double rc = matfun::rcond(s);
    if (rc < tol.cond_tol) throw SingularS(x, rc);
    return detail::potential_from(lp.lambda1, lp.lambda2, s);
}

ComplexMatrix transfer_matrix(const Dressing& d, const SMatrixEngine& engine, double x,
                              Complex lambda, const Tolerances& tol) {
    const Index n = d.triple.n();
    const Index h = d.triple.h();
    const LambdaPair lp = lambda_pair(d, x);
    ComplexMatrix pi(n, 2 * h);
    pi.leftCols(h) = lp.lambda1;
    pi.rightCols(h) = lp.lambda2;
    const ComplexMatrix s = engine.at(x);
    const double rc = matfun::rcond(s);
    if (rc < tol.cond_tol) throw SingularS(x, rc);
    const ComplexMatrix res = matfun::resolvent(d.triple.a, lambda, tol.eigen_tol);
    const ComplexMatrix t = s.partialPivLu().solve(res * pi);
    return ComplexMatrix::Identity(2 * h, 2 * h) - symplectic_j(h) * (pi.adjoint() * t);
}

SolutionRequest::SolutionRequest(Complex lambda_in, ComplexVector f0_in)
    : lambda(lambda_in), f0(std::move(f0_in)) {
    if (f0.size() == 0 || f0.size() % 2 != 0)
        throw ShapeMismatch("SolutionRequest: f0 must have even positive length");
    if (!f0.allFinite()) throw Error("SolutionRequest: non-finite entry in f0");
    sqrt_lambda = std::sqrt(lambda);
    degenerate = (lambda == Complex(0.0, 0.0));
}

ComplexVector free_solution(const SolutionRequest& req, double x) {
    const Index h = req.f0.size() / 2;
    const Complex s = req.sqrt_lambda;
    const Complex ep = std::exp(Complex(0.0, 1.0) * s * x);
    const Complex em = std::exp(Complex(0.0, -1.0) * s * x);
    ComplexVector y(2 * h);
    y.head(h) = ep * req.f0.head(h) + em * req.f0.tail(h);
    y.tail(h) = Complex(0.0, 1.0) * s * (ep * req.f0.head(h) - em * req.f0.tail(h));
    return y;
}

ComplexVector transformed_solution(const Dressing& d, const SMatrixEngine& engine,
                                   const SolutionRequest& req, double x,
                                   const Tolerances& tol) {
    if (req.f0.size() != 2 * d.triple.h())
        throw ShapeMismatch("transformed_solution: f0 length must be 2h");
    const ComplexMatrix w = transfer_matrix(d, engine, x, req.lambda, tol);
    const ComplexVector y0 = free_solution(req, x);
    return (w * y0).head(d.triple.h());
}

ComplexMatrix dynamic_solution(const Dressing& d, const SMatrixEngine& engine, double x,
                               double t, const Tolerances& tol) {
    const LambdaPair lp = lambda_pair(d, x);
    const ComplexMatrix s = engine.at(x);
    const double rc = matfun::rcond(s);
    if (rc < tol.cond_tol) throw SingularS(x, rc);
    // Lambda2^* S^{-1} via the adjoint system, valid for any invertible S.
    const ComplexMatrix b = s.adjoint().partialPivLu().solve(lp.lambda2).adjoint();
    return b * matfun::expm(Complex(0.0, -1.0) * t * d.triple.a);
}

}  // namespace gbdt
