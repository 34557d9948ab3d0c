#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "gbdt/catalog.hpp"
#include "gbdt/core.hpp"
#include "gbdt/grid.hpp"
#include "testutil.hpp"

using namespace gbdt;
using testutil::random_matrix;
using testutil::random_valid_triple;

namespace {

const Complex kI(0.0, 1.0);

ComplexMatrix scalar(Complex v) {
    ComplexMatrix m(1, 1);
    m(0, 0) = v;
    return m;
}

/// n = h = 1, A = S0 = theta2 = 1, theta1 = 0: Q = 1, f1 = f2 = 1/2,
/// Lambda1 = sin x, Lambda2 = cos x, S = 1 + x/2 + sin(2x)/4.
Dressing scalar_dressing() {
    const Triple t(scalar(1.0), scalar(1.0), scalar(0.0), scalar(1.0));
    return make_dressing(t);
}

}  // namespace

TEST_CASE("Triple checks shapes and finiteness") {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix col = ComplexMatrix::Ones(2, 1);
    CHECK_NOTHROW(Triple(i2, i2, col, col));
    CHECK_THROWS_AS(Triple(ComplexMatrix::Zero(2, 3), i2, col, col), ShapeMismatch);
    CHECK_THROWS_AS(Triple(i2, ComplexMatrix::Identity(3, 3), col, col), ShapeMismatch);
    CHECK_THROWS_AS(Triple(i2, i2, ComplexMatrix::Ones(3, 1), col), ShapeMismatch);
    CHECK_THROWS_AS(Triple(i2, i2, col, ComplexMatrix::Ones(2, 2)), ShapeMismatch);
    ComplexMatrix bad = col;
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(Triple(i2, i2, bad, col), Error);

    const Triple t(i2, 2.0 * i2, col, 3.0 * col);
    CHECK(t.n() == 2);
    CHECK(t.h() == 1);
    const ComplexMatrix pi = t.pi0();
    CHECK(pi.rows() == 2);
    CHECK(pi.cols() == 2);
    CHECK(pi.col(0) == t.theta1.col(0));
    CHECK(pi.col(1) == t.theta2.col(0));
}

TEST_CASE("validate_triple accepts constructed triples and flags broken ones") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const Triple t = random_valid_triple(rng, 3, 2);
        const TripleResidual r = validate_triple(t);
        CHECK(r.identity <= 1e-12 * r.scale);
        CHECK(r.hermiticity <= 1e-12 * r.scale);
        CHECK(r.passes(1e-9));

        Triple broken = t;
        broken.s0(0, 1) += Complex(0.1, 0.0);
        CHECK_FALSE(validate_triple(broken).passes(1e-9));
    }
}

TEST_CASE("make_dressing reproduces the defining split") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const Triple t = random_valid_triple(rng, 3, 2);
        const Dressing d = make_dressing(t);
        CHECK((d.q * d.q - t.a).norm() <= 1e-9 * t.a.norm());
        CHECK((d.f1 + d.f2 - t.theta2).norm() <= 1e-12 * (1.0 + t.theta2.norm()));
        const ComplexMatrix recovered = -kI * (d.q * (d.f1 - d.f2));
        CHECK((recovered - t.theta1).norm() <= 1e-9 * (1.0 + t.theta1.norm()));
    }
}

TEST_CASE("make_dressing without a root needs invertible A") {
    const Triple t(scalar(0.0), scalar(1.0), scalar(0.0), scalar(1.0));
    CHECK_THROWS_AS(make_dressing(t), SingularMatrix);
}

TEST_CASE("make_dressing validates a supplied root") {
    const Triple t(scalar(4.0), scalar(1.0), scalar(0.0), scalar(1.0));
    CHECK_NOTHROW(make_dressing(t, scalar(2.0)));
    CHECK_NOTHROW(make_dressing(t, scalar(-2.0)));  // non-principal roots are fine
    CHECK_THROWS_AS(make_dressing(t, scalar(3.0)), InconsistentRoot);
    CHECK_THROWS_AS(make_dressing(t, ComplexMatrix::Identity(2, 2)), ShapeMismatch);
}

TEST_CASE("singular roots dress exactly when theta1 lies in the range of Q") {
    // Nilpotent Q = [[0,1],[0,0]] with A = 0. theta1 = (b,0) is reachable
    // and the minimum-norm split lands on f = (c/2, +-ib/2).
    const catalog::Ee3 ex{2.0, 3.0, 1.0};
    const Dressing d = make_dressing(ex.triple(), ex.q());
    CHECK(std::abs(d.f1(0, 0) - Complex(1.5, 0.0)) <= 1e-14);
    CHECK(std::abs(d.f1(1, 0) - Complex(0.0, 1.0)) <= 1e-14);
    CHECK(std::abs(d.f2(0, 0) - Complex(1.5, 0.0)) <= 1e-14);
    CHECK(std::abs(d.f2(1, 0) - Complex(0.0, -1.0)) <= 1e-14);

    // theta1 = (0,1) has no preimage under the same Q.
    ComplexMatrix th1 = ComplexMatrix::Zero(2, 1);
    th1(1, 0) = 1.0;
    const Triple bad(ComplexMatrix::Zero(2, 2), ComplexMatrix::Identity(2, 2), th1, th1);
    CHECK(validate_triple(bad).passes(1e-12));
    CHECK_THROWS_AS(make_dressing(bad, catalog::Ee3{}.q()), NoDressing);
}

TEST_CASE("scalar dressing has elementary Lambda and S") {
    const Dressing d = scalar_dressing();
    const SMatrixEngine engine = build_s_engine(d);
    // spec(Q) = {1} touches its own conjugate, so the Sylvester route is closed.
    CHECK(engine.mode() == SMatrixEngine::Mode::quadrature);
    CHECK_THROWS_AS(build_s_engine(d, SMatrixEngine::Mode::closed_form), SpectraOverlap);

    for (double x : {-2.0, -0.3, 0.0, 0.7, 1.0, 4.0}) {
        const LambdaPair lp = lambda_pair(d, x);
        CHECK(std::abs(lp.lambda1(0, 0) - std::sin(x)) <= 1e-13);
        CHECK(std::abs(lp.lambda2(0, 0) - std::cos(x)) <= 1e-13);
        const Complex s = engine.at(x)(0, 0);
        CHECK(std::abs(s - (1.0 + x / 2.0 + std::sin(2.0 * x) / 4.0)) <= 1e-10);
    }
}

TEST_CASE("the two Lambda routes agree") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 8; ++trial) {
        const Dressing d = make_dressing(random_valid_triple(rng, 3, 2));
        for (double x : {-1.5, -0.2, 0.0, 0.4, 2.0}) {
            const LambdaPair a = lambda_pair(d, x);
            const LambdaPair b = lambda_pair_blockexp(d, x);
            const double scale = 1.0 + a.lambda1.norm() + a.lambda2.norm();
            CHECK((a.lambda1 - b.lambda1).norm() <= 1e-11 * scale);
            CHECK((a.lambda2 - b.lambda2).norm() <= 1e-11 * scale);
        }
    }
}

TEST_CASE("Lambda solves its defining system") {
    std::mt19937_64 rng(14);
    const Dressing d = make_dressing(random_valid_triple(rng, 3, 1));
    const double e = 1e-5;
    for (double x : {-0.8, 0.3, 1.2}) {
        const LambdaPair mid = lambda_pair(d, x);
        const LambdaPair hi = lambda_pair(d, x + e);
        const LambdaPair lo = lambda_pair(d, x - e);
        const ComplexMatrix d1 = (hi.lambda1 - lo.lambda1) / (2.0 * e);
        const ComplexMatrix d2 = (hi.lambda2 - lo.lambda2) / (2.0 * e);
        const double scale = 1.0 + mid.lambda1.norm() + mid.lambda2.norm();
        CHECK((d1 - d.triple.a * mid.lambda2).norm() <= 1e-8 * scale);
        CHECK((d2 + mid.lambda1).norm() <= 1e-8 * scale);
    }
}

TEST_CASE("closed-form and quadrature S agree") {
    std::mt19937_64 rng(15);
    int closed_seen = 0;
    for (int trial = 0; trial < 6; ++trial) {
        const Dressing d = make_dressing(random_valid_triple(rng, 3, 2));
        const SMatrixEngine auto_engine = build_s_engine(d);
        if (auto_engine.mode() != SMatrixEngine::Mode::closed_form) continue;
        ++closed_seen;
        const SMatrixEngine quad = build_s_engine(d, SMatrixEngine::Mode::quadrature);
        for (double x : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
            const ComplexMatrix a = auto_engine.at(x);
            const ComplexMatrix b = quad.at(x);
            CHECK((a - b).norm() <= 1e-8 * std::max(1.0, a.norm()));
            CHECK(hermiticity_defect(a) <= 1e-10 * std::max(1.0, a.norm()));
        }
        CHECK((auto_engine.at(0.0) - d.triple.s0).norm() <= 1e-12 * (1.0 + d.triple.s0.norm()));
    }
    // The corpus keeps spec(Q) off the axes, so every draw should take the
    // closed form; anything less means the margin test is miscalibrated.
    CHECK(closed_seen == 6);
}

TEST_CASE("S' equals Lambda2 Lambda2^*") {
    std::mt19937_64 rng(16);
    const Dressing d = make_dressing(random_valid_triple(rng, 2, 2));
    const SMatrixEngine engine = build_s_engine(d);
    const double e = 1e-4;
    for (double x : {-1.0, 0.5, 2.0}) {
        const ComplexMatrix fd = (engine.at(x + e) - engine.at(x - e)) / (2.0 * e);
        const LambdaPair lp = lambda_pair(d, x);
        const ComplexMatrix rate = lp.lambda2 * lp.lambda2.adjoint();
        CHECK((fd - rate).norm() <= 1e-6 * std::max(1.0, rate.norm()));
    }
}

TEST_CASE("admissibility persists along x") {
    std::mt19937_64 rng(17);
    const Dressing d = make_dressing(random_valid_triple(rng, 3, 2));
    const SMatrixEngine engine = build_s_engine(d);
    for (double x : {-3.0, -1.0, 0.0, 2.0, 5.0}) {
        const LambdaPair lp = lambda_pair(d, x);
        const ComplexMatrix s = engine.at(x);
        const ComplexMatrix lhs = d.triple.a * s - s * d.triple.a.adjoint();
        const ComplexMatrix rhs =
            lp.lambda1 * lp.lambda2.adjoint() - lp.lambda2 * lp.lambda1.adjoint();
        const double scale = std::max(1.0, d.triple.a.norm() * s.norm() +
                                               lp.lambda1.squaredNorm() +
                                               lp.lambda2.squaredNorm());
        CHECK((lhs - rhs).norm() <= 1e-10 * scale);
    }
}

TEST_CASE("potential matches the rational reference") {
    const catalog::Ee3 ex{1.5, 0.5, 2.0};
    const Dressing d = ex.dressing();
    const SMatrixEngine engine = build_s_engine(d);
    CHECK(engine.mode() == SMatrixEngine::Mode::quadrature);
    for (double x : {0.4, 1.0, 2.5, -1.0}) {
        const ComplexMatrix u = potential(d, engine, x);
        CHECK(u.rows() == 1);
        CHECK(u.cols() == 1);
        const double ref = catalog::ee3_potential_reference(ex.b, ex.c, ex.d, x);
        CHECK(std::abs(u(0, 0) - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("potential reports the singular point") {
    const catalog::Ee3 ex{1.0, 0.0, 1.0};
    const Dressing d = ex.dressing();
    const SMatrixEngine engine = build_s_engine(d);
    try {
        potential(d, engine, 0.0);
        FAIL("expected SingularS at x = 0");
    } catch (const SingularS& e) {
        CHECK(e.x() == 0.0);
        CHECK_FALSE(e.has_t());
        CHECK(e.rcond() <= 1e-12);
    }
}

TEST_CASE("transfer matrix row for the 6/x^2 potential") {
    const catalog::Ee36 ex;
    const Dressing d = ex.base().dressing();
    const SMatrixEngine engine = build_s_engine(d);
    const ComplexMatrix w = transfer_matrix(d, engine, 2.0, Complex(1.0, 0.0));
    CHECK(w.rows() == 2);
    CHECK(w.cols() == 2);
    // First row is (1 - 3/(lambda x^2), 3/(lambda x)).
    CHECK(std::abs(w(0, 0) - Complex(0.25, 0.0)) <= 1e-10);
    CHECK(std::abs(w(0, 1) - Complex(1.5, 0.0)) <= 1e-10);

    for (double x : {0.7, 1.3, 3.0}) {
        for (Complex lambda : {Complex(2.0, 0.0), Complex(0.5, 1.0), Complex(-1.0, 0.3)}) {
            const ComplexMatrix wx = transfer_matrix(d, engine, x, lambda);
            CHECK(std::abs(wx(0, 0) - (1.0 - 3.0 / (lambda * x * x))) <= 1e-9);
            CHECK(std::abs(wx(0, 1) - 3.0 / (lambda * x)) <= 1e-9);
        }
    }
}

TEST_CASE("transfer matrix rejects spectral points of A") {
    std::mt19937_64 rng(18);
    const Triple t = random_valid_triple(rng, 3, 2);
    const Dressing d = make_dressing(t);
    const SMatrixEngine engine = build_s_engine(d);
    const Complex onspec = matfun::eigenvalues(t.a)(0);
    CHECK_THROWS_AS(transfer_matrix(d, engine, 0.5, onspec), SpectralPoint);
}

TEST_CASE("free solution fixes one square root per request") {
    SolutionRequest req(Complex(4.0, 0.0), ComplexVector::Unit(2, 0));
    CHECK(req.sqrt_lambda == Complex(2.0, 0.0));
    CHECK_FALSE(req.degenerate);
    const ComplexVector y = free_solution(req, 3.141592653589793 / 2.0);
    CHECK(std::abs(y(0) - Complex(-1.0, 0.0)) <= 1e-13);
    CHECK(std::abs(y(1) - Complex(0.0, -2.0)) <= 1e-13);

    // -y'' = lambda y by central differences.
    const double e = 1e-4;
    for (double x : {0.3, 1.1}) {
        const ComplexVector mid = free_solution(req, x);
        const ComplexVector hi = free_solution(req, x + e);
        const ComplexVector lo = free_solution(req, x - e);
        const Complex ypp = (hi(0) - 2.0 * mid(0) + lo(0)) / (e * e);
        CHECK(std::abs(-ypp - req.lambda * mid(0)) <= 1e-6);
    }
}

TEST_CASE("degenerate spectral parameter collapses the exponentials") {
    ComplexVector f0(2);
    f0 << Complex(0.5, 0.0), Complex(0.25, 0.0);
    SolutionRequest req(Complex(0.0, 0.0), f0);
    CHECK(req.degenerate);
    const ComplexVector y = free_solution(req, 1.7);
    CHECK(std::abs(y(0) - Complex(0.75, 0.0)) <= 1e-15);
    CHECK(std::abs(y(1)) <= 1e-15);
}

TEST_CASE("solution requests reject bad coefficient vectors") {
    CHECK_THROWS_AS(SolutionRequest(Complex(1.0, 0.0), ComplexVector::Ones(3)), ShapeMismatch);
    CHECK_THROWS_AS(SolutionRequest(Complex(1.0, 0.0), ComplexVector()), ShapeMismatch);
    ComplexVector bad = ComplexVector::Ones(2);
    bad(1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(SolutionRequest(Complex(1.0, 0.0), bad), Error);

    const catalog::Ee36 ex;
    const Dressing d = ex.base().dressing();
    const SMatrixEngine engine = build_s_engine(d);
    SolutionRequest req(Complex(1.0, 0.0), ComplexVector::Ones(4));
    CHECK_THROWS_AS(transformed_solution(d, engine, req, 1.0), ShapeMismatch);
}

TEST_CASE("transformed solution reproduces both elementary branches") {
    const catalog::Ee36 ex;
    const Dressing d = ex.base().dressing();
    const SMatrixEngine engine = build_s_engine(d);
    for (Complex lambda : {Complex(1.0, 0.0), Complex(2.0, 0.5), Complex(-0.7, 0.2)}) {
        SolutionRequest phi_req(lambda, ComplexVector::Unit(2, 0));
        SolutionRequest chi_req(lambda, ComplexVector::Unit(2, 1));
        for (double x : {0.6, 1.4, 2.8}) {
            const Complex phi = transformed_solution(d, engine, phi_req, x)(0);
            const Complex chi = transformed_solution(d, engine, chi_req, x)(0);
            const Complex phi_ref = catalog::ee36_fundamental(lambda, x, catalog::Fundamental::phi);
            const Complex chi_ref = catalog::ee36_fundamental(lambda, x, catalog::Fundamental::chi);
            CHECK(std::abs(phi - phi_ref) <= 1e-9 * (1.0 + std::abs(phi_ref)));
            CHECK(std::abs(chi - chi_ref) <= 1e-9 * (1.0 + std::abs(chi_ref)));
        }
    }
}

TEST_CASE("dynamic solution starts from Lambda2^* S^{-1}") {
    std::mt19937_64 rng(19);
    const Dressing d = make_dressing(random_valid_triple(rng, 3, 2));
    const SMatrixEngine engine = build_s_engine(d);
    const double x = 0.8;
    const ComplexMatrix psi0 = dynamic_solution(d, engine, x, 0.0);
    CHECK(psi0.rows() == d.triple.h());
    CHECK(psi0.cols() == d.triple.n());
    const LambdaPair lp = lambda_pair(d, x);
    const ComplexMatrix ref = lp.lambda2.adjoint() * engine.at(x).inverse();
    CHECK((psi0 - ref).norm() <= 1e-10 * std::max(1.0, ref.norm()));

    // Propagation in t multiplies by e^{-i t A} on the right.
    const double t = 0.6;
    const ComplexMatrix psi = dynamic_solution(d, engine, x, t);
    const ComplexMatrix prop = matfun::expm(Complex(0.0, -t) * d.triple.a);
    CHECK((psi - ref * prop).norm() <= 1e-10 * std::max(1.0, psi.norm()));
}

TEST_CASE("grid specs count points inclusively") {
    const GridSpec g{0.1, 5.0, 0.1};
    CHECK(g.count() == 50);
    CHECK(g.point(0) == 0.1);
    CHECK(std::abs(g.point(49) - 5.0) <= 1e-12);

    const GridSpec sym{-1.0, 1.0, 0.1};
    CHECK(sym.count() == 21);
    CHECK(sym.point(10) == 0.0);  // exact in IEEE arithmetic

    const GridSpec point{0.0, 0.0, 1.0};
    CHECK(point.count() == 1);
}

TEST_CASE("grid specs parse and validate") {
    const GridSpec g = GridSpec::parse("0.1:5:0.1");
    CHECK(g.start == 0.1);
    CHECK(g.stop == 5.0);
    CHECK(g.step == 0.1);
    CHECK(GridSpec::parse("-2:2:0.5").count() == 9);

    CHECK_THROWS_AS(GridSpec::parse("1:2"), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::parse("a:b:c"), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::parse("1:2:0.1:9"), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{0.0, 1.0, -0.1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{1.0, 0.0, 0.1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((GridSpec{0.0, 1.0, 0.0}).validate(), std::invalid_argument);
}
