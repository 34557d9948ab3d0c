#pragma once

#include <optional>

#include "gbdt/matfun.hpp"
#include "gbdt/quadrature.hpp"
#include "gbdt/types.hpp"

namespace gbdt {

struct Tolerances {
    double rank_tol = matfun::kRankTol;    // relative singularity threshold
    double eigen_tol = matfun::kEigenTol;  // relative spectra-touching threshold
    double identity_tol = 1e-9;            // admissibility residual, relative to scale
    double root_tol = 1e-9;                // |Q*Q - A| <= root_tol * max(1, |A|)
    double cond_tol = 1e-12;               // rcond(S) below this counts as singular
    double closed_form_margin = 1e-8;      // spectra separation demanded of the Sylvester route
    QuadratureOptions quad{};
};

/// Input data {A, S(0), theta1, theta2} with theta_k the two column blocks
/// of the n x 2h parameter matrix. Shapes are checked on construction; the
/// admissibility identity is checked by validate_triple.
struct Triple {
    ComplexMatrix a;       // n x n
    ComplexMatrix s0;      // n x n, Hermitian up to tolerance
    ComplexMatrix theta1;  // n x h
    ComplexMatrix theta2;  // n x h

    Triple() = default;
    Triple(ComplexMatrix a_in, ComplexMatrix s0_in, ComplexMatrix theta1_in,
           ComplexMatrix theta2_in);

    Index n() const { return a.rows(); }
    Index h() const { return theta1.cols(); }

    /// [theta1 theta2], n x 2h.
    ComplexMatrix pi0() const;
};

struct TripleResidual {
    double identity = 0.0;     // |A S0 - S0 A^* - (th1 th2^* - th2 th1^*)|
    double hermiticity = 0.0;  // |S0 - S0^*|
    double scale = 1.0;        // max(1, |A||S0| + |Pi0|^2)

    bool passes(double tol) const {
        return identity <= tol * scale && hermiticity <= tol * scale;
    }
};

/// Residuals of the admissibility identity A S0 - S0 A^* = th1 th2^* - th2 th1^*.
TripleResidual validate_triple(const Triple& t);

/// A triple together with a square root Q of A and the split
/// f1 + f2 = theta2, -i Q (f1 - f2) = theta1 that anchors the x-dependence.
struct Dressing {
    Triple triple;
    ComplexMatrix q;   // n x n, Q*Q = A
    ComplexMatrix f1;  // n x h
    ComplexMatrix f2;  // n x h
};

/// Builds the dressing. Without an explicit root, Q = sqrtm(A) (so A must
/// be invertible). With one, Q is validated against A and may be singular;
/// f1 - f2 is then the minimum-norm solution of Q g = i theta1, which
/// throws NoDressing when theta1 leaves the range of Q. For invertible Q
/// this reduces to the unique split f1,2 = (theta2 +- i Q^{-1} theta1) / 2.
Dressing make_dressing(const Triple& t, std::optional<ComplexMatrix> q = std::nullopt,
                       const Tolerances& tol = {});

/// Lambda1' = A Lambda2, Lambda2' = -Lambda1, starting at (theta1, theta2).
struct LambdaPair {
    ComplexMatrix lambda1;  // n x h
    ComplexMatrix lambda2;  // n x h
};

/// Closed form via the two exponentials of +- i x Q.
LambdaPair lambda_pair(const Dressing& d, double x);

/// Independent route: one exponential of the 2n x 2n block matrix
/// [[0, A], [-I, 0]] applied to stacked initial data. Used for cross-checks.
LambdaPair lambda_pair_blockexp(const Dressing& d, double x);

/// Evaluator for S(x) = S(0) + int_0^x Lambda2 Lambda2^*. When the spectrum
/// of Q clears the real and imaginary axes (and its own mirror) by a margin,
/// the integral collapses to conjugated constants Z1, Z2, Z3 solving one
/// Sylvester equation each; otherwise the integral is done adaptively.
class SMatrixEngine {
public:
    enum class Mode { closed_form, quadrature };

    Mode mode() const { return mode_; }
    const Dressing& dressing() const { return dressing_; }

    ComplexMatrix at(double x) const;

    // Closed-form internals, exposed for cross-checks.
    const ComplexMatrix& z1() const { return z1_; }
    const ComplexMatrix& z2() const { return z2_; }
    const ComplexMatrix& z3() const { return z3_; }
    const ComplexMatrix& offset() const { return offset_; }

private:
    friend SMatrixEngine build_s_engine(const Dressing&, const Tolerances&);
    friend SMatrixEngine build_s_engine(const Dressing&, Mode, const Tolerances&);
    SMatrixEngine() = default;

    Dressing dressing_;
    Mode mode_ = Mode::quadrature;
    ComplexMatrix z1_, z2_, z3_, offset_;
    QuadratureOptions quad_{};
};

/// Chooses the route automatically based on the spectrum of Q.
SMatrixEngine build_s_engine(const Dressing& d, const Tolerances& tol = {});

/// Forces a route. The closed form throws SpectraOverlap when unavailable.
SMatrixEngine build_s_engine(const Dressing& d, SMatrixEngine::Mode mode,
                             const Tolerances& tol = {});

inline ComplexMatrix s_matrix(const SMatrixEngine& e, double x) { return e.at(x); }

namespace detail {
/// u = 2 (L1^* S^{-1} L2 + L2^* S^{-1} L1 + (L2^* S^{-1} L2)^2).
/// The caller has already checked S for invertibility.
ComplexMatrix potential_from(const ComplexMatrix& lambda1, const ComplexMatrix& lambda2,
                             const ComplexMatrix& s);
}  // namespace detail

/// The transformed h x h potential at x. Throws SingularS (carrying x)
/// when rcond(S(x)) < tol.cond_tol.
ComplexMatrix potential(const Dressing& d, const SMatrixEngine& engine, double x,
                        const Tolerances& tol = {});

/// The 2h x 2h transfer matrix I - j Pi^* S^{-1} (A - lambda I)^{-1} Pi
/// with Pi = [Lambda1 Lambda2]. Throws SpectralPoint when lambda meets
/// spec(A) and SingularS when S(x) is singular.
ComplexMatrix transfer_matrix(const Dressing& d, const SMatrixEngine& engine, double x,
                              Complex lambda, const Tolerances& tol = {});

/// A spectral parameter with its square root fixed once (principal branch)
/// and the free-solution coefficients f0 (length 2h). lambda = 0 collapses
/// the two exponentials to constants; the flag lets callers warn.
struct SolutionRequest {
    Complex lambda;
    ComplexVector f0;
    Complex sqrt_lambda;
    bool degenerate;

    SolutionRequest(Complex lambda_in, ComplexVector f0_in);
};

/// Value and derivative blocks of the free solution: the first h entries
/// are e^{i x s} a + e^{-i x s} b, the last h their x-derivative, where
/// (a, b) are the two halves of f0 and s the fixed root of lambda.
ComplexVector free_solution(const SolutionRequest& req, double x);

/// First h rows of transfer_matrix * free_solution: a solution of
/// -y'' + u y = lambda y for the transformed potential.
ComplexVector transformed_solution(const Dressing& d, const SMatrixEngine& engine,
                                   const SolutionRequest& req, double x,
                                   const Tolerances& tol = {});

/// The h x n solution Lambda2^* S^{-1} e^{-i t A} of the time-dependent
/// equation i psi_t + psi_xx = u psi.
ComplexMatrix dynamic_solution(const Dressing& d, const SMatrixEngine& engine, double x,
                               double t, const Tolerances& tol = {});

}  // namespace gbdt
