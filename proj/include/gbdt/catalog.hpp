#pragma once

#include "gbdt/core.hpp"

namespace gbdt::catalog {

/// A = 0, theta1 = 0: Q = 0 and f1 = f2 = theta2 / 2, so S grows linearly
/// and the potential has the rational closed form below.
struct Ee2 {
    ComplexMatrix s0;      // n x n Hermitian
    ComplexMatrix theta2;  // n x h

    Triple triple() const;
    Dressing dressing() const;
};

/// u(x) = 2 (theta2^* (S0 + x theta2 theta2^*)^{-1} theta2)^2.
ComplexMatrix ee2_potential_reference(const ComplexMatrix& s0, const ComplexMatrix& theta2,
                                      double x);

/// Same value, resolved through S0^{-1}: with th = S0^{-1} theta2,
/// u(x) = 2 ((I + x theta2^* th)^{-1} theta2^* th)^2. Needs S0 invertible.
ComplexMatrix ee2_potential_reference_simplified(const ComplexMatrix& s0,
                                                 const ComplexMatrix& theta2, double x);

/// n = 2, h = 1 with the nilpotent root Q = [[0,1],[0,0]] of A = 0,
/// theta1 = (b, 0)^T, theta2 = (c, 0)^T, S(0) = diag(0, d). The dressing
/// fixes f1 = (c/2, ib/2)^T, f2 = (c/2, -ib/2)^T.
struct Ee3 {
    double b = 1.0;
    double c = 0.0;
    double d = 1.0;  // nonzero; keeps the second block of S invertible

    Triple triple() const;
    ComplexMatrix q() const;
    Dressing dressing() const;

    /// First diagonal entry of S(x): (b^2/3) x^3 - b c x^2 + c^2 x.
    double gamma(double x) const {
        return (b * b / 3.0) * x * x * x - b * c * x * x + c * c * x;
    }
};

/// u(x) = 2 (b x - c)(b gamma(x) - c^3) / gamma(x)^2; equals 6 / x^2 when
/// c = 0. Throws SingularGamma where gamma vanishes (always at x = 0);
/// d only gates invertibility and must be nonzero.
double ee3_potential_reference(double b, double c, double d, double x);

/// Ee3 at c = 0, where the transformed equation -y'' + (6/x^2) y = lambda y
/// has elementary fundamental solutions.
struct Ee36 {
    double b = 1.0;
    double d = 1.0;

    Ee3 base() const { return Ee3{b, 0.0, d}; }
};

enum class Fundamental {
    phi,      // e^{i x s} (1 + 3i/(s x) - 3/(s x)^2), s = sqrt(lambda)
    chi,      // e^{-i x s} (1 - 3i/(s x) - 3/(s x)^2)
    regular,  // phi - chi, evaluated cancellation-free near x = 0
};

/// Closed-form fundamental solutions for the 6/x^2 potential. The
/// difference phi - chi vanishes like x^3; for |x sqrt(lambda)| < 1/2 it
/// is summed from its power series because the direct subtraction loses
/// all significant digits there. x and lambda must be nonzero.
Complex ee36_fundamental(Complex lambda, double x, Fundamental which);

}  // namespace gbdt::catalog
