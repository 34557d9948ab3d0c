#include "gbdt/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace gbdt::catalog {

Triple Ee2::triple() const {
    const Index n = s0.rows();
    return Triple(ComplexMatrix::Zero(n, n), s0, ComplexMatrix::Zero(n, theta2.cols()), theta2);
}

Dressing Ee2::dressing() const {
    Triple t = triple();
    const Index n = t.n();
    ComplexMatrix f = 0.5 * theta2;
    return Dressing{std::move(t), ComplexMatrix::Zero(n, n), f, f};
}

ComplexMatrix ee2_potential_reference(const ComplexMatrix& s0, const ComplexMatrix& theta2,
                                      double x) {
    const ComplexMatrix s = s0 + x * (theta2 * theta2.adjoint());
    if (matfun::rcond(s) < matfun::kRankTol)
        throw SingularMatrix("ee2_potential_reference: S(x) is singular");
    const ComplexMatrix core = theta2.adjoint() * s.partialPivLu().solve(theta2);
    return 2.0 * core * core;
}

ComplexMatrix ee2_potential_reference_simplified(const ComplexMatrix& s0,
                                                 const ComplexMatrix& theta2, double x) {
    if (matfun::rcond(s0) < matfun::kRankTol)
        throw SingularMatrix("ee2_potential_reference_simplified: S0 must be invertible");
    const Index h = theta2.cols();
    const ComplexMatrix g = theta2.adjoint() * s0.partialPivLu().solve(theta2);  // h x h
    const ComplexMatrix shifted = ComplexMatrix::Identity(h, h) + x * g;
    if (matfun::rcond(shifted) < matfun::kRankTol)
        throw SingularMatrix("ee2_potential_reference_simplified: I + x theta2^* th is singular");
    const ComplexMatrix m = shifted.partialPivLu().solve(g);
    return 2.0 * m * m;
}

Triple Ee3::triple() const {
    if (d == 0.0) throw std::invalid_argument("Ee3: d must be nonzero");
    ComplexMatrix s0 = ComplexMatrix::Zero(2, 2);
    s0(1, 1) = d;
    ComplexMatrix th1(2, 1), th2(2, 1);
    th1 << Complex(b, 0.0), Complex(0.0, 0.0);
    th2 << Complex(c, 0.0), Complex(0.0, 0.0);
    return Triple(ComplexMatrix::Zero(2, 2), std::move(s0), std::move(th1), std::move(th2));
}

ComplexMatrix Ee3::q() const {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = Complex(1.0, 0.0);
    return m;
}

Dressing Ee3::dressing() const {
    ComplexMatrix f1(2, 1), f2(2, 1);
    f1 << Complex(0.5 * c, 0.0), Complex(0.0, 0.5 * b);
    f2 << Complex(0.5 * c, 0.0), Complex(0.0, -0.5 * b);
    return Dressing{triple(), q(), std::move(f1), std::move(f2)};
}

double ee3_potential_reference(double b, double c, double d, double x) {
    if (d == 0.0) throw std::invalid_argument("ee3_potential_reference: d must be nonzero");
    const double gamma = (b * b / 3.0) * x * x * x - b * c * x * x + c * c * x;
    const double scale = std::abs(b * b / 3.0 * x * x * x) + std::abs(b * c * x * x) +
                         std::abs(c * c * x);
    if (std::abs(gamma) <= 1e-14 * scale || gamma == 0.0)
        throw SingularGamma("ee3_potential_reference: gamma(x) vanishes");
    const double num = (b * x - c) * (b * gamma - c * c * c);
    return 2.0 * num / (gamma * gamma);
}

Complex ee36_fundamental(Complex lambda, double x, Fundamental which) {
    if (x == 0.0) throw std::invalid_argument("ee36_fundamental: x must be nonzero");
    if (lambda == Complex(0.0, 0.0))
        throw std::invalid_argument("ee36_fundamental: lambda must be nonzero");
    const Complex s = std::sqrt(lambda);
    const Complex w = s * x;
    const Complex i(0.0, 1.0);
    switch (which) {
    case Fundamental::phi:
        return std::exp(i * w) * (1.0 + 3.0 * i / w - 3.0 / (w * w));
    case Fundamental::chi:
        return std::exp(-i * w) * (1.0 - 3.0 * i / w - 3.0 / (w * w));
    case Fundamental::regular:
        break;
    }
    if (std::abs(w) >= 0.5)
        return ee36_fundamental(lambda, x, Fundamental::phi) -
               ee36_fundamental(lambda, x, Fundamental::chi);
    // phi - chi = (2i/w^2) ((w^2 - 3) sin w + 3 w cos w); the bracket
    // cancels to O(w^5), so sum its series: the w^{2k+1} coefficient is
    // (-1)^k 4k(1-k) / (2k+1)!, nonzero from k = 2 on.
    Complex acc(0.0, 0.0);
    const Complex w2 = w * w;
    Complex wpow = w2 * w;  // w^{2k-1} for k = 2
    double factorial = 120.0;  // (2k+1)! at k = 2
    double sign = 1.0;
    for (int k = 2; k <= 20; ++k) {
        acc += sign * (4.0 * k * (1.0 - k) / factorial) * wpow;
        wpow *= w2;
        factorial *= (2.0 * k + 2.0) * (2.0 * k + 3.0);
        sign = -sign;
    }
    return 2.0 * i * acc;
}

}  // namespace gbdt::catalog
