#pragma once

#include <Eigen/Dense>
#include <complex>

#include "gbdt/errors.hpp"

namespace gbdt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline bool all_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

/// Every matrix crossing a module boundary must be finite entry-wise.
inline void require_finite(const ComplexMatrix& m, const char* who) {
    if (!m.allFinite()) throw Error(std::string(who) + ": non-finite matrix entry");
}

inline void require_square(const ComplexMatrix& m, const char* who) {
    if (m.rows() != m.cols()) throw ShapeMismatch(std::string(who) + ": matrix must be square");
}

/// Frobenius distance from M to its own adjoint.
inline double hermiticity_defect(const ComplexMatrix& m) {
    return (m - m.adjoint()).norm();
}

inline bool is_hermitian(const ComplexMatrix& m, double tol) {
    double scale = m.norm();
    return hermiticity_defect(m) <= tol * (scale > 0.0 ? scale : 1.0);
}

/// The 2h x 2h block matrix [[0, I], [-I, 0]].
inline ComplexMatrix symplectic_j(Index h) {
    ComplexMatrix j = ComplexMatrix::Zero(2 * h, 2 * h);
    j.topRightCorner(h, h) = ComplexMatrix::Identity(h, h);
    j.bottomLeftCorner(h, h) = -ComplexMatrix::Identity(h, h);
    return j;
}

}  // namespace gbdt
