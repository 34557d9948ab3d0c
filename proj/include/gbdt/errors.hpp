#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace gbdt {

/// Base class for every failure the library reports by exception.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Matrix dimensions do not match the operation's contract.
class ShapeMismatch : public Error { public: using Error::Error; };

/// Input matrix is numerically singular where an inverse is required.
class SingularMatrix : public Error { public: using Error::Error; };

/// The triangular square-root recurrence hit a zero-diagonal division.
class NoRootFound : public Error { public: using Error::Error; };

/// spec(P) and spec(-R) intersect: the Sylvester equation PZ + ZR = C
/// has no unique solution.
class SpectraOverlap : public Error { public: using Error::Error; };

/// The spectral parameter sits (numerically) on an eigenvalue of A.
class SpectralPoint : public Error { public: using Error::Error; };

/// A user-supplied root Q fails Q^2 = A beyond tolerance.
class InconsistentRoot : public Error { public: using Error::Error; };

/// The linear system pinning (f1, f2) to the initial data is inconsistent.
class NoDressing : public Error { public: using Error::Error; };

/// Adaptive quadrature could not reach the requested tolerance.
class QuadratureFailure : public Error { public: using Error::Error; };

/// The Gram matrix S failed the invertibility test at a sample point.
/// Carries the offending location so callers can report or skip it.
class SingularS : public Error {
public:
    SingularS(double x, double rcond_value)
        : Error(format(x, 0.0, false, rcond_value)),
          x_(x), t_(0.0), has_t_(false), rcond_(rcond_value) {}
    SingularS(double x, double t, double rcond_value)
        : Error(format(x, t, true, rcond_value)),
          x_(x), t_(t), has_t_(true), rcond_(rcond_value) {}

    double x() const { return x_; }
    bool has_t() const { return has_t_; }
    double t() const { return t_; }
    double rcond() const { return rcond_; }

private:
    static std::string format(double x, double t, bool has_t, double rc) {
        char buf[160];
        if (has_t) {
            std::snprintf(buf, sizeof(buf),
                          "S(x,t) numerically singular at x=%.9g, t=%.9g (rcond=%.3g)", x, t, rc);
        } else {
            std::snprintf(buf, sizeof(buf),
                          "S(x) numerically singular at x=%.9g (rcond=%.3g)", x, rc);
        }
        return std::string(buf);
    }

    double x_;
    double t_;
    bool has_t_;
    double rcond_;
};

/// The grid has too few points for the finite-difference stencil.
class GridTooCoarse : public Error { public: using Error::Error; };

/// The assembled Kronecker system is singular.
class SingularSystem : public Error { public: using Error::Error; };

/// gamma(x) vanished where the closed-form reference divides by it.
class SingularGamma : public Error { public: using Error::Error; };

}  // namespace gbdt
