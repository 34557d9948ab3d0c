#pragma once

#include <utility>

#include "gbdt/types.hpp"

namespace gbdt::matfun {

/// Relative threshold below which a singular value counts as zero.
inline constexpr double kRankTol = 1e-12;

/// Relative threshold for spectra touching (Sylvester / resolvent guards).
inline constexpr double kEigenTol = 1e-12;

/// Eigenvalues via a complex Schur reduction (diagonal of T).
ComplexVector eigenvalues(const ComplexMatrix& a);

/// sigma_min / sigma_max; zero for an all-zero or empty matrix.
double rcond(const ComplexMatrix& m);

/// {sigma_min, sigma_max}; {0, 0} for an empty matrix. Unlike rcond, the
/// raw extremes let callers normalize conditioning across a whole family
/// of matrices (per-point rcond of a 1 x 1 matrix is always 1).
std::pair<double, double> sigma_extremes(const ComplexMatrix& m);

/// Principal square root of an invertible matrix: the Schur factor is
/// upper triangular, so the root follows from the diagonal (principal
/// branch per eigenvalue) and a column-wise recurrence above it.
/// Throws SingularMatrix when sigma_min < rank_tol * sigma_max, and
/// NoRootFound if the recurrence divides by a vanishing diagonal sum.
ComplexMatrix sqrtm(const ComplexMatrix& a, double rank_tol = kRankTol);

/// Matrix exponential. Nilpotent inputs (some power up to the dimension
/// is exactly zero) are summed by the truncated series, which is exact;
/// everything else goes through Pade scaling-and-squaring of order 13.
ComplexMatrix expm(const ComplexMatrix& m);

/// Unique solution of P Z + Z R = C via Schur reduction of both
/// coefficients and column-wise back-substitution. Throws SpectraOverlap
/// when min |p_i + r_j| <= eigen_tol * (norm(P) + norm(R)).
ComplexMatrix solve_sylvester(const ComplexMatrix& p, const ComplexMatrix& r,
                              const ComplexMatrix& c, double eigen_tol = kEigenTol);

/// (A - lambda I)^{-1}. Throws SpectralPoint when lambda is within
/// eigen_tol * max(norm(A), |lambda|) of an eigenvalue of A.
ComplexMatrix resolvent(const ComplexMatrix& a, Complex lambda, double eigen_tol = kEigenTol);

}  // namespace gbdt::matfun
