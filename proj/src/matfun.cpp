#include "gbdt/matfun.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <vector>

namespace gbdt::matfun {

namespace {

bool exactly_zero(const ComplexMatrix& m) {
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (m(i, j) != Complex(0.0, 0.0)) return false;
    return true;
}

// Largest column sum of absolute values (induced 1-norm).
double norm1(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

ComplexVector eigenvalues(const ComplexMatrix& a) {
    require_square(a, "eigenvalues");
    require_finite(a, "eigenvalues");
    if (a.rows() == 0) return ComplexVector(0);
    Eigen::ComplexSchur<ComplexMatrix> schur(a, /*computeU=*/false);
    return schur.matrixT().diagonal();
}

double rcond(const ComplexMatrix& m) {
    const auto [smin, smax] = sigma_extremes(m);
    return smax > 0.0 ? smin / smax : 0.0;
}

std::pair<double, double> sigma_extremes(const ComplexMatrix& m) {
    if (m.size() == 0) return {0.0, 0.0};
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    const auto& sv = svd.singularValues();
    return {sv(sv.size() - 1), sv(0)};
}

ComplexMatrix sqrtm(const ComplexMatrix& a, double rank_tol) {
    require_square(a, "sqrtm");
    require_finite(a, "sqrtm");
    const Index n = a.rows();
    if (n == 0) return a;
    {
        Eigen::JacobiSVD<ComplexMatrix> svd(a);
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(n - 1);
        if (smax == 0.0 || smin < rank_tol * smax)
            throw SingularMatrix("sqrtm: matrix is numerically singular; supply a root explicitly");
    }
    Eigen::ComplexSchur<ComplexMatrix> schur(a, /*computeU=*/true);
    const ComplexMatrix& t = schur.matrixT();
    const ComplexMatrix& u = schur.matrixU();
    ComplexMatrix r = ComplexMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) r(i, i) = std::sqrt(t(i, i));
    for (Index j = 1; j < n; ++j) {
        for (Index i = j - 1; i >= 0; --i) {
            Complex s = t(i, j);
            for (Index k = i + 1; k < j; ++k) s -= r(i, k) * r(k, j);
            const Complex denom = r(i, i) + r(j, j);
            const double floor = std::numeric_limits<double>::epsilon() *
                                 (std::abs(r(i, i)) + std::abs(r(j, j)));
            if (std::abs(denom) <= floor)
                throw NoRootFound("sqrtm: vanishing diagonal sum in the triangular recurrence");
            r(i, j) = s / denom;
        }
    }
    return u * r * u.adjoint();
}

ComplexMatrix expm(const ComplexMatrix& m) {
    require_square(m, "expm");
    require_finite(m, "expm");
    const Index n = m.rows();
    if (n == 0) return m;
    const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
    if (exactly_zero(m)) return ident;

    // Nilpotency check: powers up to the dimension. If one vanishes the
    // exponential series terminates and is summed without truncation error.
    {
        std::vector<ComplexMatrix> pw;
        pw.push_back(m);
        bool nilpotent = false;
        while (static_cast<Index>(pw.size()) < n) {
            ComplexMatrix next = pw.back() * m;
            if (exactly_zero(next)) {
                nilpotent = true;
                break;
            }
            pw.push_back(std::move(next));
        }
        if (nilpotent) {
            ComplexMatrix f = ident;
            double factorial = 1.0;
            for (size_t k = 0; k < pw.size(); ++k) {
                factorial *= static_cast<double>(k + 1);
                f += pw[k] / factorial;
            }
            return f;
        }
    }

    // Order-13 diagonal Pade approximant with scaling and squaring.
    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;
    const double nrm = norm1(m);
    int squarings = 0;
    ComplexMatrix ms = m;
    if (nrm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        ms /= std::pow(2.0, squarings);
    }
    const ComplexMatrix m2 = ms * ms;
    const ComplexMatrix m4 = m2 * m2;
    const ComplexMatrix m6 = m4 * m2;
    const ComplexMatrix u =
        ms * (m6 * (b[13] * m6 + b[11] * m4 + b[9] * m2) + b[7] * m6 + b[5] * m4 + b[3] * m2 +
              b[1] * ident);
    const ComplexMatrix v =
        m6 * (b[12] * m6 + b[10] * m4 + b[8] * m2) + b[6] * m6 + b[4] * m4 + b[2] * m2 +
        b[0] * ident;
    ComplexMatrix f = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < squarings; ++k) f = f * f;
    return f;
}

ComplexMatrix solve_sylvester(const ComplexMatrix& p, const ComplexMatrix& r,
                              const ComplexMatrix& c, double eigen_tol) {
    require_square(p, "solve_sylvester");
    require_square(r, "solve_sylvester");
    require_finite(p, "solve_sylvester");
    require_finite(r, "solve_sylvester");
    require_finite(c, "solve_sylvester");
    const Index n = p.rows();
    const Index k = r.rows();
    if (c.rows() != n || c.cols() != k)
        throw ShapeMismatch("solve_sylvester: right side must be rows(P) x rows(R)");
    if (n == 0 || k == 0) return ComplexMatrix::Zero(n, k);

    Eigen::ComplexSchur<ComplexMatrix> sp(p, /*computeU=*/true);
    Eigen::ComplexSchur<ComplexMatrix> sr(r, /*computeU=*/true);
    const ComplexMatrix& tp = sp.matrixT();
    const ComplexMatrix& up = sp.matrixU();
    const ComplexMatrix& tr = sr.matrixT();
    const ComplexMatrix& ur = sr.matrixU();

    const double sep_tol = eigen_tol * (p.norm() + r.norm());
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < k; ++j)
            if (std::abs(tp(i, i) + tr(j, j)) <= sep_tol)
                throw SpectraOverlap("solve_sylvester: spec(P) meets spec(-R); no unique solution");

    const ComplexMatrix ct = up.adjoint() * c * ur;
    ComplexMatrix y = ComplexMatrix::Zero(n, k);
    for (Index j = 0; j < k; ++j) {
        ComplexVector rhs = ct.col(j);
        if (j > 0) rhs -= y.leftCols(j) * tr.block(0, j, j, 1);
        for (Index i = n - 1; i >= 0; --i) {
            Complex s = rhs(i);
            for (Index l = i + 1; l < n; ++l) s -= tp(i, l) * y(l, j);
            y(i, j) = s / (tp(i, i) + tr(j, j));
        }
    }
    return up * y * ur.adjoint();
}

ComplexMatrix resolvent(const ComplexMatrix& a, Complex lambda, double eigen_tol) {
    require_square(a, "resolvent");
    require_finite(a, "resolvent");
    const Index n = a.rows();
    if (n == 0) return a;
    const ComplexVector eig = eigenvalues(a);
    double dist = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) dist = std::min(dist, std::abs(eig(i) - lambda));
    const double tol = eigen_tol * std::max(a.norm(), std::abs(lambda));
    if (dist <= tol)
        throw SpectralPoint("resolvent: lambda is numerically an eigenvalue of A");
    const ComplexMatrix shifted = a - lambda * ComplexMatrix::Identity(n, n);
    return shifted.partialPivLu().solve(ComplexMatrix::Identity(n, n));
}

}  // namespace gbdt::matfun
