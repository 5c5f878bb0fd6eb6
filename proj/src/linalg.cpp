#include "vbag/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace vbag {

SymMatrix::SymMatrix(Matrix m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimensionMismatch("SymMatrix: square nonempty matrix required");
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale)
        throw DomainError("SymMatrix: asymmetry " + std::to_string(asym) +
                          " exceeds tolerance");
    m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::identity(int dim) {
    return SymMatrix(Matrix::Identity(dim, dim));
}

Matrix cholesky(const SymMatrix& m) {
    const Matrix& a = m.mat();
    const int d = m.dim();
    double max_diag = a.diagonal().maxCoeff();
    double tol = d * std::numeric_limits<double>::epsilon() * std::max(max_diag, 0.0);
    Matrix L = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        double s = a(j, j);
        for (int k = 0; k < j; ++k) s -= L(j, k) * L(j, k);
        if (s <= tol)
            throw NotPositiveDefinite("cholesky: pivot " + std::to_string(s) +
                                      " at column " + std::to_string(j));
        L(j, j) = std::sqrt(s);
        for (int i = j + 1; i < d; ++i) {
            double t = a(i, j);
            for (int k = 0; k < j; ++k) t -= L(i, k) * L(j, k);
            L(i, j) = t / L(j, j);
        }
    }
    return L;
}

double logdet_pd(const SymMatrix& m) {
    Matrix L = cholesky(m);
    return 2.0 * L.diagonal().array().log().sum();
}

Matrix sample_mvn(const Vector& mean, const SymMatrix& cov, int k, RngStream& rng) {
    if (mean.size() != cov.dim())
        throw DimensionMismatch("sample_mvn: mean/cov dimension mismatch");
    const int d = cov.dim();
    Matrix out(k, d);
    if (k == 0) return out;
    Matrix L = cholesky(cov);
    Vector z(d);
    for (int r = 0; r < k; ++r) {
        for (int j = 0; j < d; ++j) z(j) = rng.normal();
        out.row(r) = (mean + L * z).transpose();
    }
    return out;
}

SymMatrix project_pd(const SymMatrix& m, double min_eig, bool* clipped) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.mat());
    Vector ev = es.eigenvalues();
    bool any = false;
    for (int i = 0; i < ev.size(); ++i)
        if (ev(i) < min_eig) {
            ev(i) = min_eig;
            any = true;
        }
    if (clipped) *clipped = any;
    if (!any) return m;
    Matrix r = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    return SymMatrix(0.5 * (r + r.transpose()));
}

}  // namespace vbag
