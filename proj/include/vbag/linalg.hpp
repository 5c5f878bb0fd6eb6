#pragma once

#include <Eigen/Dense>

#include "vbag/errors.hpp"
#include "vbag/rng.hpp"

namespace vbag {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Dense symmetric matrix. Construction checks symmetry to 1e-12 relative
// tolerance and stores the symmetrized value so downstream arithmetic sees
// an exactly symmetric matrix.
class SymMatrix {
  public:
    explicit SymMatrix(Matrix m);

    static SymMatrix identity(int dim);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& mat() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

  private:
    Matrix m_;
};

// Lower-triangular Cholesky factor L with L * L^T = m. Throws
// NotPositiveDefinite when a pivot falls at or below
// dim * machine-eps * max-diagonal.
Matrix cholesky(const SymMatrix& m);

// log det of a PD matrix via its Cholesky factor.
double logdet_pd(const SymMatrix& m);

// k draws from N(mean, cov), one per row.
Matrix sample_mvn(const Vector& mean, const SymMatrix& cov, int k, RngStream& rng);

// Projection to the nearest symmetric PD matrix by clipping eigenvalues at
// min_eig. Sets *clipped when any eigenvalue was raised.
SymMatrix project_pd(const SymMatrix& m, double min_eig, bool* clipped = nullptr);

}  // namespace vbag
