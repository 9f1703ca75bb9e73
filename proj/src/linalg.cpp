#include "qiopa/linalg.hpp"

#include <cmath>
#include <sstream>

#ifdef QIOPA_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace qiopa {

HermitianEigen hermitian_eigensystem(const Matrix& a) {
#ifdef QIOPA_HAVE_LAPACKE
    const int n = static_cast<int>(a.rows());
    HermitianEigen out;
    out.vectors = a;  // overwritten with eigenvectors
    out.values.resize(n);
    int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                              reinterpret_cast<lapack_complex_double*>(out.vectors.data()), n,
                              out.values.data());
    if (info == 0) return out;
    // fall through to Eigen on (rare) convergence failure
#endif
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    if (es.info() != Eigen::Success) throw InvariantError("hermitian_eigensystem: eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& a) {
#ifdef QIOPA_HAVE_LAPACKE
    const int n = static_cast<int>(a.rows());
    Matrix work = a;
    Eigen::VectorXd w(n);
    int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n,
                              reinterpret_cast<lapack_complex_double*>(work.data()), n, w.data());
    if (info == 0) return w;
#endif
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw InvariantError("hermitian_eigenvalues: eigensolver failed");
    return es.eigenvalues();
}

Matrix hermitian_sqrt(const Matrix& a, double floor) {
    HermitianEigen es = hermitian_eigensystem(a);
    Eigen::VectorXd w = es.values;
    for (int i = 0; i < w.size(); ++i) {
        if (w[i] < floor) {
            std::ostringstream os;
            os << "hermitian_sqrt: eigenvalue " << w[i] << " below floor " << floor;
            throw InvariantError(os.str());
        }
        w[i] = std::sqrt(std::max(w[i], 0.0));
    }
    return es.vectors * w.asDiagonal() * es.vectors.adjoint();
}

Eigen::VectorXd singular_values(const Matrix& a) {
#ifdef QIOPA_HAVE_LAPACKE
    Matrix work = a;
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    const int k = std::min(m, n);
    Eigen::VectorXd s(k);
    int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n,
                              reinterpret_cast<lapack_complex_double*>(work.data()), m, s.data(),
                              nullptr, 1, nullptr, 1);
    if (info == 0) return s;
#endif
    Eigen::BDCSVD<Matrix> svd(a);
    return svd.singularValues();
}

double nuclear_norm(const Matrix& a) {
    return singular_values(a).sum();
}

double hermiticity_defect(const Matrix& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double sum_sqrt_clipped(const Eigen::VectorXd& w, double floor) {
    double s = 0.0;
    for (int i = 0; i < w.size(); ++i) {
        if (w[i] < floor) {
            std::ostringstream os;
            os << "sum_sqrt_clipped: eigenvalue " << w[i] << " below floor " << floor;
            throw InvariantError(os.str());
        }
        if (w[i] > 0.0) s += std::sqrt(w[i]);
    }
    return s;
}

}  // namespace qiopa
