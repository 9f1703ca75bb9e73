#include "qiopa/loss.hpp"

#include <cmath>
#include <sstream>

#include "qiopa/linalg.hpp"

namespace qiopa {

LossParams::LossParams(double reflectivity) : R(reflectivity), T(1.0 - reflectivity) {
    if (!(R >= 0.0 && R <= 1.0)) throw InvariantError("LossParams: R must lie in [0, 1]");
}

std::vector<std::vector<double>> loss_coefficients(int cutoff, const LossParams& loss) {
    std::vector<std::vector<double>> coef(cutoff + 1, std::vector<double>(cutoff + 1, 0.0));
    // binom(n, k) by recurrence; cutoffs here keep it well inside double range
    std::vector<double> binom(cutoff + 1, 0.0);
    for (int n = 0; n <= cutoff; ++n) {
        binom[n] = 1.0;
        for (int k = n - 1; k >= 1; --k) binom[k] += binom[k - 1];
        for (int k = 0; k <= n; ++k) {
            double tpow = (n - k == 0) ? 1.0 : std::pow(loss.T, n - k);
            double rpow = (k == 0) ? 1.0 : std::pow(loss.R, k);
            coef[k][n] = std::sqrt(binom[k] * tpow * rpow);
        }
    }
    return coef;
}

std::vector<Matrix> loss_kraus(int cutoff, const LossParams& loss) {
    const auto coef = loss_coefficients(cutoff, loss);
    std::vector<Matrix> ks;
    ks.reserve(cutoff + 1);
    for (int k = 0; k <= cutoff; ++k) {
        Matrix kk = Matrix::Zero(cutoff + 1, cutoff + 1);
        for (int n = k; n <= cutoff; ++n) kk(n - k, n) = coef[k][n];
        ks.push_back(std::move(kk));
    }
    return ks;
}

namespace {

// One mode of the Kraus contraction:
// out[(n,*),(n',*)] = sum_k c_k(n+k) c_k(n'+k) in[(n+k,*),(n'+k,*)]
// applied along mode 1; mode 2 is handled by transposing the index role.
Matrix contract_mode(const Matrix& in, const std::vector<std::vector<double>>& coef, int cutoff,
                     bool mode1) {
    const int w = cutoff + 1;
    Matrix out = Matrix::Zero(in.rows(), in.cols());
    for (int k = 0; k <= cutoff; ++k) {
        for (int n = 0; n + k <= cutoff; ++n) {
            const double cn = coef[k][n + k];
            if (cn == 0.0) continue;
            for (int np = 0; np + k <= cutoff; ++np) {
                const double c2 = cn * coef[k][np + k];
                if (c2 == 0.0) continue;
                if (mode1) {
                    out.block(n * w, np * w, w, w) += c2 * in.block((n + k) * w, (np + k) * w, w, w);
                } else {
                    // mode 2: strided blocks, add row/col slices
                    for (int a = 0; a < w; ++a)
                        for (int b = 0; b < w; ++b)
                            out(a * w + n, b * w + np) += c2 * in(a * w + n + k, b * w + np + k);
                }
            }
        }
    }
    return out;
}

}  // namespace

DensityOperator apply_loss(const DensityOperator& rho, const LossParams& loss) {
    const int c = rho.space.cutoff();
    const auto coef = loss_coefficients(c, loss);
    Matrix stage = contract_mode(rho.matrix, coef, c, true);
    Matrix out = contract_mode(stage, coef, c, false);
    out = 0.5 * (out + out.adjoint().eval());

    double tr = out.trace().real();
    if (std::fabs(tr - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "apply_loss: output trace " << tr << " deviates from 1";
        throw InvariantError(os.str());
    }

    // Spectral repair: clip noise-level negatives, reject anything larger.
    HermitianEigen es = hermitian_eigensystem(out);
    double lo = es.values.minCoeff();
    if (lo < -1e-9) {
        std::ostringstream os;
        os << "apply_loss: eigenvalue " << lo << " below -1e-9";
        throw InvariantError(os.str());
    }
    if (lo < -1e-13) {
        Eigen::VectorXd w = es.values.cwiseMax(0.0);
        w /= w.sum();
        out = es.vectors * w.asDiagonal() * es.vectors.adjoint();
        out = 0.5 * (out + out.adjoint().eval());
    } else {
        // identity-level noise; renormalizing the trace is enough
        out /= tr;
    }
    return DensityOperator(rho.space, std::move(out));
}

Matrix apply_loss_single_mode(const Matrix& rho, const LossParams& loss) {
    const int cutoff = static_cast<int>(rho.rows()) - 1;
    const auto coef = loss_coefficients(cutoff, loss);
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (int k = 0; k <= cutoff; ++k)
        for (int n = 0; n + k <= cutoff; ++n)
            for (int np = 0; np + k <= cutoff; ++np)
                out(n, np) += coef[k][n + k] * coef[k][np + k] * rho(n + k, np + k);
    return 0.5 * (out + out.adjoint().eval());
}

Matrix lossy_pure_columns(const Vector& s, const LossParams& loss) {
    const int cutoff = static_cast<int>(s.size()) - 1;
    const auto coef = loss_coefficients(cutoff, loss);
    Matrix cols = Matrix::Zero(cutoff + 1, cutoff + 1);
    for (int k = 0; k <= cutoff; ++k)
        for (int n = k; n <= cutoff; ++n) cols(n - k, k) += coef[k][n] * s[n];
    return cols;
}

}  // namespace qiopa
