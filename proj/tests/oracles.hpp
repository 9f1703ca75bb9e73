#pragma once

// Test-only oracles, kept independent of the implementation paths they
// cross-check.

#include <random>

#include <Eigen/Dense>

#include "qiopa/density.hpp"
#include "qiopa/fock.hpp"
#include "qiopa/rotation.hpp"

namespace oracle {

using qiopa::Complex;
using qiopa::Matrix;
using qiopa::Vector;

// Loss channel the long way round: couple each polarization mode to a
// vacuum ancilla with an explicit beam-splitter unitary (built through the
// lifted-rotation machinery, not the damping coefficients), then trace the
// ancillas out. Exponential in the cutoff; for small spaces only.
inline qiopa::DensityOperator beamsplitter_loss(const qiopa::DensityOperator& rho, double R) {
    const int c = rho.space.cutoff();
    const int w = c + 1;
    const double t = std::sqrt(1.0 - R), r = std::sqrt(R);
    Eigen::Matrix2cd bs;
    bs << t, -r, r, t;
    const qiopa::TwoModeSpace pair(c, qiopa::BasisLabel::poles());
    const Matrix u = qiopa::lift_mode_unitary(pair, qiopa::ModeUnitary(bs));

    // eigendecompose the (tiny) input and push each pure component through
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix);
    Matrix out = Matrix::Zero(w * w, w * w);
    for (int e = 0; e < es.eigenvalues().size(); ++e) {
        const double lambda = es.eigenvalues()[e];
        if (lambda < 1e-14) continue;
        // four-mode amplitudes indexed [n][a][m][b], ancillas start in vacuum
        std::vector<Complex> phi(static_cast<size_t>(w) * w * w * w, Complex(0.0));
        auto at = [w](std::vector<Complex>& v, int n, int a, int m, int b) -> Complex& {
            return v[((static_cast<size_t>(n) * w + a) * w + m) * w + b];
        };
        for (int n = 0; n <= c; ++n)
            for (int m = 0; m <= c; ++m)
                at(phi, n, 0, m, 0) = es.eigenvectors()(n * w + m, e);
        // beam splitter on (mode1, ancilla1)
        std::vector<Complex> tmp(phi.size(), Complex(0.0));
        for (int m = 0; m <= c; ++m)
            for (int b = 0; b <= c; ++b)
                for (int n = 0; n <= c; ++n)
                    for (int a = 0; a <= c; ++a) {
                        const Complex amp = at(phi, n, a, m, b);
                        if (amp == Complex(0.0)) continue;
                        for (int p = 0; p <= c; ++p) {
                            const int q = n + a - p;
                            if (q < 0 || q > c) continue;
                            at(tmp, p, q, m, b) += u(p * w + q, n * w + a) * amp;
                        }
                    }
        // beam splitter on (mode2, ancilla2)
        std::fill(phi.begin(), phi.end(), Complex(0.0));
        for (int n = 0; n <= c; ++n)
            for (int a = 0; a <= c; ++a)
                for (int m = 0; m <= c; ++m)
                    for (int b = 0; b <= c; ++b) {
                        const Complex amp = at(tmp, n, a, m, b);
                        if (amp == Complex(0.0)) continue;
                        for (int p = 0; p <= c; ++p) {
                            const int q = m + b - p;
                            if (q < 0 || q > c) continue;
                            at(phi, n, a, p, q) += u(p * w + q, m * w + b) * amp;
                        }
                    }
        // trace out both ancillas
        for (int n = 0; n <= c; ++n)
            for (int m = 0; m <= c; ++m)
                for (int np = 0; np <= c; ++np)
                    for (int mp = 0; mp <= c; ++mp) {
                        Complex sum = 0.0;
                        for (int a = 0; a <= c; ++a)
                            for (int b = 0; b <= c; ++b)
                                sum += at(phi, n, a, m, b) * std::conj(at(phi, np, a, mp, b));
                        out(n * w + m, np * w + mp) += lambda * sum;
                    }
    }
    out = 0.5 * (out + out.adjoint().eval());
    out /= out.trace().real();
    return qiopa::DensityOperator(rho.space, std::move(out));
}

// Fidelity straight from the definition, Eigen solvers only.
inline double fidelity_eigen(const Matrix& rho, const Matrix& sigma) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Matrix root = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es2(root * sigma * root);
    return es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

inline Vector random_unit(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = Complex(gauss(rng), gauss(rng));
    return v / v.norm();
}

// Ginibre-style random density matrix, full rank unless rank is given.
inline Matrix random_density(int dim, std::mt19937_64& rng, int rank = 0) {
    if (rank <= 0) rank = dim;
    std::normal_distribution<double> gauss;
    Matrix g(dim, rank);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint().eval());
}

inline qiopa::ModeUnitary random_su2(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    double a = gauss(rng), b = gauss(rng), c = gauss(rng), d = gauss(rng);
    double n = std::sqrt(a * a + b * b + c * c + d * d);
    a /= n; b /= n; c /= n; d /= n;
    Eigen::Matrix2cd u;
    u << Complex(a, b), Complex(c, d), Complex(-c, d), Complex(a, -b);
    return qiopa::ModeUnitary(u);
}

}  // namespace oracle
