#include "qiopa/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qiopa/linalg.hpp"

namespace qiopa {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// Tr(rho sigma) for Hermitian rho, sigma; real up to rounding.
double hs_overlap(const Matrix& rho, const Matrix& sigma) {
    return rho.cwiseProduct(sigma.conjugate()).sum().real();
}

}  // namespace

double fidelity_psd(const Matrix& a, const Matrix& b, double floor) {
    HermitianEigen es = hermitian_eigensystem(a);
    Eigen::VectorXd w = es.values;
    for (int i = 0; i < w.size(); ++i) {
        if (w[i] < floor) throw InvariantError("fidelity: first argument is not positive");
        w[i] = std::sqrt(std::max(w[i], 0.0));
    }
    // sqrt(a) b sqrt(a) in the eigenbasis of a: scale the rotated b by
    // sqrt(w) on both sides instead of forming sqrt(a) explicitly.
    Matrix rotated = es.vectors.adjoint() * b * es.vectors;
    rotated = w.asDiagonal() * rotated * w.asDiagonal();
    rotated = 0.5 * (rotated + rotated.adjoint().eval());
    Eigen::VectorXd ev = hermitian_eigenvalues(rotated);
    if (ev.minCoeff() < floor) throw InvariantError("fidelity: second argument is not positive");
    double f = 0.0;
    for (int i = 0; i < ev.size(); ++i)
        if (ev[i] > 0.0) f += std::sqrt(ev[i]);
    return f;
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
    require_same_space(rho.space, sigma.space, "fidelity");

    if (std::fabs(rho.purity() - 1.0) < 1e-12 && std::fabs(sigma.purity() - 1.0) < 1e-12) {
        return clamp01(std::sqrt(std::max(0.0, hs_overlap(rho.matrix, sigma.matrix))));
    }
    return clamp01(fidelity_psd(rho.matrix, sigma.matrix));
}

double fidelity_product_spectrum(const DensityOperator& rho, const DensityOperator& sigma) {
    require_same_space(rho.space, sigma.space, "fidelity_product_spectrum");
    Eigen::ComplexEigenSolver<Matrix> es(rho.matrix * sigma.matrix, false);
    if (es.info() != Eigen::Success) {
        throw InvariantError("fidelity_product_spectrum: eigensolver failed");
    }
    double f = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double re = es.eigenvalues()[i].real();
        if (re > 0.0) f += std::sqrt(re);
    }
    return clamp01(f);
}

double fidelity_factors(const Matrix& a, const Matrix& b) {
    return nuclear_norm(b.adjoint() * a);
}

double bures_from_fidelity(double f) {
    return std::sqrt(std::max(0.0, 1.0 - f));
}

double bures_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    return bures_from_fidelity(fidelity(rho, sigma));
}

double coherent_pointer_distance_closed(double alpha_sq, double reflectivity) {
    if (alpha_sq < 0.0) throw InvariantError("coherent_pointer_distance_closed: |alpha|^2 < 0");
    if (!(reflectivity >= 0.0 && reflectivity <= 1.0)) {
        throw InvariantError("coherent_pointer_distance_closed: R outside [0, 1]");
    }
    return std::sqrt(std::max(0.0, 1.0 - std::exp(-2.0 * (1.0 - reflectivity) * alpha_sq)));
}

double coherent_mqs_distance_closed(double alpha_sq, double reflectivity) {
    if (alpha_sq < 0.0) throw InvariantError("coherent_mqs_distance_closed: |alpha|^2 < 0");
    if (!(reflectivity >= 0.0 && reflectivity <= 1.0)) {
        throw InvariantError("coherent_mqs_distance_closed: R outside [0, 1]");
    }
    double inner = std::sqrt(std::max(0.0, 1.0 - std::exp(-4.0 * reflectivity * alpha_sq)));
    return std::sqrt(std::max(0.0, 1.0 - inner));
}

}  // namespace qiopa
