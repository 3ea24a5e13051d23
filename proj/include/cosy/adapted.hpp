#pragma once

#include <cosy/acms.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace cosy {

/// Floating-point almost contact metric data, produced by the adapted-metric
/// construction. eta, xi, omega stay exact (they are the input pair); phi
/// and g carry the irrational square roots.
struct FloatACMS {
    int dim = 0;
    Eigen::VectorXd eta;
    Eigen::VectorXd xi;
    Eigen::MatrixXd phi;
    Eigen::MatrixXd g;
    Eigen::MatrixXd omega;  // omega(e_i, e_j) as a matrix

    // intermediate data, kept for auditing
    Eigen::MatrixXd a_tensor;  // exact rational A, converted
    Eigen::MatrixXd b_root;    // B = sqrt(A^t A)
    double sqrt_residual = 0;  // |B^2 - A^t A|_inf
};

inline Eigen::MatrixXd to_eigen(const Mat& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) e(i, j) = to_double(m(i, j));
    return e;
}

inline Eigen::VectorXd to_eigen(const Vec& v) {
    Eigen::VectorXd e(static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) e(static_cast<int>(i)) = to_double(v[i]);
    return e;
}

/// Max violation of the structure axioms over all basis pairs, plus the
/// L_xi phi residual (so a K-cosymplectic verdict "within tol" makes sense
/// for the floating output).
struct FloatResiduals {
    double eta_xi = 0;       // |eta(xi) - 1|
    double phi_square = 0;   // |phi^2 + Id - xi eta^t|_inf
    double compat = 0;       // metric compatibility residual
    double omega_match = 0;  // |phi^t g - omega|_inf
    double n3 = 0;           // |L_xi phi|_inf

    double max() const { return std::max({eta_xi, phi_square, compat, omega_match, n3}); }
};

inline FloatResiduals float_validate(const LieModel& L, const FloatACMS& s) {
    FloatResiduals r;
    const int d = s.dim;
    r.eta_xi = std::abs(s.eta.dot(s.xi) - 1.0);
    Eigen::MatrixXd want = -Eigen::MatrixXd::Identity(d, d) + s.xi * s.eta.transpose();
    r.phi_square = (s.phi * s.phi - want).cwiseAbs().maxCoeff();
    r.compat =
        (s.phi.transpose() * s.g * s.phi - (s.g - s.eta * s.eta.transpose())).cwiseAbs().maxCoeff();
    r.omega_match = (s.phi.transpose() * s.g - s.omega).cwiseAbs().maxCoeff();
    Eigen::MatrixXd adxi = Eigen::MatrixXd::Zero(d, d);
    for (const auto& [ij, v] : L.brackets.entries()) {
        Eigen::VectorXd vv = to_eigen(v);
        adxi.col(ij.second) += s.xi(ij.first) * vv;
        adxi.col(ij.first) -= s.xi(ij.second) * vv;
    }
    r.n3 = (adxi * s.phi - s.phi * adxi).cwiseAbs().maxCoeff();
    return r;
}

/// Adapted-structure construction for a cosymplectic pair and a metric gbar
/// making xi Killing:
///   1. gtilde = gbar/gbar(xi,xi) - (gbar(xi,.) (x) gbar(xi,.)/gbar(xi,xi)^2
///      - eta (x) eta)                                [exact]
///   2. A from omega(X, Y) = gtilde(AX, Y)            [exact]
///   3. B = sqrt(A^t A), symmetric eigendecomposition [floating]
///   4. phi = A B^+  (pseudo-inverse; ker B = <xi>, so phi xi = 0)
///   5. g(X, Y) = -omega(phi X, Y) + eta(X) eta(Y)
inline FloatACMS adapted_structure(const CosymplecticPair& p, const Metric& gbar,
                                   double tol = 1e-9) {
    const int d = p.model.dim;
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    if (!is_killing(p.model, gbar, p.xi))
        throw std::invalid_argument("xi is not Killing for gbar");

    Rational gxx = gbar(p.xi, p.xi);
    Vec gxi = gbar.g.apply(p.xi);
    Vec eta_coords = one_form_coords(p.eta);
    Mat gtilde(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            gtilde(i, j) = gbar.g(i, j) / gxx - gxi[i] * gxi[j] / (gxx * gxx) +
                           eta_coords[i] * eta_coords[j];
    Mat omega_mat = two_form_matrix(p.omega);
    auto gtinv = inverse(gtilde);
    if (!gtinv) throw std::runtime_error("gtilde is singular");
    Mat a_exact = Rational(-1) * (*gtinv * omega_mat);

    FloatACMS out;
    out.dim = d;
    out.eta = to_eigen(eta_coords);
    out.xi = to_eigen(p.xi);
    out.omega = to_eigen(omega_mat);
    out.a_tensor = to_eigen(a_exact);

    Eigen::MatrixXd ata = out.a_tensor.transpose() * out.a_tensor;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ata);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("square root of A^t A did not converge");
    Eigen::VectorXd lam = eig.eigenvalues();
    double lmax = lam.maxCoeff();
    if (lmax <= 0) throw std::runtime_error("omega is degenerate (A = 0)");
    double cut = lmax * 1e-12;
    int null_count = 0;
    Eigen::VectorXd sq(d), sqinv(d);
    for (int i = 0; i < d; ++i) {
        if (lam(i) <= cut) {
            ++null_count;
            sq(i) = 0;
            sqinv(i) = 0;
        } else {
            sq(i) = std::sqrt(lam(i));
            sqinv(i) = 1.0 / sq(i);
        }
    }
    if (null_count != 1)
        throw std::runtime_error("B singular on ker eta: omega degenerate on the distribution");
    out.b_root = eig.eigenvectors() * sq.asDiagonal() * eig.eigenvectors().transpose();
    Eigen::MatrixXd b_pinv =
        eig.eigenvectors() * sqinv.asDiagonal() * eig.eigenvectors().transpose();
    out.sqrt_residual = (out.b_root * out.b_root - ata).cwiseAbs().maxCoeff();

    out.phi = out.a_tensor * b_pinv;
    out.g = -out.phi.transpose() * out.omega + out.eta * out.eta.transpose();

    FloatResiduals res = float_validate(p.model, out);
    if (res.max() > tol)
        throw std::runtime_error("adapted structure residual " + std::to_string(res.max()) +
                                 " exceeds tolerance");
    return out;
}

}  // namespace cosy
