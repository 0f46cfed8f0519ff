#include "celsteer/steering.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "celsteer/errors.hpp"

namespace celsteer {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::two_way: return "two_way";
        case Regime::one_way_1to2: return "one_way_1to2";
        case Regime::one_way_2to1: return "one_way_2to1";
        case Regime::no_way: return "no_way";
    }
    return "?";
}

MechCovariance mech_block(const Matrix8& full) {
    MechCovariance m;
    m.v = full.topLeftCorner<4, 4>();
    return m;
}

double steering_det(const MechCovariance& v, SteerDirection dir) {
    const double det_v = v.v.determinant();
    if (det_v <= 0.0)
        throw NumericalError("steering_det: non-positive det of mechanical covariance");
    const Matrix2 party = (dir == SteerDirection::m1_to_m2) ? v.block_a() : v.block_b();
    const double det_party = party.determinant();
    if (det_party <= 0.0)
        throw NumericalError("steering_det: non-positive det of steering-party block");
    return std::max(0.0, 0.5 * std::log(det_party / (4.0 * det_v)));
}

double steering_symplectic(const MechCovariance& v, SteerDirection dir) {
    const Matrix4 sigma = 2.0 * v.v;
    Matrix2 sa, sb, sc;
    if (dir == SteerDirection::m1_to_m2) {
        sa = sigma.topLeftCorner<2, 2>();      // steering party m1
        sb = sigma.bottomRightCorner<2, 2>();  // steered mode m2
        sc = sigma.topRightCorner<2, 2>();
    } else {
        sa = sigma.bottomRightCorner<2, 2>();
        sb = sigma.topLeftCorner<2, 2>();
        sc = sigma.topRightCorner<2, 2>().transpose();
    }
    const double det_sa = sa.determinant();
    if (std::abs(det_sa) < 1e-300)
        throw NumericalError("steering_symplectic: singular steering-party block");
    const Matrix2 schur = sb - sc.transpose() * sa.inverse() * sc;
    const double det_m = schur.determinant();
    if (det_m <= 0.0)
        throw NumericalError("steering_symplectic: non-positive Schur complement determinant");
    const double nu = std::sqrt(det_m);  // single steered mode
    return std::max(0.0, -std::log(nu));
}

double mech_energy_diff(const MechCovariance& v) {
    return (v.v(0, 0) + v.v(1, 1)) - (v.v(2, 2) + v.v(3, 3));
}

Regime classify(double g_1to2, double g_2to1) {
    const bool d12 = g_1to2 > k_steering_tol;
    const bool d21 = g_2to1 > k_steering_tol;
    if (d12 && d21) return Regime::two_way;
    if (d12) return Regime::one_way_1to2;
    if (d21) return Regime::one_way_2to1;
    return Regime::no_way;
}

SteeringResult analyze_steering(const MechCovariance& v) {
    SteeringResult r;
    r.g_1to2 = steering_det(v, SteerDirection::m1_to_m2);
    r.g_2to1 = steering_det(v, SteerDirection::m2_to_m1);
    r.regime = classify(r.g_1to2, r.g_2to1);
    r.energy_diff = mech_energy_diff(v);
    return r;
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& sigma) {
    const Eigen::Index dim = sigma.rows();
    if (dim % 2 != 0 || sigma.cols() != dim)
        throw std::invalid_argument("symplectic_eigenvalues: need even square matrix");
    // Omega: block-diagonal [[0,1],[-1,0]] per mode, (q,p) interleaved.
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; i += 2) {
        omega(i, i + 1) = 1.0;
        omega(i + 1, i) = -1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(omega * sigma, false);
    if (es.info() != Eigen::Success)
        throw NumericalError("symplectic_eigenvalues: eigensolver failed");
    std::vector<double> mags(static_cast<size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i)
        mags[static_cast<size_t>(i)] = std::abs(es.eigenvalues()(i));
    // Eigenvalues of Omega*sigma come in +-(i nu) pairs; keep one per pair.
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    std::vector<double> nus;
    for (size_t i = 0; i < mags.size(); i += 2) nus.push_back(0.5 * (mags[i] + mags[i + 1]));
    return nus;
}

double ppt_min_symplectic(const MechCovariance& v) {
    const Matrix4 sigma = 2.0 * v.v;
    const double det_a = sigma.topLeftCorner<2, 2>().determinant();
    const double det_b = sigma.bottomRightCorner<2, 2>().determinant();
    const double det_c = sigma.topRightCorner<2, 2>().determinant();
    const double det_s = sigma.determinant();
    const double delta_tilde = det_a + det_b - 2.0 * det_c;
    const double disc = delta_tilde * delta_tilde - 4.0 * det_s;
    if (disc < 0.0)
        throw NumericalError("ppt_min_symplectic: complex symplectic spectrum (unphysical input)");
    const double nu2 = 0.5 * (delta_tilde - std::sqrt(disc));
    if (nu2 < 0.0)
        throw NumericalError("ppt_min_symplectic: negative squared symplectic eigenvalue");
    return std::sqrt(nu2);
}

}  // namespace celsteer
