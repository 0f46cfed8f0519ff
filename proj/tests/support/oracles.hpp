// Test-only oracles, independent of the production solver paths.
#ifndef CELSTEER_TESTS_SUPPORT_ORACLES_HPP_
#define CELSTEER_TESTS_SUPPORT_ORACLES_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <random>

namespace celsteer::test {

// Brute-force Lyapunov solve via Kronecker vectorization:
// (I (x) K + K (x) I) vec(V) = -vec(R). O(n^6) but exact for small n.
inline Eigen::MatrixXd kronecker_lyapunov(const Eigen::MatrixXd& k, const Eigen::MatrixXd& r) {
    const Eigen::Index n = k.rows();
    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(n * n, n * n);
    // vec is column-major: vec(KV) = (I (x) K) vec(V); vec(V K^T) = (K (x) I) vec(V).
    for (Eigen::Index col = 0; col < n; ++col)
        sys.block(col * n, col * n, n, n) += k;
    for (Eigen::Index br = 0; br < n; ++br)
        for (Eigen::Index bc = 0; bc < n; ++bc)
            sys.block(br * n, bc * n, n, n) +=
                k(br, bc) * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd rhs(n * n);
    for (Eigen::Index col = 0; col < n; ++col) rhs.segment(col * n, n) = -r.col(col);
    const Eigen::VectorXd sol = sys.fullPivLu().solve(rhs);
    Eigen::MatrixXd v(n, n);
    for (Eigen::Index col = 0; col < n; ++col) v.col(col) = sol.segment(col * n, n);
    return v;
}

// Random Hurwitz-stable drift and PSD diffusion pair.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> random_stable_system(std::mt19937_64& rng,
                                                                        int n = 8) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd m(n, n);
    for (;;) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
        // Shift left until strictly stable.
        Eigen::MatrixXd k = m - (m.eigenvalues().real().maxCoeff() + 0.5) *
                                    Eigen::MatrixXd::Identity(n, n);
        if (k.eigenvalues().real().maxCoeff() < -0.1) {
            Eigen::MatrixXd a(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
            return {k, a * a.transpose()};
        }
    }
}

// Random physical two-mode covariance in the vacuum-1/2 convention:
// v = S diag(nu1,nu1,nu2,nu2)/2 S^T with S symplectic (rotations and a
// two-mode squeezer), so the symplectic eigenvalues of 2v are {nu1, nu2} >= 1.
inline Eigen::Matrix4d random_physical_covariance(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto rot = [](double th) {
        Eigen::Matrix2d r;
        r << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
        return r;
    };
    auto two_rot = [&](double th1, double th2) {
        Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
        s.topLeftCorner<2, 2>() = rot(th1);
        s.bottomRightCorner<2, 2>() = rot(th2);
        return s;
    };
    const double r = 1.5 * uni(rng);
    const double c = std::cosh(r), sh = std::sinh(r);
    Eigen::Matrix4d tms = Eigen::Matrix4d::Zero();
    tms(0, 0) = tms(1, 1) = tms(2, 2) = tms(3, 3) = c;
    tms(0, 2) = tms(2, 0) = sh;
    tms(1, 3) = tms(3, 1) = -sh;
    const Eigen::Matrix4d s = two_rot(6.2832 * uni(rng), 6.2832 * uni(rng)) * tms *
                              two_rot(6.2832 * uni(rng), 6.2832 * uni(rng));
    Eigen::Vector4d d;
    const double nu1 = 1.0 + 9.0 * uni(rng), nu2 = 1.0 + 9.0 * uni(rng);
    d << nu1, nu1, nu2, nu2;
    return 0.5 * s * d.asDiagonal() * s.transpose();
}

}  // namespace celsteer::test

#endif
