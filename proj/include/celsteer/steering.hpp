#ifndef CELSTEER_STEERING_HPP_
#define CELSTEER_STEERING_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "celsteer/dynamics.hpp"

namespace celsteer {

using Matrix4 = Eigen::Matrix<double, 4, 4>;
using Matrix2 = Eigen::Matrix<double, 2, 2>;

// Steering values below this are numerical zero (Lyapunov residuals are
// 1e-10 scale, so 1e-9 separates signal from solver noise).
inline constexpr double k_steering_tol = 1e-9;

// Two-mode mechanical covariance in the vacuum-variance-1/2 convention.
// Partitions: A = modes of m1, B = m2, C = cross block.
struct MechCovariance {
    Matrix4 v = Matrix4::Zero();

    Matrix2 block_a() const { return v.topLeftCorner<2, 2>(); }
    Matrix2 block_b() const { return v.bottomRightCorner<2, 2>(); }
    Matrix2 block_c() const { return v.topRightCorner<2, 2>(); }
};

enum class SteerDirection { m1_to_m2, m2_to_m1 };

enum class Regime { two_way, one_way_1to2, one_way_2to1, no_way };
std::string to_string(Regime r);

// Rows/columns 1-4 of the full 8x8 covariance.
MechCovariance mech_block(const Matrix8& full);

// Compact determinant form: max(0, 1/2 ln(det A / (4 det v))) for m1->m2,
// with A replaced by B for m2->m1.
double steering_det(const MechCovariance& v, SteerDirection dir);

// Same measure via the symplectic spectrum of the Schur complement of the
// steering party in sigma = 2v. Agrees with steering_det to 1e-9.
double steering_symplectic(const MechCovariance& v, SteerDirection dir);

// (E1 - E2) in units of hbar omega_m / 2, assuming equal mirror frequencies:
// (v11 + v22) - (v33 + v44).
double mech_energy_diff(const MechCovariance& v);

Regime classify(double g_1to2, double g_2to1);

struct SteeringResult {
    double g_1to2 = 0.0;
    double g_2to1 = 0.0;
    Regime regime = Regime::no_way;
    double energy_diff = 0.0;
};

SteeringResult analyze_steering(const MechCovariance& v);

// Symplectic eigenvalues of a 2n x 2n covariance in the vacuum-identity
// convention (pass sigma = 2 * covariance for the 1/2 convention).
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& sigma);

// Smallest symplectic eigenvalue of the partial transpose of 2v, from the
// standard two-mode invariants; < 1 iff the state is entangled (PPT).
double ppt_min_symplectic(const MechCovariance& v);

}  // namespace celsteer

#endif
