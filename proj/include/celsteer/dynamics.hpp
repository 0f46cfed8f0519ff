#ifndef CELSTEER_DYNAMICS_HPP_
#define CELSTEER_DYNAMICS_HPP_

#include <Eigen/Dense>
#include <vector>

#include "celsteer/params.hpp"

namespace celsteer {

using Matrix8 = Eigen::Matrix<double, 8, 8>;

// Quadrature basis order throughout:
//   (dq_m1, dp_m1, dq_m2, dp_m2, dq_c1, dp_c1, dq_c2, dp_c2)

// Linearized drift kernel. Diagonal carries (-gamma_m1 x2, -gamma_m2 x2,
// -kbar1 x2, -kbar2 x2) with kbar_j = kappa_j + (-1)^j xi_jj.
struct DriftMatrix {
    Matrix8 k = Matrix8::Zero();
};

struct DiffusionMatrix {
    Matrix8 r = Matrix8::Zero();
    double min_eigenvalue = 0.0;
    // False when r has an eigenvalue < -1e-12 * ||r||; the Lyapunov solve still
    // proceeds, but the white-noise interpretation (and the MC oracle) breaks.
    bool positive_semidefinite = true;
};

DriftMatrix build_drift(const SystemParams& params, const XiCoefficients& xi,
                        std::vector<std::string>* warnings = nullptr);
DiffusionMatrix build_diffusion(const SystemParams& params, const XiCoefficients& xi);

// Max real part over the eigenvalues of k, and strict-negativity verdict.
std::pair<double, bool> eigen_stability(const Eigen::MatrixXd& k);

// det(chi I - K) coefficients a0..an (a0 = 1), by the Faddeev-LeVerrier
// trace recursion; no eigendecomposition involved.
std::vector<double> char_poly(const Eigen::MatrixXd& k);

// Leading principal minors Lambda_1..Lambda_n of the Hurwitz matrix
// H(i,j) = a_{2j-i} (1-based, absent coefficients zero). Input a0..an, a0 = 1.
std::vector<double> hurwitz_determinants(const std::vector<double>& a);

// Steady-state covariance: solves K V + V K^T = -R by Bartels-Stewart
// (real Schur of K, blockwise back-substitution). Requires K Hurwitz;
// result is symmetrized and residual-checked against 1e-10 ||R||_F.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& k, const Eigen::MatrixXd& r);

// Relative residual ||K V + V K^T + R||_F / ||R||_F.
double lyapunov_residual(const Eigen::MatrixXd& k, const Eigen::MatrixXd& v,
                         const Eigen::MatrixXd& r);

struct StabilityReport {
    double max_real_eig = 0.0;               // rad/s
    std::vector<double> char_coeffs;         // a0..a8, natural units
    std::vector<double> hurwitz;             // Lambda_1..Lambda_8 of K/omega0
    double scale_omega0 = 1.0;               // normalization used for hurwitz
    bool stable_by_eig = false;
    bool stable_by_rh = false;
};

// Both stability routes on one drift matrix. The Hurwitz cascade is evaluated
// on K/omega0 (omega0 = max |K_ij|) so Lambda_7, Lambda_8 stay inside double
// range at rad/s magnitudes; the signs, and hence the verdict, are invariant.
StabilityReport stability_report(const DriftMatrix& k);

}  // namespace celsteer

#endif
