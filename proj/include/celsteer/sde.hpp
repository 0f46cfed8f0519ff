#ifndef CELSTEER_SDE_HPP_
#define CELSTEER_SDE_HPP_

#include <Eigen/Dense>
#include <cstdint>

namespace celsteer {

struct OracleConfig {
    double dt = 0.0;                 // s; dt * max|eig(K)| < 0.1 required
    long n_steps = 200000;           // per trajectory
    int n_trajectories = 200;        // >= 100
    double burn_in_fraction = 0.5;   // in (0,1)
    std::uint64_t seed = 1;
};

// dt = 0.05 / max|eig(K)|; step/trajectory budget left at the defaults.
OracleConfig default_oracle_config(const Eigen::MatrixXd& k, std::uint64_t seed);

// Symmetric PSD square root B of R (eigen-decomposition, negative eigenvalues
// within -1e-12*||R|| clipped to zero), so B B^T = R to 1e-10 relative.
Eigen::MatrixXd noise_factor(const Eigen::MatrixXd& r);

struct CovarianceEstimate {
    Eigen::MatrixXd estimate;  // symmetric, time-and-ensemble average
    double std_error = 0.0;    // bootstrap SE of the Frobenius deviation
};

// Euler-Maruyama ensemble for dX = K X dt + B dW from X(0) = 0.
// Deterministic for a fixed seed regardless of worker count: trajectory
// substreams derive from (seed, index) and reduction is in index order.
CovarianceEstimate simulate_covariance(const Eigen::MatrixXd& k, const Eigen::MatrixXd& b,
                                       const OracleConfig& cfg, int workers = 1);

}  // namespace celsteer

#endif
