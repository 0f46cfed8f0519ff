#include "celsteer/sde.hpp"

#include <Eigen/Eigenvalues>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "celsteer/constants.hpp"
#include "celsteer/dynamics.hpp"
#include "celsteer/errors.hpp"

namespace celsteer {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ splitmix64(index + 1));
}

// Box-Muller on explicit 53-bit uniforms: identical output on every
// standard library, unlike std::normal_distribution.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1p-53;  // (0,1]
        const double u2 = static_cast<double>(rng_() >> 11) * 0x1p-53;          // [0,1)
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = k_two_pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace

OracleConfig default_oracle_config(const Eigen::MatrixXd& k, std::uint64_t seed) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(k, false);
    if (es.info() != Eigen::Success)
        throw NumericalError("default_oracle_config: eigensolver failed");
    const double wmax = es.eigenvalues().cwiseAbs().maxCoeff();
    OracleConfig cfg;
    cfg.dt = (wmax > 0.0) ? 0.05 / wmax : 1.0;
    cfg.seed = seed;
    return cfg;
}

Eigen::MatrixXd noise_factor(const Eigen::MatrixXd& r) {
    if (r.rows() != r.cols()) throw std::invalid_argument("noise_factor: square matrix required");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);
    if (es.info() != Eigen::Success)
        throw NumericalError("noise_factor: eigensolver failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double norm = ev.cwiseAbs().maxCoeff();
    Eigen::VectorXd clipped = ev;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -1e-12 * norm)
            throw NotPositiveSemidefiniteError(
                "noise_factor: R has eigenvalue " + std::to_string(ev(i)) +
                " below clip tolerance; white-noise factorization unavailable");
        clipped(i) = std::max(ev(i), 0.0);
    }
    const Eigen::MatrixXd b =
        es.eigenvectors() * clipped.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
    if ((b * b.transpose() - r).norm() > 1e-10 * r.norm())
        throw NumericalError("noise_factor: reconstruction B B^T deviates from R");
    return b;
}

CovarianceEstimate simulate_covariance(const Eigen::MatrixXd& k, const Eigen::MatrixXd& b,
                                       const OracleConfig& cfg, int workers) {
    const Eigen::Index n = k.rows();
    if (k.cols() != n || b.rows() != n || b.cols() != n)
        throw std::invalid_argument("simulate_covariance: dimension mismatch");
    if (!(cfg.burn_in_fraction > 0.0 && cfg.burn_in_fraction < 1.0))
        throw std::invalid_argument("simulate_covariance: burn_in_fraction must be in (0,1)");
    if (cfg.n_trajectories < 100)
        throw std::invalid_argument("simulate_covariance: need at least 100 trajectories");
    {
        Eigen::EigenSolver<Eigen::MatrixXd> es(k, false);
        if (es.info() != Eigen::Success)
            throw NumericalError("simulate_covariance: eigensolver failed");
        if (es.eigenvalues().real().maxCoeff() >= 0.0)
            throw UnstableSystemError("simulate_covariance: drift is not Hurwitz");
        if (cfg.dt * es.eigenvalues().cwiseAbs().maxCoeff() >= 0.1)
            throw std::invalid_argument(
                "simulate_covariance: dt * max|eig(K)| must stay below 0.1");
    }

    const long burn = static_cast<long>(cfg.burn_in_fraction * static_cast<double>(cfg.n_steps));
    const long kept = cfg.n_steps - burn;
    if (kept <= 0) throw std::invalid_argument("simulate_covariance: no steps left after burn-in");
    const double blowup = 1e6 * b.norm() * std::sqrt(cfg.dt);
    const double sqrt_dt = std::sqrt(cfg.dt);

    std::vector<Eigen::MatrixXd> traj_mean(
        static_cast<size_t>(cfg.n_trajectories), Eigen::MatrixXd::Zero(n, n));
    std::atomic<int> next{0};
    std::atomic<bool> blew_up{false};

    auto run_one = [&](int idx) {
        GaussianStream gauss(substream_seed(cfg.seed, static_cast<std::uint64_t>(idx)));
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd xi(n);
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
        for (long step = 0; step < cfg.n_steps; ++step) {
            for (Eigen::Index i = 0; i < n; ++i) xi(i) = gauss.next();
            x += cfg.dt * (k * x) + sqrt_dt * (b * xi);
            if (step >= burn) acc.noalias() += x * x.transpose();
            if (x.norm() > blowup) {
                blew_up = true;
                return;
            }
        }
        traj_mean[static_cast<size_t>(idx)] = acc / static_cast<double>(kept);
    };

    workers = std::max(1, std::min(workers, cfg.n_trajectories));
    if (workers == 1) {
        for (int i = 0; i < cfg.n_trajectories && !blew_up; ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const int idx = next.fetch_add(1);
                    if (idx >= cfg.n_trajectories || blew_up) return;
                    run_one(idx);
                }
            });
        for (auto& t : pool) t.join();
    }
    if (blew_up)
        throw NumericalError(
            "simulate_covariance: trajectory norm exceeded 1e6 x initial-noise scale; "
            "check stability and dt");

    // Index-ordered reduction keeps the result independent of scheduling.
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(n, n);
    for (const auto& m : traj_mean) mean += m;
    mean /= static_cast<double>(cfg.n_trajectories);
    mean = 0.5 * (mean + mean.transpose()).eval();

    // Bootstrap over trajectory means.
    constexpr int k_resamples = 200;
    std::mt19937_64 boot_rng(substream_seed(cfg.seed, 0xb007ULL + static_cast<std::uint64_t>(cfg.n_trajectories)));
    double sq_sum = 0.0;
    for (int rsp = 0; rsp < k_resamples; ++rsp) {
        Eigen::MatrixXd resampled = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < cfg.n_trajectories; ++i) {
            const auto pick = static_cast<size_t>(
                boot_rng() % static_cast<std::uint64_t>(cfg.n_trajectories));
            resampled += traj_mean[pick];
        }
        resampled /= static_cast<double>(cfg.n_trajectories);
        const double dev = (resampled - mean).norm();
        sq_sum += dev * dev;
    }

    CovarianceEstimate out;
    out.estimate = mean;
    out.std_error = std::sqrt(sq_sum / k_resamples);
    return out;
}

}  // namespace celsteer
