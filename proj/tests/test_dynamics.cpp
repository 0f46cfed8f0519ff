#include <doctest.h>

#include <random>

#include "celsteer/config.hpp"
#include "celsteer/constants.hpp"
#include "celsteer/errors.hpp"
#include "celsteer/gain.hpp"
#include "celsteer/dynamics.hpp"
#include "support/oracles.hpp"

using namespace celsteer;

namespace {
SystemParams section4(double om_over_gamma = 6.0) {
    SystemParams p = default_params();
    p.gain.drive_strength_Omega = om_over_gamma * p.gain.atomic_decay_gamma;
    return p;
}
}  // namespace

TEST_CASE("drift matrix has the exact sparsity and values") {
    SystemParams p = section4(6.0);
    const XiCoefficients xi = compute_xi(p.gain);
    const Matrix8 k = build_drift(p, xi).k;

    const double G1 = 0.25 * p.mirror_1.omega_m;
    const double G2 = 0.25 * p.mirror_2.omega_m;
    const double kbar1 = p.cavity_1.kappa - xi.xi11;
    const double kbar2 = p.cavity_2.kappa + xi.xi22;

    // Diagonal: damping rates, with the gain narrowing cavity 1.
    CHECK(k(0, 0) == -p.mirror_1.gamma_m);
    CHECK(k(1, 1) == -p.mirror_1.gamma_m);
    CHECK(k(2, 2) == -p.mirror_2.gamma_m);
    CHECK(k(3, 3) == -p.mirror_2.gamma_m);
    CHECK(k(4, 4) == -kbar1);
    CHECK(k(5, 5) == -kbar1);
    CHECK(k(6, 6) == -kbar2);
    CHECK(k(7, 7) == -kbar2);
    // Couplings (matrix rows/columns 0-based).
    CHECK(k(0, 5) == -G1);
    CHECK(k(1, 4) == G1);
    CHECK(k(2, 7) == -G2);
    CHECK(k(3, 6) == G2);
    CHECK(k(4, 1) == -G1);
    CHECK(k(5, 0) == G1);
    CHECK(k(6, 3) == -G2);
    CHECK(k(7, 2) == G2);
    CHECK(k(4, 6) == xi.xi12);
    CHECK(k(5, 7) == -xi.xi12);
    CHECK(k(6, 4) == -xi.xi21);
    CHECK(k(7, 5) == xi.xi21);
    // Exactly 20 nonzero entries at generic parameters.
    int nonzero = 0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) nonzero += (k(i, j) != 0.0);
    CHECK(nonzero == 20);
}

TEST_CASE("drift with all couplings off is pure damping") {
    SystemParams p = section4(0.0);  // Omega = 0 kills xi12, xi21 (and xi11)
    p.cavity_1.g_over_wm = 0.0;
    p.cavity_2.g_over_wm = 0.0;
    const XiCoefficients xi = compute_xi(p.gain);
    const Matrix8 k = build_drift(p, xi).k;
    Matrix8 expect = Matrix8::Zero();
    expect.diagonal() << -p.mirror_1.gamma_m, -p.mirror_1.gamma_m, -p.mirror_2.gamma_m,
        -p.mirror_2.gamma_m, -p.cavity_1.kappa, -p.cavity_1.kappa,
        -(p.cavity_2.kappa + xi.xi22), -(p.cavity_2.kappa + xi.xi22);
    CHECK((k - expect).norm() == 0.0);
}

TEST_CASE("diffusion matrix layout") {
    SystemParams p = section4(6.0);
    const XiCoefficients xi = compute_xi(p.gain);
    const DiffusionMatrix d = build_diffusion(p, xi);
    const Matrix8& r = d.r;
    CHECK(r(0, 0) == p.mirror_1.gamma_m * 31.0);  // n = 15
    CHECK(r(1, 1) == p.mirror_1.gamma_m * 31.0);
    CHECK(r(2, 2) == p.mirror_2.gamma_m * 11.0);  // n = 5
    CHECK(r(4, 4) == p.cavity_1.kappa + xi.xi11);
    CHECK(r(6, 6) == p.cavity_2.kappa + xi.xi22);
    const double s = 0.5 * (xi.xi12 + xi.xi21);
    CHECK(r(4, 6) == -s);
    CHECK(r(6, 4) == -s);
    CHECK(r(5, 7) == s);
    CHECK(r(7, 5) == s);
    CHECK((r - r.transpose()).norm() == 0.0);
}

TEST_CASE("diffusion with vacuum baths and no gain is diagonal") {
    SystemParams p = section4(0.0);
    p.gain.linear_gain_A = 0.0;
    p.mirror_1.n_th = 0.0;
    p.mirror_2.n_th = 0.0;
    const XiCoefficients xi = compute_xi(p.gain);
    const DiffusionMatrix d = build_diffusion(p, xi);
    Matrix8 expect = Matrix8::Zero();
    expect.diagonal() << p.mirror_1.gamma_m, p.mirror_1.gamma_m, p.mirror_2.gamma_m,
        p.mirror_2.gamma_m, p.cavity_1.kappa, p.cavity_1.kappa, p.cavity_2.kappa,
        p.cavity_2.kappa;
    CHECK((d.r - expect).norm() == 0.0);
    CHECK(d.positive_semidefinite);
}

TEST_CASE("eigen stability") {
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(8, 8);
    k.diagonal() << -1, -2, -3, -4, -5, -6, -7, -8;
    const auto [max_re, stable] = eigen_stability(k);
    CHECK(max_re == doctest::Approx(-1.0));
    CHECK(stable);

    // Gain beyond loss with no couplings shows up directly on the diagonal.
    SystemParams p = section4(1.5);
    p.gain.linear_gain_A = 100.0 * p.cavity_1.kappa;
    p.cavity_1.g_over_wm = 0.0;
    p.cavity_2.g_over_wm = 0.0;
    XiCoefficients xi = compute_xi(p.gain);
    xi.xi12 = xi.xi21 = 0.0;  // isolate the kbar1 < 0 channel
    REQUIRE(xi.xi11 > p.cavity_1.kappa);
    const auto [mre2, stable2] = eigen_stability(build_drift(p, xi).k);
    CHECK(!stable2);
    CHECK(mre2 == doctest::Approx(xi.xi11 - p.cavity_1.kappa).epsilon(1e-12));
}

TEST_CASE("char_poly on the 2x2 reduction") {
    Eigen::MatrixXd k(2, 2);
    k << -1, 0, 0, -2;
    const auto a = char_poly(k);
    REQUIRE(a.size() == 3);
    CHECK(a[0] == 1.0);
    CHECK(a[1] == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(a[2] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("char_poly a1 equals minus trace for the full 8x8") {
    SystemParams p = section4(4.0);
    const XiCoefficients xi = compute_xi(p.gain);
    const Matrix8 k = build_drift(p, xi).k;
    const auto a = char_poly(k);
    REQUIRE(a.size() == 9);
    const double expect = 2 * p.mirror_1.gamma_m + 2 * p.mirror_2.gamma_m +
                          2 * (p.cavity_1.kappa - xi.xi11) + 2 * (p.cavity_2.kappa + xi.xi22);
    CHECK(a[1] == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("char_poly roots match eigenvalues on random stable systems") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        const auto [k, r] = test::random_stable_system(rng);
        const auto a = char_poly(k);
        // Evaluate det(chi I - K) at each eigenvalue of K: must vanish
        // relative to the polynomial's scale.
        const Eigen::VectorXcd eig = k.eigenvalues();
        for (int i = 0; i < eig.size(); ++i) {
            std::complex<double> val = 0.0;
            double scale = 0.0;
            for (int d = 8; d >= 0; --d) {
                val += a[static_cast<size_t>(8 - d)] * std::pow(eig(i), d);
                scale += std::abs(a[static_cast<size_t>(8 - d)]) * std::pow(std::abs(eig(i)), d);
            }
            CHECK(std::abs(val) <= 1e-8 * scale);
        }
    }
}

TEST_CASE("hurwitz determinants") {
    SUBCASE("stable quadratic (roots -1, -2)") {
        const auto l = hurwitz_determinants({1.0, 3.0, 2.0});
        REQUIRE(l.size() == 2);
        CHECK(l[0] == doctest::Approx(3.0));
        CHECK(l[1] == doctest::Approx(6.0));
    }
    SUBCASE("marginal oscillator (roots +-i)") {
        const auto l = hurwitz_determinants({1.0, 0.0, 1.0});
        CHECK(l[0] == 0.0);
    }
    SUBCASE("requires a0 = 1") {
        CHECK_THROWS_AS(hurwitz_determinants({2.0, 1.0}), std::invalid_argument);
    }
}

TEST_CASE("verdicts agree between eigenvalues and Routh-Hurwitz") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Eigen::MatrixXd m(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) m(i, j) = gauss(rng);
        DriftMatrix d;
        d.k = m;
        const StabilityReport rep = stability_report(d);
        // Skip the numerical boundary band.
        double lmin_scale = 0.0;
        for (double l : rep.hurwitz) lmin_scale = std::max(lmin_scale, std::abs(l));
        double lmin = rep.hurwitz[0];
        for (double l : rep.hurwitz) lmin = std::min(lmin, l);
        if (std::abs(lmin) < 1e-6 * std::max(1.0, lmin_scale)) continue;
        if (std::abs(rep.max_real_eig) < 1e-9) continue;
        CHECK(rep.stable_by_eig == rep.stable_by_rh);
        ++checked;
    }
    CHECK(checked > 150);
}

TEST_CASE("solve_lyapunov scalar drift") {
    const double a = 3.0;
    Eigen::MatrixXd k = -a * Eigen::MatrixXd::Identity(8, 8);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd b(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) b(i, j) = gauss(rng);
    const Eigen::MatrixXd r = b * b.transpose();
    const Eigen::MatrixXd v = solve_lyapunov(k, r);
    CHECK((v - r / (2.0 * a)).norm() <= 1e-12 * r.norm());
}

TEST_CASE("solve_lyapunov 2x2 against the frozen Kronecker value") {
    Eigen::MatrixXd k(2, 2), r(2, 2);
    k << -1.0, 0.5, 0.0, -2.0;
    r = Eigen::MatrixXd::Identity(2, 2);
    const Eigen::MatrixXd v = solve_lyapunov(k, r);
    // Hand/Kronecker solution: [[25/48, 1/24], [1/24, 1/4]].
    CHECK(v(0, 0) == doctest::Approx(25.0 / 48.0).epsilon(1e-12));
    CHECK(v(0, 1) == doctest::Approx(1.0 / 24.0).epsilon(1e-12));
    CHECK(v(1, 0) == doctest::Approx(1.0 / 24.0).epsilon(1e-12));
    CHECK(v(1, 1) == doctest::Approx(0.25).epsilon(1e-12));
    const Eigen::MatrixXd oracle = test::kronecker_lyapunov(k, r);
    CHECK((v - oracle).norm() <= 1e-12 * oracle.norm());
}

TEST_CASE("solve_lyapunov matches the Kronecker oracle on random stable systems") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const auto [k, r] = test::random_stable_system(rng);
        const Eigen::MatrixXd v = solve_lyapunov(k, r);
        const Eigen::MatrixXd oracle = test::kronecker_lyapunov(k, r);
        CHECK((v - oracle).norm() <= 1e-10 * oracle.norm());
        CHECK(lyapunov_residual(k, v, r) <= 1e-10);
        CHECK((v - v.transpose()).norm() == 0.0);
        // PSD within tolerance.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v);
        CHECK(es.eigenvalues().minCoeff() >= -1e-10 * v.trace());
    }
}

TEST_CASE("solve_lyapunov refuses unstable drift distinctly") {
    Eigen::MatrixXd k(2, 2);
    k << 0.5, 0.0, 0.0, -1.0;
    CHECK_THROWS_AS(solve_lyapunov(k, Eigen::MatrixXd::Identity(2, 2)), UnstableSystemError);
}

TEST_CASE("decoupled mirror reaches thermal equilibrium") {
    SystemParams p = section4(0.0);
    p.cavity_1.g_over_wm = 0.0;
    p.cavity_2.g_over_wm = 0.0;
    const XiCoefficients xi = compute_xi(p.gain);
    const Matrix8 k = build_drift(p, xi).k;
    const Matrix8 r = build_diffusion(p, xi).r;
    const Eigen::MatrixXd v = solve_lyapunov(k, r);
    CHECK(v(0, 0) == doctest::Approx(15.5).epsilon(1e-12));
    CHECK(v(1, 1) == doctest::Approx(15.5).epsilon(1e-12));
    CHECK(v(2, 2) == doctest::Approx(5.5).epsilon(1e-12));
    CHECK(v(3, 3) == doctest::Approx(5.5).epsilon(1e-12));
    CHECK(std::abs(v(0, 1)) < 1e-12);
    CHECK(std::abs(v(0, 2)) < 1e-12);
}
