#include "celsteer/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "celsteer/errors.hpp"
#include "celsteer/gain.hpp"

namespace celsteer {

DriftMatrix build_drift(const SystemParams& params, const XiCoefficients& xi,
                        std::vector<std::string>* warnings) {
    params.validate(warnings);
    const double G1 = effective_coupling(params.cavity_1, params.mirror_1, xi, 1, warnings);
    const double G2 = effective_coupling(params.cavity_2, params.mirror_2, xi, 2, warnings);
    const double gm1 = params.mirror_1.gamma_m;
    const double gm2 = params.mirror_2.gamma_m;
    const double kbar1 = params.cavity_1.kappa - xi.xi11;
    const double kbar2 = params.cavity_2.kappa + xi.xi22;

    DriftMatrix d;
    Matrix8& k = d.k;
    k(0, 0) = k(1, 1) = -gm1;
    k(2, 2) = k(3, 3) = -gm2;
    k(4, 4) = k(5, 5) = -kbar1;
    k(6, 6) = k(7, 7) = -kbar2;
    k(0, 5) = -G1;
    k(1, 4) = G1;
    k(2, 7) = -G2;
    k(3, 6) = G2;
    k(4, 1) = -G1;
    k(5, 0) = G1;
    k(6, 3) = -G2;
    k(7, 2) = G2;
    k(4, 6) = xi.xi12;
    k(5, 7) = -xi.xi12;
    k(6, 4) = -xi.xi21;
    k(7, 5) = xi.xi21;
    return d;
}

DiffusionMatrix build_diffusion(const SystemParams& params, const XiCoefficients& xi) {
    params.validate(nullptr);
    const double n1 = params.mirror_1.bath_occupation();
    const double n2 = params.mirror_2.bath_occupation();
    const double gm1 = params.mirror_1.gamma_m;
    const double gm2 = params.mirror_2.gamma_m;

    DiffusionMatrix d;
    Matrix8& r = d.r;
    r(0, 0) = r(1, 1) = gm1 * (2.0 * n1 + 1.0);
    r(2, 2) = r(3, 3) = gm2 * (2.0 * n2 + 1.0);
    r(4, 4) = r(5, 5) = params.cavity_1.kappa + xi.xi11;
    r(6, 6) = r(7, 7) = params.cavity_2.kappa + xi.xi22;
    const double s = 0.5 * (xi.xi12 + xi.xi21);
    r(4, 6) = r(6, 4) = -s;
    r(5, 7) = r(7, 5) = s;

    Eigen::SelfAdjointEigenSolver<Matrix8> es(r, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("build_diffusion: eigensolver failed on R");
    const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
    d.min_eigenvalue = es.eigenvalues().minCoeff();
    d.positive_semidefinite = d.min_eigenvalue >= -1e-12 * norm;
    return d;
}

std::pair<double, bool> eigen_stability(const Eigen::MatrixXd& k) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(k, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw NumericalError("eigen_stability: eigensolver did not converge");
    const double max_re = es.eigenvalues().real().maxCoeff();
    return {max_re, max_re < 0.0};
}

std::vector<double> char_poly(const Eigen::MatrixXd& k) {
    const Eigen::Index n = k.rows();
    if (n != k.cols()) throw std::invalid_argument("char_poly: square matrix required");
    // M_i = K M_{i-1} + a_{i-1} I,  a_i = -tr(K M_i) / i.
    std::vector<double> a(static_cast<size_t>(n) + 1, 0.0);
    a[0] = 1.0;
    Eigen::MatrixXd mi = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 1; i <= n; ++i) {
        mi = (k * mi + a[static_cast<size_t>(i) - 1] * Eigen::MatrixXd::Identity(n, n)).eval();
        a[static_cast<size_t>(i)] = -(k * mi).trace() / static_cast<double>(i);
    }
    return a;
}

std::vector<double> hurwitz_determinants(const std::vector<double>& a) {
    if (a.empty() || a[0] != 1.0)
        throw std::invalid_argument("hurwitz_determinants: need a0..an with a0 = 1");
    const int n = static_cast<int>(a.size()) - 1;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const int idx = 2 * j - i;
            if (idx >= 0 && idx <= n) h(i - 1, j - 1) = a[static_cast<size_t>(idx)];
        }
    std::vector<double> lambda(static_cast<size_t>(n));
    for (int m = 1; m <= n; ++m)
        lambda[static_cast<size_t>(m) - 1] = h.topLeftCorner(m, m).determinant();
    return lambda;
}

namespace {

// Solves T y + y T^T = c for quasi-triangular T (real Schur form) by
// blockwise back-substitution over the 1x1/2x2 diagonal blocks.
Eigen::MatrixXd solve_quasi_triangular_lyapunov(const Eigen::MatrixXd& t,
                                                const Eigen::MatrixXd& c) {
    const Eigen::Index n = t.rows();
    // Diagonal block boundaries.
    std::vector<Eigen::Index> start;
    for (Eigen::Index i = 0; i < n;) {
        start.push_back(i);
        const bool two = (i + 1 < n) && (t(i + 1, i) != 0.0);
        i += two ? 2 : 1;
    }
    start.push_back(n);
    const int nb = static_cast<int>(start.size()) - 1;
    auto blk = [&](const Eigen::MatrixXd& m, int bi, int bj) {
        return m.block(start[static_cast<size_t>(bi)], start[static_cast<size_t>(bj)],
                       start[static_cast<size_t>(bi) + 1] - start[static_cast<size_t>(bi)],
                       start[static_cast<size_t>(bj) + 1] - start[static_cast<size_t>(bj)]);
    };

    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, n);
    for (int kb = nb - 1; kb >= 0; --kb) {
        for (int ib = nb - 1; ib >= 0; --ib) {
            Eigen::MatrixXd rhs = blk(c, ib, kb);
            for (int jb = ib + 1; jb < nb; ++jb)
                rhs -= blk(t, ib, jb) * blk(y, jb, kb);
            for (int jb = kb + 1; jb < nb; ++jb)
                rhs -= blk(y, ib, jb) * blk(t, kb, jb).transpose();
            const Eigen::MatrixXd tii = blk(t, ib, ib);
            const Eigen::MatrixXd tkk = blk(t, kb, kb);
            const Eigen::Index p = tii.rows(), q = tkk.rows();
            // Vectorized small system: (I_q (x) Tii + Tkk (x) I_p) vec(Y) = vec(rhs).
            Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(p * q, p * q);
            for (Eigen::Index col = 0; col < q; ++col)
                sys.block(col * p, col * p, p, p) = tii;
            for (Eigen::Index br = 0; br < q; ++br)
                for (Eigen::Index bc = 0; bc < q; ++bc)
                    sys.block(br * p, bc * p, p, p) +=
                        tkk(br, bc) * Eigen::MatrixXd::Identity(p, p);
            Eigen::VectorXd vec_rhs(p * q);
            for (Eigen::Index col = 0; col < q; ++col)
                vec_rhs.segment(col * p, p) = rhs.col(col);
            const Eigen::VectorXd sol = sys.fullPivLu().solve(vec_rhs);
            Eigen::MatrixXd yb(p, q);
            for (Eigen::Index col = 0; col < q; ++col)
                yb.col(col) = sol.segment(col * p, p);
            y.block(start[static_cast<size_t>(ib)], start[static_cast<size_t>(kb)], p, q) = yb;
        }
    }
    return y;
}

}  // namespace

double lyapunov_residual(const Eigen::MatrixXd& k, const Eigen::MatrixXd& v,
                         const Eigen::MatrixXd& r) {
    const double rn = r.norm();
    if (rn == 0.0) return (k * v + v * k.transpose()).norm();
    return (k * v + v * k.transpose() + r).norm() / rn;
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& k, const Eigen::MatrixXd& r) {
    if (k.rows() != k.cols() || r.rows() != r.cols() || k.rows() != r.rows())
        throw std::invalid_argument("solve_lyapunov: dimension mismatch");
    const auto [max_re, stable] = eigen_stability(k);
    if (!stable)
        throw UnstableSystemError("solve_lyapunov: drift is not Hurwitz (max Re eig = " +
                                  std::to_string(max_re) + "); no steady state exists");

    Eigen::RealSchur<Eigen::MatrixXd> schur(k);
    if (schur.info() != Eigen::Success)
        throw NumericalError("solve_lyapunov: real Schur decomposition failed");
    const Eigen::MatrixXd& u = schur.matrixU();
    const Eigen::MatrixXd& t = schur.matrixT();
    const Eigen::MatrixXd c = -u.transpose() * r * u;
    const Eigen::MatrixXd y = solve_quasi_triangular_lyapunov(t, c);
    Eigen::MatrixXd v = u * y * u.transpose();
    v = 0.5 * (v + v.transpose()).eval();

    if (lyapunov_residual(k, v, r) > 1e-10)
        throw NumericalError("solve_lyapunov: residual exceeds 1e-10 * ||R||_F");
    return v;
}

StabilityReport stability_report(const DriftMatrix& d) {
    StabilityReport rep;
    const auto [max_re, stable] = eigen_stability(d.k);
    rep.max_real_eig = max_re;
    rep.stable_by_eig = stable;
    rep.char_coeffs = char_poly(d.k);

    double omega0 = d.k.cwiseAbs().maxCoeff();
    if (omega0 == 0.0) omega0 = 1.0;
    rep.scale_omega0 = omega0;
    rep.hurwitz = hurwitz_determinants(char_poly(d.k / omega0));
    rep.stable_by_rh = true;
    for (double l : rep.hurwitz)
        if (!(l > 0.0)) rep.stable_by_rh = false;
    return rep;
}

}  // namespace celsteer
