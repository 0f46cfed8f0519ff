#include "celsteer/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

#include "celsteer/constants.hpp"
#include "celsteer/errors.hpp"
#include "celsteer/gain.hpp"

namespace celsteer {

SweepPath sweep_path_from_string(const std::string& s) {
    if (s == "gain.omega_over_gamma") return SweepPath::omega_over_gamma;
    if (s == "mirror_1.n_th") return SweepPath::n_th_1;
    if (s == "mirror_2.n_th") return SweepPath::n_th_2;
    if (s == "common.n_th") return SweepPath::n_th_common;
    if (s == "cavity_1.g_over_wm") return SweepPath::g1_over_wm;
    if (s == "cavity_2.g_over_wm") return SweepPath::g2_over_wm;
    if (s == "common.g_over_wm") return SweepPath::g_over_wm_common;
    throw ConfigError("unknown sweep parameter '" + s + "'");
}

std::string to_string(SweepPath p) {
    switch (p) {
        case SweepPath::omega_over_gamma: return "gain.omega_over_gamma";
        case SweepPath::n_th_1: return "mirror_1.n_th";
        case SweepPath::n_th_2: return "mirror_2.n_th";
        case SweepPath::n_th_common: return "common.n_th";
        case SweepPath::g1_over_wm: return "cavity_1.g_over_wm";
        case SweepPath::g2_over_wm: return "cavity_2.g_over_wm";
        case SweepPath::g_over_wm_common: return "common.g_over_wm";
    }
    return "?";
}

OutputField output_field_from_string(const std::string& s) {
    if (s == "steering_1to2") return OutputField::steering_1to2;
    if (s == "steering_2to1") return OutputField::steering_2to1;
    if (s == "regime") return OutputField::regime;
    if (s == "energy_diff") return OutputField::energy_diff;
    if (s == "max_real_eig") return OutputField::max_real_eig;
    if (s == "hurwitz_min") return OutputField::hurwitz_min;
    if (s == "lyapunov_residual") return OutputField::lyapunov_residual;
    throw ConfigError("unknown output field '" + s + "'");
}

void SweepAxis::validate(const std::string& key) const {
    if (n_points < 2) throw ConfigError(key + ".n_points: must be >= 2");
    if (!(min < max)) throw ConfigError(key + ": min must be < max");
    if (log_scale && !(min > 0.0)) throw ConfigError(key + ": log scale needs min > 0");
}

double SweepAxis::value_at(int i) const {
    const double t = static_cast<double>(i) / (n_points - 1);
    if (log_scale) return min * std::pow(max / min, t);
    return min + (max - min) * t;
}

void apply_axis(SystemParams& params, SweepPath path, double value) {
    switch (path) {
        case SweepPath::omega_over_gamma:
            params.gain.drive_strength_Omega = value * params.gain.atomic_decay_gamma;
            return;
        case SweepPath::n_th_1:
            params.mirror_1.n_th = value;
            params.mirror_1.temperature_k.reset();
            return;
        case SweepPath::n_th_2:
            params.mirror_2.n_th = value;
            params.mirror_2.temperature_k.reset();
            return;
        case SweepPath::n_th_common:
            params.mirror_1.n_th = value;
            params.mirror_2.n_th = value;
            params.mirror_1.temperature_k.reset();
            params.mirror_2.temperature_k.reset();
            return;
        case SweepPath::g1_over_wm:
            params.cavity_1.g_over_wm = value;
            params.cavity_1.drive.reset();
            return;
        case SweepPath::g2_over_wm:
            params.cavity_2.g_over_wm = value;
            params.cavity_2.drive.reset();
            return;
        case SweepPath::g_over_wm_common:
            params.cavity_1.g_over_wm = value;
            params.cavity_2.g_over_wm = value;
            params.cavity_1.drive.reset();
            params.cavity_2.drive.reset();
            return;
    }
    throw std::logic_error("apply_axis: unhandled path");
}

std::string to_string(PointStatus s) {
    switch (s) {
        case PointStatus::ok: return "ok";
        case PointStatus::unstable: return "unstable";
        case PointStatus::marginal: return "marginal";
        case PointStatus::r_not_psd: return "r_not_psd";
    }
    return "?";
}

PointResult run_point(const SystemParams& params, std::vector<std::string>* warnings) {
    PointResult out;
    const XiCoefficients xi = compute_xi(params.gain);
    const DriftMatrix drift = build_drift(params, xi, warnings);
    const DiffusionMatrix diffusion = build_diffusion(params, xi);
    out.drift = drift.k;
    out.diffusion = diffusion.r;
    out.stability = stability_report(drift);
    out.hurwitz_min = out.stability.hurwitz[0];
    for (double l : out.stability.hurwitz) out.hurwitz_min = std::min(out.hurwitz_min, l);

    const double omega_scale = std::max(params.mirror_1.omega_m, params.mirror_2.omega_m);
    if (!out.stability.stable_by_eig) {
        out.status = PointStatus::unstable;
        return out;
    }
    if (out.stability.max_real_eig > -1e-9 * omega_scale) {
        out.status = PointStatus::marginal;
        return out;
    }
    if (!diffusion.positive_semidefinite && warnings)
        warnings->push_back("diffusion matrix not PSD (min eigenvalue " +
                            std::to_string(diffusion.min_eigenvalue) +
                            "); Lyapunov solve proceeds, steering withheld");

    const Eigen::MatrixXd v = solve_lyapunov(drift.k, diffusion.r);
    out.lyap_residual = lyapunov_residual(drift.k, v, diffusion.r);
    out.has_solution = true;
    out.mech = mech_block(Matrix8(v));

    if (!diffusion.positive_semidefinite) {
        out.status = PointStatus::r_not_psd;
        return out;
    }

    out.status = PointStatus::ok;
    out.steering = analyze_steering(out.mech);
    // Cross-check the symplectic route against the determinant route.
    const double s12 = steering_symplectic(out.mech, SteerDirection::m1_to_m2);
    const double s21 = steering_symplectic(out.mech, SteerDirection::m2_to_m1);
    if (std::abs(s12 - out.steering.g_1to2) > 1e-9 || std::abs(s21 - out.steering.g_2to1) > 1e-9)
        throw NumericalError("run_point: steering_det and steering_symplectic disagree");
    out.has_steering = true;

    const double w1 = params.mirror_1.omega_m, w2 = params.mirror_2.omega_m;
    if (std::abs(w1 - w2) > 1e-12 * std::max(w1, w2)) {
        out.energy_absolute = true;
        const auto& m = out.mech.v;
        out.steering.energy_diff = 0.5 * k_hbar * (w1 * (m(0, 0) + m(1, 1)) - w2 * (m(2, 2) + m(3, 3)));
    }
    return out;
}

std::string format_csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

namespace {

const char* k_fixed_columns =
    "stable,status,steering_1to2,steering_2to1,regime,energy_diff,max_real_eig,"
    "hurwitz_min,lyapunov_residual";

std::string row_fields(const PointResult& p, const SweepSpec& spec) {
    std::string s;
    s += p.stability.stable_by_eig ? "1" : "0";
    s += ",";
    s += to_string(p.status);
    const bool ok = p.status == PointStatus::ok;
    auto col = [&](OutputField f, bool available, double value) {
        s += ",";
        if (spec.wants(f) && available) s += format_csv_number(value);
    };
    col(OutputField::steering_1to2, ok, p.steering.g_1to2);
    col(OutputField::steering_2to1, ok, p.steering.g_2to1);
    s += ",";
    if (spec.wants(OutputField::regime) && ok) s += to_string(p.steering.regime);
    col(OutputField::energy_diff, ok, p.steering.energy_diff);
    col(OutputField::max_real_eig, true, p.stability.max_real_eig);
    col(OutputField::hurwitz_min, true, p.hurwitz_min);
    col(OutputField::lyapunov_residual, p.has_solution, p.lyap_residual);
    return s;
}

void write_meta(std::ostream& os, const SystemParams& base, const SweepSpec& spec,
                bool with_axes) {
    os << "# celsteer\n";
    if (with_axes) {
        os << "# axis1: " << to_string(spec.axis1.path) << " "
           << (spec.axis1.log_scale ? "log" : "linear") << " ["
           << format_csv_number(spec.axis1.min) << "," << format_csv_number(spec.axis1.max)
           << "] n=" << spec.axis1.n_points << "\n";
        if (spec.axis2)
            os << "# axis2: " << to_string(spec.axis2->path) << " "
               << (spec.axis2->log_scale ? "log" : "linear") << " ["
               << format_csv_number(spec.axis2->min) << "," << format_csv_number(spec.axis2->max)
               << "] n=" << spec.axis2->n_points << "\n";
    }
    os << "# gain: A=" << format_csv_number(base.gain.linear_gain_A)
       << " gamma=" << format_csv_number(base.gain.atomic_decay_gamma)
       << " Omega=" << format_csv_number(base.gain.drive_strength_Omega) << " rad/s\n";
    os << "# cavities: kappa=" << format_csv_number(base.cavity_1.kappa) << ","
       << format_csv_number(base.cavity_2.kappa) << " rad/s\n";
    os << "# mirrors: omega_m=" << format_csv_number(base.mirror_1.omega_m) << ","
       << format_csv_number(base.mirror_2.omega_m)
       << " gamma_m=" << format_csv_number(base.mirror_1.gamma_m) << ","
       << format_csv_number(base.mirror_2.gamma_m) << " rad/s\n";
    const double w1 = base.mirror_1.omega_m, w2 = base.mirror_2.omega_m;
    if (std::abs(w1 - w2) > 1e-12 * std::max(w1, w2))
        os << "# energy_diff: absolute units (J); mirror frequencies differ\n";
    else
        os << "# energy_diff: units of hbar*omega_m/2\n";
}

struct GridIndex {
    int n1 = 1, n2 = 1;
    int total() const { return n1 * n2; }
};

// Deterministic parallel map over the grid: results land in a preallocated
// vector by index, then stream in row-major order. A throwing point becomes
// an error row (via on_error) and the sweep continues.
template <typename RowFn, typename ErrFn>
std::vector<std::string> run_grid(const SystemParams& base, const SweepSpec& spec,
                                  int workers, RowFn make_row, ErrFn on_error,
                                  SweepReport& report,
                                  std::vector<std::string>* warnings) {
    GridIndex g;
    g.n1 = spec.axis1.n_points;
    if (spec.axis2) g.n2 = spec.axis2->n_points;
    std::vector<std::string> rows(static_cast<size_t>(g.total()));
    std::atomic<int> next{0};
    std::atomic<long> errors{0};
    std::mutex warn_mutex;
    std::vector<std::string> error_notes;

    auto work = [&] {
        for (;;) {
            const int idx = next.fetch_add(1);
            if (idx >= g.total()) return;
            const int i = idx / g.n2;
            const int j = idx % g.n2;
            SystemParams p = base;
            const double v1 = spec.axis1.value_at(i);
            apply_axis(p, spec.axis1.path, v1);
            double v2 = 0.0;
            if (spec.axis2) {
                v2 = spec.axis2->value_at(j);
                apply_axis(p, spec.axis2->path, v2);
            }
            try {
                rows[static_cast<size_t>(idx)] = make_row(p, v1, v2);
            } catch (const std::exception& e) {
                rows[static_cast<size_t>(idx)] = on_error(v1, v2);
                errors.fetch_add(1);
                std::string where = to_string(spec.axis1.path) + "=" + format_csv_number(v1);
                if (spec.axis2)
                    where += "," + to_string(spec.axis2->path) + "=" + format_csv_number(v2);
                std::lock_guard<std::mutex> lock(warn_mutex);
                error_notes.push_back("point error at " + where + ": " + e.what());
            }
        }
    };

    workers = std::max(1, workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    report.rows = g.total();
    report.point_errors = errors.load();
    if (warnings) {
        std::sort(error_notes.begin(), error_notes.end());
        warnings->insert(warnings->end(), error_notes.begin(), error_notes.end());
    }
    return rows;
}

}  // namespace

void write_point_csv(std::ostream& os, const SystemParams& params, const SweepSpec& spec,
                     std::vector<std::string>* warnings) {
    write_meta(os, params, spec, /*with_axes=*/false);
    os << k_fixed_columns << "\n";
    const PointResult p = run_point(params, warnings);
    os << row_fields(p, spec) << "\n";
}

SweepReport write_sweep_csv(std::ostream& os, const SystemParams& base, const SweepSpec& spec,
                            int workers, std::vector<std::string>* warnings) {
    spec.axis1.validate("sweep.axis1");
    if (spec.axis2) spec.axis2->validate("sweep.axis2");
    if (warnings) base.validate(warnings);
    write_meta(os, base, spec, /*with_axes=*/true);
    os << to_string(spec.axis1.path);
    if (spec.axis2) os << "," << to_string(spec.axis2->path);
    os << "," << k_fixed_columns << "\n";

    SweepReport report;
    auto rows = run_grid(
        base, spec, workers,
        [&spec](const SystemParams& p, double v1, double v2) {
            const PointResult r = run_point(p, nullptr);
            std::string line = format_csv_number(v1);
            if (spec.axis2) line += "," + format_csv_number(v2);
            return line + "," + row_fields(r, spec);
        },
        [&spec](double v1, double v2) {
            std::string line = format_csv_number(v1);
            if (spec.axis2) line += "," + format_csv_number(v2);
            return line + ",,error,,,,,,,";  // empty stable flag and outputs
        },
        report, warnings);
    for (const auto& r : rows) os << r << "\n";
    return report;
}

SweepReport write_stability_csv(std::ostream& os, const SystemParams& base,
                                const SweepSpec& spec, int workers,
                                std::vector<std::string>* warnings) {
    spec.axis1.validate("stability.axis1");
    if (spec.axis2) spec.axis2->validate("stability.axis2");
    if (warnings) base.validate(warnings);
    write_meta(os, base, spec, /*with_axes=*/true);
    os << to_string(spec.axis1.path);
    if (spec.axis2) os << "," << to_string(spec.axis2->path);
    for (int i = 1; i <= 8; ++i) os << ",lambda_" << i;
    os << ",max_real_eig,stable_by_eig,stable_by_rh\n";

    SweepReport report;
    auto rows = run_grid(
        base, spec, workers,
        [&spec](const SystemParams& p, double v1, double v2) {
            const XiCoefficients xi = compute_xi(p.gain);
            const StabilityReport rep = stability_report(build_drift(p, xi));
            std::string line = format_csv_number(v1);
            if (spec.axis2) line += "," + format_csv_number(v2);
            for (double l : rep.hurwitz) line += "," + format_csv_number(l);
            line += "," + format_csv_number(rep.max_real_eig);
            line += rep.stable_by_eig ? ",1" : ",0";
            line += rep.stable_by_rh ? ",1" : ",0";
            return line;
        },
        [&spec](double v1, double v2) {
            std::string line = format_csv_number(v1);
            if (spec.axis2) line += "," + format_csv_number(v2);
            return line + ",,,,,,,,,,,";  // 8 minors + eig + 2 verdicts, all empty
        },
        report, warnings);
    for (const auto& r : rows) os << r << "\n";
    return report;
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << ",";
            os << format_csv_number(m(i, j));
        }
        os << "\n";
    }
}

}  // namespace celsteer
