#ifndef CELSTEER_PIPELINE_HPP_
#define CELSTEER_PIPELINE_HPP_

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "celsteer/dynamics.hpp"
#include "celsteer/steering.hpp"

namespace celsteer {

enum class SweepPath {
    omega_over_gamma,  // gain.omega_over_gamma
    n_th_1,            // mirror_1.n_th
    n_th_2,            // mirror_2.n_th
    n_th_common,       // common.n_th (locks both)
    g1_over_wm,        // cavity_1.g_over_wm
    g2_over_wm,        // cavity_2.g_over_wm
    g_over_wm_common,  // common.g_over_wm
};

SweepPath sweep_path_from_string(const std::string& s);
std::string to_string(SweepPath p);

enum class OutputField {
    steering_1to2,
    steering_2to1,
    regime,
    energy_diff,
    max_real_eig,
    hurwitz_min,
    lyapunov_residual,
};

OutputField output_field_from_string(const std::string& s);

struct SweepAxis {
    SweepPath path = SweepPath::omega_over_gamma;
    double min = 0.0;
    double max = 1.0;
    int n_points = 2;     // >= 2
    bool log_scale = false;

    void validate(const std::string& key) const;
    double value_at(int i) const;
};

struct SweepSpec {
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    std::set<OutputField> outputs;  // empty set = all fields

    bool wants(OutputField f) const { return outputs.empty() || outputs.count(f) > 0; }
};

void apply_axis(SystemParams& params, SweepPath path, double value);

enum class PointStatus { ok, unstable, marginal, r_not_psd };
std::string to_string(PointStatus s);

struct SweepReport {
    long rows = 0;
    long point_errors = 0;  // rows written with status 'error' (solver failures)
};

struct PointResult {
    PointStatus status = PointStatus::unstable;
    StabilityReport stability;
    double hurwitz_min = 0.0;          // min Lambda_n, K/omega0 units
    double lyap_residual = 0.0;        // relative Frobenius
    bool has_solution = false;         // Lyapunov solve ran
    bool has_steering = false;         // steering fields meaningful (status == ok)
    SteeringResult steering;
    bool energy_absolute = false;      // true when mirror frequencies differ:
                                       // energy_diff is then in joules
    Matrix8 drift = Matrix8::Zero();
    Matrix8 diffusion = Matrix8::Zero();
    MechCovariance mech;               // valid when has_solution
};

// Full single-point pipeline: xi -> drift/diffusion -> stability -> Lyapunov
// -> mechanical block -> steering + energy. Short-circuits to unstable or
// marginal without a solve; a non-PSD diffusion still solves but reports
// status r_not_psd with empty steering outputs.
PointResult run_point(const SystemParams& params, std::vector<std::string>* warnings = nullptr);

// CSV emission. Deterministic: fixed 17-significant-digit scientific
// formatting, LF endings, grid metadata in leading '#' comments, and output
// identical for any worker count.
// Individual point failures are recorded in-row (status 'error', empty
// outputs) and the sweep continues; the report counts them and the point's
// coordinates go to `warnings`.
void write_point_csv(std::ostream& os, const SystemParams& params,
                     const SweepSpec& spec, std::vector<std::string>* warnings = nullptr);
SweepReport write_sweep_csv(std::ostream& os, const SystemParams& base, const SweepSpec& spec,
                            int workers, std::vector<std::string>* warnings = nullptr);
SweepReport write_stability_csv(std::ostream& os, const SystemParams& base,
                                const SweepSpec& spec, int workers,
                                std::vector<std::string>* warnings = nullptr);

// Row-major matrix dump, 17 significant digits.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m);

// printf("%.16e") formatting used for every CSV number.
std::string format_csv_number(double v);

}  // namespace celsteer

#endif
