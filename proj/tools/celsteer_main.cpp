// Command-line front end: single-point evaluation, 1-D/2-D parameter sweeps,
// Routh-Hurwitz stability maps, and the Monte Carlo covariance oracle.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <thread>

#include "celsteer/config.hpp"
#include "celsteer/errors.hpp"
#include "celsteer/gain.hpp"
#include "celsteer/pipeline.hpp"
#include "celsteer/sde.hpp"

namespace {

using namespace celsteer;

struct OutSink {
    std::ofstream file;
    std::ostream* os = nullptr;
    std::string path;

    explicit OutSink(const std::string& p) : path(p) {
        if (p == "-") {
            os = &std::cout;
        } else {
            file.open(p, std::ios::binary);  // binary: LF line endings everywhere
            if (!file) throw ConfigError("cannot open output file '" + p + "'");
            os = &file;
        }
    }
};

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

void dump_matrices(const PointResult& p, const std::string& out_path) {
    const std::string stem = (out_path == "-") ? "point" : out_path;
    std::ofstream kf(stem + ".drift.csv", std::ios::binary);
    std::ofstream rf(stem + ".diffusion.csv", std::ios::binary);
    if (!kf || !rf) throw ConfigError("cannot open matrix dump files next to '" + stem + "'");
    write_matrix_csv(kf, p.drift);
    write_matrix_csv(rf, p.diffusion);
    std::cerr << "wrote " << stem << ".drift.csv and " << stem << ".diffusion.csv\n";
}

int run_oracle(const LoadedConfig& cfg, OutSink& sink, int workers,
               std::optional<std::uint64_t> seed_override) {
    const XiCoefficients xi = compute_xi(cfg.params.gain);
    std::vector<std::string> warnings;
    const DriftMatrix k = build_drift(cfg.params, xi, &warnings);
    const DiffusionMatrix r = build_diffusion(cfg.params, xi);
    print_warnings(warnings);
    if (!r.positive_semidefinite) {
        std::cerr << "error: diffusion matrix is not positive semidefinite "
                     "(min eigenvalue "
                  << r.min_eigenvalue << "); oracle unavailable at this point\n";
        return 1;
    }
    const Eigen::MatrixXd b = noise_factor(r.r);
    OracleConfig oc = default_oracle_config(k.k, cfg.oracle.seed);
    if (cfg.oracle.dt) oc.dt = *cfg.oracle.dt;
    oc.n_steps = cfg.oracle.n_steps;
    oc.n_trajectories = cfg.oracle.n_trajectories;
    oc.burn_in_fraction = cfg.oracle.burn_in_fraction;
    if (seed_override) oc.seed = *seed_override;

    const CovarianceEstimate est = simulate_covariance(k.k, b, oc, workers);
    const Eigen::MatrixXd v = solve_lyapunov(k.k, r.r);
    const double rel = (est.estimate - v).norm() / v.norm();

    std::ostream& os = *sink.os;
    os << "# celsteer oracle\n";
    os << "# dt=" << format_csv_number(oc.dt) << " n_steps=" << oc.n_steps
       << " n_trajectories=" << oc.n_trajectories
       << " burn_in_fraction=" << format_csv_number(oc.burn_in_fraction)
       << " seed=" << oc.seed << "\n";
    os << "# rel_frobenius_deviation_from_lyapunov=" << format_csv_number(rel) << "\n";
    os << "# bootstrap_std_error=" << format_csv_number(est.std_error) << "\n";
    write_matrix_csv(os, est.estimate);
    std::cerr << "oracle: relative Frobenius deviation " << rel << " (bootstrap SE "
              << est.std_error << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state quantum fluctuations and Gaussian steering of two "
                 "movable mirrors coupled through a correlated-emission laser"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_path = "-";
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
    bool dump = false;
    std::optional<std::uint64_t> seed;

    app.add_option("--config", config_path, "JSON config file (defaults used when absent)");
    app.add_option("--out", out_path, "output CSV path, or '-' for stdout")->capture_default_str();
    app.add_option("--workers", workers, "worker threads for sweeps/oracle")
        ->capture_default_str();
    app.add_flag("--dump-matrices", dump, "also dump drift/diffusion matrices as CSV (debug)");

    auto* point = app.add_subcommand("point", "evaluate a single parameter point");
    auto* sweep = app.add_subcommand("sweep", "run the configured parameter sweep");
    auto* stability = app.add_subcommand("stability", "Routh-Hurwitz / eigenvalue stability map");
    auto* oracle = app.add_subcommand("oracle", "Monte Carlo covariance check at the point");
    std::uint64_t seed_arg = 0;
    auto* seed_opt = oracle->add_option("--seed", seed_arg, "RNG seed for the oracle");

    CLI11_PARSE(app, argc, argv);

    try {
        LoadedConfig cfg;
        if (!config_path.empty())
            cfg = load_config(config_path);
        else {
            cfg.params = default_params();
            cfg.sweep = default_sweep();
        }
        print_warnings(cfg.warnings);
        if (seed_opt->count() > 0) seed = seed_arg;

        OutSink sink(out_path);
        if (point->parsed()) {
            std::vector<std::string> warnings;
            write_point_csv(*sink.os, cfg.params, cfg.sweep, &warnings);
            print_warnings(warnings);
            if (dump) dump_matrices(run_point(cfg.params), out_path);
            return 0;
        }
        if (sweep->parsed()) {
            std::vector<std::string> warnings;
            const SweepReport rep = write_sweep_csv(*sink.os, cfg.params, cfg.sweep, workers,
                                                    &warnings);
            print_warnings(warnings);
            if (rep.point_errors > 0)
                std::cerr << rep.point_errors << " of " << rep.rows
                          << " points errored (recorded in-row)\n";
            return rep.point_errors > 0 ? 1 : 0;
        }
        if (stability->parsed()) {
            SweepSpec spec = cfg.sweep_given ? cfg.sweep : default_stability_axes();
            std::vector<std::string> warnings;
            const SweepReport rep = write_stability_csv(*sink.os, cfg.params, spec, workers,
                                                        &warnings);
            print_warnings(warnings);
            if (rep.point_errors > 0)
                std::cerr << rep.point_errors << " of " << rep.rows
                          << " points errored (recorded in-row)\n";
            return rep.point_errors > 0 ? 1 : 0;
        }
        if (oracle->parsed()) return run_oracle(cfg, sink, workers, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
