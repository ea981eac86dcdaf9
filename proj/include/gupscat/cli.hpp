#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gupscat/partial_waves.hpp"

namespace gupscat {

// Everything a run needs, resolved from defaults, config file and flags (in
// that order; later layers win). Defaults are reduced units.
struct RunConfig {
    double hbar = 1.0;
    double mass = 1.0;
    double e2 = 1.0;
    double beta = 0.0;
    double beta_prime = 0.0;

    std::string potential = "coulomb"; // coulomb | yukawa
    double lambda = 1.0;               // yukawa screening
    std::string sign = "attractive";   // attractive | repulsive

    std::optional<double> k;
    std::optional<double> energy; // exactly one of k / energy per run

    double theta_min = 0.1;
    double theta_max = 3.141592653589793;
    int n_angles = 9;

    std::optional<int> lmax; // absent: scan with tail_tol
    double tail_tol = 0.01;

    // Screening ladder for the unscreened-limit mode of the dcs command.
    std::vector<double> lambdas = {0.1, 0.05, 0.025, 0.0125};
    std::string coulomb_mode = "closed"; // closed | limit

    int max_iter = 100; // self-consistent phase iteration
    double tol = 1e-12;

    std::string format = "csv"; // csv | json
    std::string out = "-";      // "-" = stdout
};

// Reads `key = value` lines ('#' comments, blank lines ignored) into cfg.
// Unknown keys and unparsable values raise ConfigError naming the key.
void load_config_file(const std::string& path, RunConfig& cfg);

// Cross-field checks shared by every command (one of k/energy, grid in
// (0, pi], enum values, positive tolerances). Raises ConfigError.
void validate_config(const RunConfig& cfg);

// Rendered output of each command, in cfg.format. Deterministic byte-for-byte
// for a fixed config.
std::string render_dispersion(const RunConfig& cfg);
std::string render_dcs(const RunConfig& cfg);
std::string render_phases(const RunConfig& cfg);
std::string render_sigma(const RunConfig& cfg);

// The sigma command's numbers, computed from an explicit phase set so tests
// can inject phases directly.
struct SigmaSummary {
    double sigma_partial = 0.0;    // (4 pi / k^2) sum (2l+1) sin^2 delta
    double sigma_quadrature = 0.0; // 2 pi Int |f|^2 dmu by Gauss-Legendre
    double optical_residual = 0.0;
    double im_f_forward = 0.0;
};

// Raises ConsistencyError when the two sigma routes disagree beyond 1e-8
// relative.
SigmaSummary sigma_summary_from_phases(const PhaseShiftSet& phases);

// Full entry point: parse argv (subcommands dispersion | dcs | phases |
// sigma), run, write cfg.out. Returns the process exit code: 0 success,
// 2 config error, 3 domain/validity error, 4 internal-consistency failure.
int run_cli(int argc, char** argv);

} // namespace gupscat
