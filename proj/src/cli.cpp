#include "gupscat/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gupscat/born.hpp"
#include "gupscat/errors.hpp"
#include "gupscat/quadrature.hpp"

namespace gupscat {

namespace {

const char* kVersion = "0.1.0";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

// One table cell, renderable for both output formats.
struct Cell {
    enum class Kind { number, integer, text } kind;
    double d = 0.0;
    long i = 0;
    std::string s;
};

Cell cell(double v) { return {Cell::Kind::number, v, 0, {}}; }
Cell cell(int v) { return {Cell::Kind::integer, 0.0, v, {}}; }
Cell cell(std::string v) { return {Cell::Kind::text, 0.0, 0, std::move(v)}; }

std::string render_csv_cell(const Cell& c) {
    switch (c.kind) {
    case Cell::Kind::number:
        return fmt(c.d);
    case Cell::Kind::integer:
        return std::to_string(c.i);
    default:
        return c.s;
    }
}

std::string render_json_cell(const Cell& c) {
    switch (c.kind) {
    case Cell::Kind::number:
        return std::isfinite(c.d) ? fmt(c.d) : "null";
    case Cell::Kind::integer:
        return std::to_string(c.i);
    default:
        return "\"" + c.s + "\"";
    }
}

std::string join_lambdas(const std::vector<double>& ls) {
    std::string out;
    for (size_t i = 0; i < ls.size(); ++i) {
        if (i) out += ",";
        out += fmt(ls[i]);
    }
    return out;
}

// Metadata echoed into every output: each entry is a valid config line, so an
// output's header can be fed back as a config file to reproduce the run.
std::vector<std::pair<std::string, std::string>> config_meta(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> m;
    m.emplace_back("version", kVersion);
    m.emplace_back("hbar", fmt(cfg.hbar));
    m.emplace_back("mass", fmt(cfg.mass));
    m.emplace_back("e2", fmt(cfg.e2));
    m.emplace_back("beta", fmt(cfg.beta));
    m.emplace_back("beta-prime", fmt(cfg.beta_prime));
    m.emplace_back("potential", cfg.potential);
    m.emplace_back("lambda", fmt(cfg.lambda));
    m.emplace_back("sign", cfg.sign);
    if (cfg.k) m.emplace_back("k", fmt(*cfg.k));
    if (cfg.energy) m.emplace_back("energy", fmt(*cfg.energy));
    m.emplace_back("theta-min", fmt(cfg.theta_min));
    m.emplace_back("theta-max", fmt(cfg.theta_max));
    m.emplace_back("n-angles", std::to_string(cfg.n_angles));
    if (cfg.lmax) m.emplace_back("lmax", std::to_string(*cfg.lmax));
    m.emplace_back("tail-tol", fmt(cfg.tail_tol));
    m.emplace_back("lambdas", join_lambdas(cfg.lambdas));
    m.emplace_back("coulomb-mode", cfg.coulomb_mode);
    m.emplace_back("max-iter", std::to_string(cfg.max_iter));
    m.emplace_back("tol", fmt(cfg.tol));
    m.emplace_back("format", cfg.format);
    m.emplace_back("out", cfg.out);
    return m;
}

std::string render_table(const RunConfig& cfg, const std::vector<std::string>& header,
                         const std::vector<std::vector<Cell>>& rows) {
    const auto meta = config_meta(cfg);
    std::ostringstream os;
    if (cfg.format == "csv") {
        for (const auto& [key, value] : meta) os << "# " << key << " = " << value << "\n";
        for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
        os << "\n";
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << render_csv_cell(row[i]);
            os << "\n";
        }
    } else {
        os << "{\n  \"meta\": {\n";
        for (size_t i = 0; i < meta.size(); ++i)
            os << "    \"" << meta[i].first << "\": \"" << meta[i].second << "\""
               << (i + 1 < meta.size() ? "," : "") << "\n";
        os << "  },\n  \"rows\": [\n";
        for (size_t r = 0; r < rows.size(); ++r) {
            os << "    {";
            for (size_t i = 0; i < rows[r].size(); ++i)
                os << (i ? ", " : "") << "\"" << header[i]
                   << "\": " << render_json_cell(rows[r][i]);
            os << "}" << (r + 1 < rows.size() ? "," : "") << "\n";
        }
        os << "  ]\n}\n";
    }
    return os.str();
}

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double_value(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("config: key '" + key + "' has a non-numeric value '" + value + "'");
    return v;
}

int parse_int_value(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("config: key '" + key + "' has a non-integer value '" + value + "'");
    return static_cast<int>(v);
}

std::vector<double> parse_lambda_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double_value(key, trim(item)));
    if (out.empty()) throw ConfigError("config: key '" + key + "' is empty");
    return out;
}

} // namespace

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              " is not 'key = value': '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key == "version") {
            // accepted so echoed metadata can be fed back verbatim
        } else if (key == "hbar") {
            cfg.hbar = parse_double_value(key, value);
        } else if (key == "mass") {
            cfg.mass = parse_double_value(key, value);
        } else if (key == "e2") {
            cfg.e2 = parse_double_value(key, value);
        } else if (key == "beta") {
            cfg.beta = parse_double_value(key, value);
        } else if (key == "beta-prime") {
            cfg.beta_prime = parse_double_value(key, value);
        } else if (key == "potential") {
            cfg.potential = value;
        } else if (key == "lambda") {
            cfg.lambda = parse_double_value(key, value);
        } else if (key == "sign") {
            cfg.sign = value;
        } else if (key == "k") {
            cfg.k = parse_double_value(key, value);
        } else if (key == "energy") {
            cfg.energy = parse_double_value(key, value);
        } else if (key == "theta-min") {
            cfg.theta_min = parse_double_value(key, value);
        } else if (key == "theta-max") {
            cfg.theta_max = parse_double_value(key, value);
        } else if (key == "n-angles") {
            cfg.n_angles = parse_int_value(key, value);
        } else if (key == "lmax") {
            cfg.lmax = parse_int_value(key, value);
        } else if (key == "tail-tol") {
            cfg.tail_tol = parse_double_value(key, value);
        } else if (key == "lambdas") {
            cfg.lambdas = parse_lambda_list(key, value);
        } else if (key == "coulomb-mode") {
            cfg.coulomb_mode = value;
        } else if (key == "max-iter") {
            cfg.max_iter = parse_int_value(key, value);
        } else if (key == "tol") {
            cfg.tol = parse_double_value(key, value);
        } else if (key == "format") {
            cfg.format = value;
        } else if (key == "out") {
            cfg.out = value;
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
}

void validate_config(const RunConfig& cfg) {
    const auto bad = [](const std::string& key, const std::string& why) {
        throw ConfigError("config: key '" + key + "' " + why);
    };
    if (!std::isfinite(cfg.hbar) || cfg.hbar <= 0.0) bad("hbar", "must be finite and > 0");
    if (!std::isfinite(cfg.mass) || cfg.mass <= 0.0) bad("mass", "must be finite and > 0");
    if (!std::isfinite(cfg.e2) || cfg.e2 < 0.0) bad("e2", "must be finite and >= 0");
    if (!std::isfinite(cfg.beta) || cfg.beta < 0.0) bad("beta", "must be finite and >= 0");
    if (!std::isfinite(cfg.beta_prime) || cfg.beta_prime < 0.0)
        bad("beta-prime", "must be finite and >= 0");
    if (cfg.potential != "coulomb" && cfg.potential != "yukawa")
        bad("potential", "must be 'coulomb' or 'yukawa'");
    if (!std::isfinite(cfg.lambda) || cfg.lambda <= 0.0) bad("lambda", "must be finite and > 0");
    if (cfg.sign != "attractive" && cfg.sign != "repulsive")
        bad("sign", "must be 'attractive' or 'repulsive'");
    if (cfg.k.has_value() == cfg.energy.has_value())
        throw ConfigError("config: exactly one of 'k' or 'energy' must be given");
    if (cfg.k && (!std::isfinite(*cfg.k) || *cfg.k <= 0.0)) bad("k", "must be finite and > 0");
    if (cfg.energy && (!std::isfinite(*cfg.energy) || *cfg.energy <= 0.0))
        bad("energy", "must be finite and > 0");
    if (!std::isfinite(cfg.theta_min) || cfg.theta_min <= 0.0)
        bad("theta-min", "must lie in (0, pi]");
    if (!std::isfinite(cfg.theta_max) || cfg.theta_max > M_PI + 1e-15)
        bad("theta-max", "must lie in (0, pi]");
    if (cfg.n_angles < 1) bad("n-angles", "must be >= 1");
    if (cfg.n_angles > 1 && cfg.theta_max < cfg.theta_min)
        bad("theta-max", "must be >= theta-min");
    if (cfg.lmax && *cfg.lmax < 0) bad("lmax", "must be >= 0");
    if (!std::isfinite(cfg.tail_tol) || cfg.tail_tol <= 0.0) bad("tail-tol", "must be > 0");
    for (double l : cfg.lambdas)
        if (!std::isfinite(l) || l <= 0.0) bad("lambdas", "entries must be finite and > 0");
    if (cfg.coulomb_mode != "closed" && cfg.coulomb_mode != "limit")
        bad("coulomb-mode", "must be 'closed' or 'limit'");
    if (cfg.coulomb_mode == "limit" && cfg.potential == "coulomb") {
        if (cfg.lambdas.size() < 3) bad("lambdas", "needs at least 3 entries for the limit mode");
        for (size_t i = 1; i < cfg.lambdas.size(); ++i)
            if (cfg.lambdas[i] >= cfg.lambdas[i - 1])
                bad("lambdas", "must be strictly decreasing");
    }
    if (cfg.max_iter < 1) bad("max-iter", "must be >= 1");
    if (!std::isfinite(cfg.tol) || cfg.tol <= 0.0) bad("tol", "must be > 0");
    if (cfg.format != "csv" && cfg.format != "json") bad("format", "must be 'csv' or 'json'");
}

namespace {

PhysicalContext context_of(const RunConfig& cfg) {
    return PhysicalContext(cfg.hbar, cfg.mass, cfg.e2);
}

DeformationParams params_of(const RunConfig& cfg) {
    return DeformationParams(cfg.beta, cfg.beta_prime);
}

Kinematics kinematics_of(const RunConfig& cfg, const DeformationParams& params,
                         const PhysicalContext& ctx) {
    if (cfg.k) return kinematics_from_wavenumber(*cfg.k, params, ctx);
    return kinematics_from_energy(*cfg.energy, params, ctx);
}

PotentialSign sign_of(const RunConfig& cfg) {
    return cfg.sign == "attractive" ? PotentialSign::attractive : PotentialSign::repulsive;
}

RadialPotential potential_of(const RunConfig& cfg) {
    if (cfg.potential == "yukawa")
        return RadialPotential::yukawa(cfg.e2, cfg.lambda, sign_of(cfg));
    return RadialPotential::coulomb(cfg.e2, sign_of(cfg));
}

std::vector<double> angle_grid(const RunConfig& cfg) {
    std::vector<double> grid;
    grid.reserve(static_cast<size_t>(cfg.n_angles));
    if (cfg.n_angles == 1) {
        grid.push_back(cfg.theta_min);
        return grid;
    }
    const double step = (cfg.theta_max - cfg.theta_min) / (cfg.n_angles - 1);
    for (int i = 0; i < cfg.n_angles; ++i) grid.push_back(cfg.theta_min + i * step);
    return grid;
}

int resolved_lmax(const RunConfig& cfg, const RadialPotential& pot, double k,
                  const DeformationParams& params, const PhysicalContext& ctx) {
    if (cfg.lmax) return *cfg.lmax;
    return select_lmax(pot, k, params, ctx, cfg.tail_tol);
}

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

} // namespace

std::string render_dispersion(const RunConfig& cfg) {
    const PhysicalContext ctx = context_of(cfg);
    const DeformationParams params = params_of(cfg);
    const Kinematics kin = kinematics_of(cfg, params, ctx);
    std::vector<std::vector<Cell>> rows;
    rows.push_back({cell(kin.k), cell(kin.energy), cell(kin.momentum),
                    cell(minimal_length(params, ctx)),
                    cell(green_prefactor(kin.k, params, ctx))});
    return render_table(cfg, {"k", "energy", "momentum", "minimal_length", "green_prefactor"},
                        rows);
}

std::string render_dcs(const RunConfig& cfg) {
    const PhysicalContext ctx = context_of(cfg);
    const DeformationParams params = params_of(cfg);
    const Kinematics kin = kinematics_of(cfg, params, ctx);
    std::vector<std::vector<Cell>> rows;
    for (double theta : angle_grid(cfg)) {
        const ScatteringGeometry geom = ScatteringGeometry::from_angle(theta, kin.k);
        double dcs = 0.0;
        int flag = 0;
        if (cfg.potential == "coulomb" && cfg.coulomb_mode == "closed") {
            const DcsValue v = deformed_coulomb_dcs(geom, params, ctx);
            dcs = v.value;
            flag = v.validity_warning ? 1 : 0;
        } else if (cfg.potential == "coulomb") {
            dcs = coulomb_limit_extrapolate(geom, params, ctx, cfg.lambdas, sign_of(cfg)).value;
        } else {
            dcs = dcs_from_amplitude(
                born_amplitude_yukawa(geom, cfg.lambda, params, ctx, sign_of(cfg)));
        }
        rows.push_back({cell(theta), cell(dcs), cell(flag)});
    }
    return render_table(cfg, {"theta", "dcs", "validity_flag"}, rows);
}

std::string render_phases(const RunConfig& cfg) {
    const PhysicalContext ctx = context_of(cfg);
    const DeformationParams params = params_of(cfg);
    const Kinematics kin = kinematics_of(cfg, params, ctx);
    const RadialPotential pot = potential_of(cfg);
    const int lmax = resolved_lmax(cfg, pot, kin.k, params, ctx);

    // Pin the resolved l range in the echoed config so the run reproduces even
    // if it was chosen by the tail scan.
    RunConfig echo = cfg;
    echo.lmax = lmax;

    std::vector<std::vector<Cell>> rows;
    for (int l = 0; l <= lmax; ++l) {
        double born = kNan, self = kNan, sin_born = kNan;
        std::string flag = "ok";
        try {
            born = born_phase_shift(l, kin.k, pot, params, ctx);
            sin_born = std::sin(born);
        } catch (const BornValidityError&) {
            flag = "born_validity";
        } catch (const ConvergenceError&) {
            flag = "no_converge";
        }
        try {
            self = self_consistent_phase_shift(l, kin.k, pot, params, ctx, cfg.max_iter, cfg.tol);
        } catch (const BornValidityError&) {
            if (flag == "ok") flag = "born_validity";
        } catch (const ConvergenceError&) {
            if (flag == "ok") flag = "no_converge";
        }
        rows.push_back({cell(l), cell(born), cell(self), cell(sin_born), cell(flag)});
    }
    return render_table(echo, {"l", "delta_born", "delta_self_consistent", "sin_delta", "flag"},
                        rows);
}

SigmaSummary sigma_summary_from_phases(const PhaseShiftSet& phases) {
    SigmaSummary s;
    s.sigma_partial = total_cross_section(phases);
    const int n_nodes = phases.l_max() + 8;
    s.sigma_quadrature = integrate_angular(
        [&](double theta) { return std::norm(partial_amplitude(phases, theta)); }, n_nodes);
    s.optical_residual = optical_theorem_residual(phases);
    s.im_f_forward = partial_amplitude(phases, 0.0).imag();
    const double scale = std::max(std::abs(s.sigma_partial), 1e-300);
    if (std::abs(s.sigma_partial - s.sigma_quadrature) > 1e-8 * scale)
        throw ConsistencyError("sigma: phase-sum and angular-quadrature routes disagree: " +
                               fmt(s.sigma_partial) + " vs " + fmt(s.sigma_quadrature));
    return s;
}

std::string render_sigma(const RunConfig& cfg) {
    const PhysicalContext ctx = context_of(cfg);
    const DeformationParams params = params_of(cfg);
    const Kinematics kin = kinematics_of(cfg, params, ctx);
    const RadialPotential pot = potential_of(cfg);
    const int lmax = resolved_lmax(cfg, pot, kin.k, params, ctx);

    PhaseShiftSet phases;
    phases.k = kin.k;
    phases.method = PhaseMethod::born;
    for (int l = 0; l <= lmax; ++l)
        phases.deltas.push_back(born_phase_shift(l, kin.k, pot, params, ctx));

    const SigmaSummary s = sigma_summary_from_phases(phases);

    RunConfig echo = cfg;
    echo.lmax = lmax;
    std::vector<std::vector<Cell>> rows;
    rows.push_back({cell(s.sigma_partial), cell(s.sigma_quadrature), cell(s.optical_residual),
                    cell(s.im_f_forward)});
    return render_table(
        echo, {"sigma_partial", "sigma_quadrature", "optical_residual", "im_f_forward"}, rows);
}

namespace {

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) throw ConfigError("config: cannot write out = '" + cfg.out + "'");
    os << text;
    if (!os) throw ConfigError("config: write failed for out = '" + cfg.out + "'");
}

} // namespace

int run_cli(int argc, char** argv) {
    RunConfig cfg;
    std::string config_path;
    double k_flag = 0.0, energy_flag = 0.0;
    int lmax_flag = 0;

    CLI::App app{"elastic-scattering observables in minimal-length deformed QM"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value config file");
        sub->add_option("--hbar", cfg.hbar, "Planck constant");
        sub->add_option("--mass", cfg.mass, "particle mass");
        sub->add_option("--e2", cfg.e2, "coupling e^2");
        sub->add_option("--beta", cfg.beta, "deformation parameter beta");
        sub->add_option("--beta-prime", cfg.beta_prime, "deformation parameter beta'");
        sub->add_option("--potential", cfg.potential, "coulomb | yukawa");
        sub->add_option("--lambda", cfg.lambda, "yukawa screening");
        sub->add_option("--sign", cfg.sign, "attractive | repulsive");
        sub->add_option("--k", k_flag, "wavenumber");
        sub->add_option("--energy", energy_flag, "kinetic energy (alternative to --k)");
        sub->add_option("--theta-min", cfg.theta_min, "grid start angle");
        sub->add_option("--theta-max", cfg.theta_max, "grid end angle");
        sub->add_option("--n-angles", cfg.n_angles, "grid size");
        sub->add_option("--lmax", lmax_flag, "partial-wave cutoff");
        sub->add_option("--tail-tol", cfg.tail_tol, "cutoff scan tolerance");
        sub->add_option("--lambdas", cfg.lambdas, "screening ladder for coulomb limit mode")
            ->delimiter(',');
        sub->add_option("--coulomb-mode", cfg.coulomb_mode, "closed | limit");
        sub->add_option("--max-iter", cfg.max_iter, "self-consistent iteration cap");
        sub->add_option("--tol", cfg.tol, "self-consistent convergence tolerance");
        sub->add_option("--format", cfg.format, "csv | json");
        sub->add_option("--out", cfg.out, "output path ('-' = stdout)");
    };

    CLI::App* sub_dispersion = app.add_subcommand("dispersion", "kinematics of one k or E");
    CLI::App* sub_dcs = app.add_subcommand("dcs", "differential cross-section table");
    CLI::App* sub_phases = app.add_subcommand("phases", "phase-shift table");
    CLI::App* sub_sigma = app.add_subcommand("sigma", "total cross-section summary");
    for (CLI::App* sub : {sub_dispersion, sub_dcs, sub_phases, sub_sigma}) add_common(sub);

    // The config file is applied before flag values so flags win; find it
    // ahead of the real parse.
    try {
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg == "--config" && i + 1 < argc) {
                load_config_file(argv[i + 1], cfg);
                break;
            }
            if (arg.rfind("--config=", 0) == 0) {
                load_config_file(arg.substr(9), cfg);
                break;
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--k")) {
        cfg.k = k_flag;
        cfg.energy.reset();
    }
    if (sub->count("--energy")) {
        cfg.energy = energy_flag;
        if (sub->count("--k")) {
            std::cerr << "error: config: give only one of --k and --energy\n";
            return 2;
        }
        cfg.k.reset();
    }
    if (sub->count("--lmax")) cfg.lmax = lmax_flag;

    try {
        validate_config(cfg);
        std::string text;
        if (sub == sub_dispersion) text = render_dispersion(cfg);
        else if (sub == sub_dcs) text = render_dcs(cfg);
        else if (sub == sub_phases) text = render_phases(cfg);
        else text = render_sigma(cfg);
        write_output(cfg, text);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConsistencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const BornValidityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace gupscat
