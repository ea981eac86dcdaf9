#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gupscat/cli.hpp"
#include "gupscat/errors.hpp"

using namespace gupscat;

namespace {

std::filesystem::path scratch_file(const std::string& stem) {
    static int counter = 0;
    return std::filesystem::temp_directory_path() /
           ("gupscat_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" +
            stem);
}

std::filesystem::path write_file(const std::string& stem, const std::string& text) {
    const auto path = scratch_file(stem);
    std::ofstream os(path);
    os << text;
    return path;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "gupscat");
    std::vector<char*> argv;
    argv.reserve(args.size());
    for (auto& a : args) argv.push_back(a.data());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

// Split one CSV body line into doubles where possible.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

std::vector<std::string> body_lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#') out.push_back(line);
    return out;
}

RunConfig criterion_deformed_coulomb() {
    RunConfig cfg;
    cfg.beta = 0.01;
    cfg.beta_prime = 0.01;
    cfg.k = 1.0;
    cfg.n_angles = 1;
    cfg.theta_min = M_PI / 2.0;
    return cfg;
}

} // namespace

TEST_CASE("config files load key = value lines, skip comments, reject unknown keys") {
    const auto path = write_file("ok.conf",
                                 "# a comment\n"
                                 "\n"
                                 "k = 2.5\n"
                                 "beta-prime = 0.125\n"
                                 "potential = yukawa\n"
                                 "lambdas = 0.2, 0.1, 0.05\n"
                                 "n-angles = 3\n"
                                 "version = 9.9.9\n");
    RunConfig cfg;
    load_config_file(path.string(), cfg);
    CHECK(cfg.k.has_value());
    CHECK(*cfg.k == 2.5);
    CHECK(cfg.beta_prime == 0.125);
    CHECK(cfg.potential == "yukawa");
    REQUIRE(cfg.lambdas.size() == 3);
    CHECK(cfg.lambdas[1] == 0.1);
    CHECK(cfg.n_angles == 3);
    CHECK(cfg.beta == 0.0); // untouched default
    std::filesystem::remove(path);

    RunConfig fresh;
    CHECK_THROWS_AS(load_config_file("/nonexistent/gupscat.conf", fresh), ConfigError);

    const auto bad_key = write_file("badkey.conf", "kk = 1\n");
    CHECK_THROWS_WITH_AS(load_config_file(bad_key.string(), fresh),
                         doctest::Contains("unknown key 'kk'"), ConfigError);
    std::filesystem::remove(bad_key);

    const auto bad_val = write_file("badval.conf", "k = fast\n");
    CHECK_THROWS_AS(load_config_file(bad_val.string(), fresh), ConfigError);
    std::filesystem::remove(bad_val);

    const auto bad_line = write_file("badline.conf", "just words\n");
    CHECK_THROWS_AS(load_config_file(bad_line.string(), fresh), ConfigError);
    std::filesystem::remove(bad_line);
}

TEST_CASE("config validation enforces the cross-field rules") {
    RunConfig cfg;
    cfg.k = 1.0;
    CHECK_NOTHROW(validate_config(cfg));

    SUBCASE("exactly one of k and energy") {
        RunConfig neither;
        CHECK_THROWS_AS(validate_config(neither), ConfigError);
        RunConfig both;
        both.k = 1.0;
        both.energy = 1.0;
        CHECK_THROWS_AS(validate_config(both), ConfigError);
    }
    SUBCASE("angles stay inside (0, pi]") {
        cfg.theta_min = 0.0;
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
        cfg.theta_min = 0.1;
        cfg.theta_max = 3.5;
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
        cfg.theta_max = 0.05; // below theta_min
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
    }
    SUBCASE("enums") {
        cfg.potential = "square";
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
        cfg.potential = "coulomb";
        cfg.sign = "strange";
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
        cfg.sign = "attractive";
        cfg.format = "xml";
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
        cfg.format = "csv";
        cfg.coulomb_mode = "open";
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
    }
    SUBCASE("positivity of controls") {
        cfg.n_angles = 0;
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
        cfg.n_angles = 9;
        cfg.tail_tol = 0.0;
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
        cfg.tail_tol = 0.01;
        cfg.max_iter = 0;
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
        cfg.max_iter = 100;
        cfg.tol = -1.0;
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
        cfg.tol = 1e-12;
        cfg.lmax = -1;
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
    }
    SUBCASE("limit mode needs a usable screening ladder") {
        cfg.coulomb_mode = "limit";
        cfg.lambdas = {0.1, 0.05};
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
        cfg.lambdas = {0.1, 0.2, 0.05};
        CHECK_THROWS_AS(validate_config(cfg), ConfigError);
        cfg.lambdas = {0.1, 0.05, 0.025};
        CHECK_NOTHROW(validate_config(cfg));
        // ladder shape is irrelevant when the command never extrapolates
        cfg.lambdas = {0.1, 0.2, 0.05};
        cfg.potential = "yukawa";
        CHECK_NOTHROW(validate_config(cfg));
    }
}

TEST_CASE("dispersion output carries the deformed kinematics row") {
    RunConfig cfg = criterion_deformed_coulomb();
    const std::string text = render_dispersion(cfg);
    const auto lines = body_lines(text);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "k,energy,momentum,minimal_length,green_prefactor");
    const auto cells = split_csv(lines[1]);
    REQUIRE(cells.size() == 5);
    CHECK(std::stod(cells[0]) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::stod(cells[1]) == doctest::Approx(0.505).epsilon(1e-15));
    CHECK(std::stod(cells[2]) == doctest::Approx(1.005).epsilon(1e-15));
    CHECK(std::stod(cells[3]) == doctest::Approx(std::sqrt(0.02)).epsilon(1e-15));
    CHECK(std::stod(cells[4]) == doctest::Approx(1.0 / 1.02).epsilon(1e-15));
    // byte determinism
    CHECK(render_dispersion(cfg) == text);
}

TEST_CASE("dispersion accepts an energy seed and echoes the inverted wavenumber") {
    RunConfig cfg;
    cfg.beta_prime = 0.01;
    cfg.energy = 0.505;
    const auto lines = body_lines(render_dispersion(cfg));
    REQUIRE(lines.size() == 2);
    CHECK(std::stod(split_csv(lines[1])[0]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("closed-mode Coulomb table reproduces the deformed spot value") {
    RunConfig cfg = criterion_deformed_coulomb();
    const auto lines = body_lines(render_dcs(cfg));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "theta,dcs,validity_flag");
    const auto cells = split_csv(lines[1]);
    CHECK(std::stod(cells[0]) == doctest::Approx(M_PI / 2.0).epsilon(1e-15));
    CHECK(std::stod(cells[1]) == doctest::Approx(0.8985611396325503).epsilon(1e-12));
    CHECK(cells[2] == "0");
}

TEST_CASE("limit-mode Coulomb table lands on the screened-ladder extrapolation") {
    RunConfig cfg;
    cfg.k = 1.0;
    cfg.n_angles = 1;
    cfg.theta_min = M_PI / 2.0;
    cfg.coulomb_mode = "limit";
    const auto lines = body_lines(render_dcs(cfg));
    REQUIRE(lines.size() == 2);
    CHECK(std::stod(split_csv(lines[1])[1]) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("screened tables use the closed-form first-order amplitude") {
    RunConfig cfg;
    cfg.potential = "yukawa";
    cfg.lambda = 1.0;
    cfg.k = 1.0;
    cfg.n_angles = 1;
    cfg.theta_min = M_PI / 2.0; // q^2 = 2: f = 2/3, dcs = 4/9
    const auto lines = body_lines(render_dcs(cfg));
    REQUIRE(lines.size() == 2);
    CHECK(std::stod(split_csv(lines[1])[1]) == doctest::Approx(4.0 / 9.0).epsilon(1e-13));
}

TEST_CASE("json output parses and mirrors the csv numbers") {
    RunConfig cfg = criterion_deformed_coulomb();
    cfg.format = "json";
    const auto parsed = nlohmann::json::parse(render_dcs(cfg));
    REQUIRE(parsed.contains("meta"));
    REQUIRE(parsed.contains("rows"));
    CHECK(parsed["meta"]["potential"] == "coulomb");
    CHECK(parsed["meta"]["beta"].is_string()); // meta echoes config text verbatim
    REQUIRE(parsed["rows"].size() == 1);
    CHECK(parsed["rows"][0]["dcs"].get<double>() ==
          doctest::Approx(0.8985611396325503).epsilon(1e-12));
    CHECK(parsed["rows"][0]["validity_flag"].get<int>() == 0);
}

TEST_CASE("phase table resolves its own cutoff, marks the divergent odd order, repeats even ones") {
    RunConfig cfg;
    cfg.potential = "yukawa";
    cfg.lambda = 2.0;
    cfg.k = 1.0;
    const std::string text = render_phases(cfg);
    const auto lines = body_lines(text);
    REQUIRE(lines.size() == 4); // header + l = 0, 1, 2
    CHECK(lines[0] == "l,delta_born,delta_self_consistent,sin_delta,flag");
    const auto l0 = split_csv(lines[1]);
    const auto l1 = split_csv(lines[2]);
    const auto l2 = split_csv(lines[3]);
    CHECK(l0[4] == "ok");
    CHECK(std::stod(l0[3]) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-9));
    CHECK(std::stod(l0[2]) == doctest::Approx(1.0163714378286387).epsilon(1e-9));
    // the asymptotic kernel diverges at l = 1 for a 1/r-singular potential:
    // honest nan + flag, not a made-up number
    CHECK(l1[4] == "no_converge");
    CHECK(l1[1] == "nan");
    // l = 2 repeats the l = 0 integral exactly (parity kernel)
    CHECK(l2[1] == l0[1]);
    CHECK(l2[3] == l0[3]);
    CHECK(l2[4] == "ok");
    CHECK(text.find("# lmax = 2\n") != std::string::npos); // scan result pinned in the echo
}

TEST_CASE("phase table rejects the unscreened potential instead of silently truncating") {
    RunConfig cfg;
    cfg.k = 1.0; // potential defaults to coulomb
    CHECK_THROWS_AS(render_phases(cfg), DomainError);
}

TEST_CASE("sigma summary ties the three total-cross-section routes together") {
    RunConfig cfg;
    cfg.potential = "yukawa";
    cfg.lambda = 2.0;
    cfg.k = 1.0;
    cfg.lmax = 0;
    const auto lines = body_lines(render_sigma(cfg));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "sigma_partial,sigma_quadrature,optical_residual,im_f_forward");
    const auto cells = split_csv(lines[1]);
    const double s = 0.5 * std::log(2.0); // sin delta_0
    CHECK(std::stod(cells[0]) == doctest::Approx(4.0 * M_PI * s * s).epsilon(1e-9));
    CHECK(std::stod(cells[1]) == doctest::Approx(4.0 * M_PI * s * s).epsilon(1e-9));
    CHECK(std::stod(cells[2]) < 1e-13);
    CHECK(std::stod(cells[3]) == doctest::Approx(s * s).epsilon(1e-9));
}

TEST_CASE("sigma summary accepts injected phases and checks itself") {
    PhaseShiftSet phases;
    phases.k = 1.3;
    phases.deltas = {0.4, -0.2, 0.05};
    const SigmaSummary s = sigma_summary_from_phases(phases);
    CHECK(s.sigma_partial == doctest::Approx(s.sigma_quadrature).epsilon(1e-12));
    CHECK(s.optical_residual < 1e-13);
    CHECK(s.im_f_forward > 0.0);
}

TEST_CASE("metadata echo doubles as a config file that reproduces the run") {
    RunConfig cfg = criterion_deformed_coulomb();
    const std::string first = render_dcs(cfg);

    // collect the '# key = value' meta lines, strip the comment marker, and
    // feed them back in as a config
    std::stringstream ss(first);
    std::string line, echo;
    while (std::getline(ss, line)) {
        if (line.rfind("# ", 0) == 0) echo += line.substr(2) + "\n";
    }
    const auto path = write_file("echo.conf", echo);
    RunConfig replay;
    load_config_file(path.string(), replay);
    std::filesystem::remove(path);
    CHECK(render_dcs(replay) == first);
}

TEST_CASE("the command line wires subcommands, flags, exit codes and output files") {
    const auto out = scratch_file("cli_out.csv");

    SUBCASE("a valid dispersion run writes its table and exits 0") {
        CHECK(run({"dispersion", "--k", "1", "--beta", "0.01", "--beta-prime", "0.01", "--out",
                   out.string()}) == 0);
        const std::string text = read_file(out);
        CHECK(text.find("k,energy,momentum") != std::string::npos);
        CHECK(text.find("5.0500000000000000e-01") != std::string::npos);
        std::filesystem::remove(out);
    }
    SUBCASE("flags override config files") {
        const auto conf = write_file("override.conf", "k = 2\nbeta-prime = 0.5\n");
        CHECK(run({"dispersion", "--config", conf.string(), "--k", "1", "--beta-prime", "0",
                   "--out", out.string()}) == 0);
        const auto lines = body_lines(read_file(out));
        REQUIRE(lines.size() == 2);
        CHECK(std::stod(split_csv(lines[1])[1]) == doctest::Approx(0.5).epsilon(1e-14));
        std::filesystem::remove(conf);
        std::filesystem::remove(out);
    }
    SUBCASE("config errors exit 2") {
        CHECK(run({"dispersion"}) == 2);                       // neither k nor energy
        CHECK(run({"dispersion", "--k", "1", "--energy", "1"}) == 2);
        CHECK(run({"dispersion", "--k", "1", "--format", "yaml"}) == 2);
        CHECK(run({"dispersion", "--k", "1", "--no-such-flag"}) == 2);
        CHECK(run({}) == 2); // missing subcommand
        const auto conf = write_file("bad.conf", "mystery = 1\n");
        CHECK(run({"dispersion", "--config", conf.string(), "--k", "1"}) == 2);
        std::filesystem::remove(conf);
    }
    SUBCASE("domain failures exit 3") {
        // phase shifts for the unscreened potential
        CHECK(run({"phases", "--k", "1", "--potential", "coulomb"}) == 3);
        // closed-form deformed Coulomb needs 2 beta > beta'
        CHECK(run({"dcs", "--k", "1", "--beta", "0", "--beta-prime", "0.1", "--out",
                   out.string()}) == 3);
        // born validity breakdown surfaces as exit 3 as well
        CHECK(run({"sigma", "--k", "1", "--potential", "yukawa", "--lambda", "2", "--e2", "10",
                   "--lmax", "0", "--out", out.string()}) == 3);
    }
    SUBCASE("help exits 0") {
        CHECK(run({"--help"}) == 0);
    }
}
