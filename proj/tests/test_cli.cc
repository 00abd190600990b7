//---------------------------------------------------------------------------//
//! \file test_cli.cc
//---------------------------------------------------------------------------//
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <doctest.h>

#include "meansir/analytics.hh"
#include "meansir/cli.hh"
#include "meansir/config.hh"
#include "meansir/errors.hh"
#include "meansir/figures.hh"
#include "meansir/sweep.hh"

using namespace meansir;
using doctest::Approx;
namespace fs = std::filesystem;

namespace
{
struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> const& args)
{
    std::ostringstream out;
    std::ostringstream err;
    int const code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string value_of(std::string const& text, std::string const& key)
{
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
    {
        if (line.rfind(key + "=", 0) == 0)
            return line.substr(key.size() + 1);
    }
    return {};
}

class TempDir
{
  public:
    TempDir()
    {
        path_ = fs::temp_directory_path()
                / ("meansir_cli_" + std::to_string(::getpid()) + "_"
                   + std::to_string(counter_++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(std::string const& name) const
    {
        return (path_ / name).string();
    }

  private:
    fs::path path_;
    static inline int counter_ = 0;
};

std::string slurp(std::string const& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

//---------------------------------------------------------------------------//
TEST_SUITE("config")
{
    TEST_CASE("valid model")
    {
        auto const c = parse_config_text(
            "lambda=1e-3\nalpha=4\nfading=rayleigh\ndistance=fixed:15\n"
            "power=const:1");
        auto const m = c.model();
        CHECK(m.intensity() == 1e-3);
        CHECK(m.alpha() == 4);
        CHECK(mean_sir(m) == Approx(1.62228).epsilon(1e-5));
    }

    TEST_CASE("defaults and comments")
    {
        auto const c = parse_config_text("# comment\n\n  seed = 7  \nn=2e5\n");
        CHECK(*c.seed == 7);
        CHECK(*c.n == 200000);
        auto const m = c.model();
        CHECK(m.intensity() == default_lambda);
        CHECK(m.alpha() == default_alpha);
        CHECK(m.distance().dist == Distribution::constant(default_distance));
        CHECK(m.scheduling().is_always_on());
        CHECK(parse_config_text("radius=auto").radius == 0.0);
        CHECK(parse_config_text("radius=900").radius == 900.0);
    }

    TEST_CASE("alpha must exceed 2")
    {
        CHECK_THROWS_WITH_AS(parse_config_text("alpha=2"),
                             doctest::Contains("alpha must exceed 2"),
                             DomainError);
        CHECK_THROWS_WITH_AS(parse_config_text("lambda=1e-3\nalpha=1.5"),
                             doctest::Contains("line 2"), DomainError);
    }

    TEST_CASE("channel-aware normalization gives unit mean power")
    {
        auto const m = parse_config_text(
                           "distance=uniform:15,25\npower=aware:rho=1,upsilon=4")
                           .model();
        auto const& ca = std::get<PowerControlLaw::ChannelAware>(m.power().kind());
        // E[H] E[D^4] for H ~ Exp(1), D ~ U[15,25]
        CHECK(ca.normalization == Approx(180125).epsilon(1e-12));
        CHECK(mean_power(m) == Approx(1).epsilon(1e-12));
    }

    TEST_CASE("unknown keys are listed")
    {
        CHECK_THROWS_WITH_AS(parse_config_text("foo=1\nalpha=4\nbar=2"),
                             doctest::Contains("unknown keys: foo (line 1), bar (line 3)"),
                             ParseError);
    }

    TEST_CASE("malformed values carry line numbers")
    {
        CHECK_THROWS_WITH_AS(parse_config_text("alpha=4\nlambda=abc"),
                             doctest::Contains("line 2"), ParseError);
        CHECK_THROWS_WITH_AS(parse_config_text("alpha=4\n\nnoequals"),
                             doctest::Contains("line 3"), ParseError);
        CHECK_THROWS_AS(parse_config_text("fading=nakagami:q=2"), ParseError);
        CHECK_THROWS_AS(parse_config_text("distance=uniform:25,15"), DomainError);
        CHECK_THROWS_AS(parse_config_text("sched=opp:h0=1"), ParseError);
    }

    TEST_CASE("value grammar")
    {
        CHECK(parse_fading("nakagami:m=2") == Distribution::gamma_unit_mean(2));
        CHECK(parse_fading("none") == Distribution::constant(1));
        CHECK(parse_distance("uniform:15,25") == Distribution::uniform(15, 25));
        CHECK_THROWS_AS(parse_distance("fixed:0.5"), DomainError);
        CHECK(parse_power("const:2").is_constant());
        CHECK(parse_power("aware:rho=1,upsilon=4").is_channel_aware());
        CHECK_FALSE(parse_sched("opp:h0=0.5,d0=20").is_always_on());
        CHECK(parse_count("2e5", "n") == 200000);
        CHECK_THROWS_AS(parse_count("2.5", "n"), ParseError);
    }

    TEST_CASE("model description round trip")
    {
        auto const text = "lambda=1e-04\nalpha=3.5\nfading=nakagami:m=2\n"
                          "distance=uniform:15,25\npower=aware:rho=1,upsilon=4\n"
                          "sched=opp:h0=0.5,d0=20\n";
        auto const m = parse_config_text(text).model();
        CHECK(m.describe() == text);
        CHECK(parse_config_text(m.describe()).model() == m);
    }

    TEST_CASE("unreadable file")
    {
        CHECK_THROWS_AS(parse_config("/nonexistent/meansir.cfg"), UsageError);
    }
}

//---------------------------------------------------------------------------//
TEST_SUITE("csv")
{
    TEST_CASE("bit-exact round trip")
    {
        SweepResult r;
        SweepRow a;
        a.param = 1e-4;
        a.mean_sir_analytic = 0.1 + 0.2;
        a.mean_sir_mc = 1.0 / 3;
        a.mean_sir_mc_se = 2.2250738585072014e-308;
        a.se_bound = 1.7976931348623157e308;
        a.n = 200000;
        a.seed = 18446744073709551615ull;
        a.radius_m = 1606.3;
        SweepRow b;
        b.param = 3.0000000000000001e-3;
        b.thrpt_cap = 5e-324;
        r.rows = {a, b};
        auto const text = format_csv(r);
        CHECK(text.rfind(std::string(sweep_csv_header) + "\n", 0) == 0);
        auto const parsed = parse_csv(text);
        REQUIRE(parsed.size() == 2);
        CHECK(parsed[0] == a);
        CHECK(parsed[1] == b);

        // Every row has all thirteen fields
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line))
            CHECK(std::count(line.begin(), line.end(), ',') == 12);
    }

    TEST_CASE("sweep file and metadata")
    {
        TempDir dir;
        auto const m = NetworkModel::make(1e-3, 4,
                                          Distribution::exponential_unit_mean(),
                                          Distribution::constant(15));
        SweepSettings s;
        s.sim.n = 0;
        s.theta = 0.5;
        auto const result = run_sweep(m, log_grid(1e-4, 1e-2, 5), s);
        write_sweep(dir.file("s.csv"), result);
        CHECK(read_sweep(dir.file("s.csv")) == result.rows);
        auto const meta = slurp(dir.file("s.csv.meta"));
        CHECK(meta.find("tool=meansir") != std::string::npos);
        CHECK(meta.find("model.alpha=4") != std::string::npos);

        CHECK_THROWS_AS(run_sweep(m, {1e-3, 1e-4}, s), DomainError);
        CHECK(parse_grid("1e-4:1e-2:3") == log_grid(1e-4, 1e-2, 3));
        CHECK_THROWS_AS(parse_grid("1e-4:1e-2"), ParseError);
    }
}

//---------------------------------------------------------------------------//
TEST_SUITE("commands")
{
    TEST_CASE("analytic example")
    {
        auto const r = run({"analytic", "--lambda", "1e-3", "--alpha", "4",
                            "--fading", "rayleigh", "--distance", "fixed:15",
                            "--power", "const:1"});
        CHECK(r.code == exit_ok);
        CHECK(std::stod(value_of(r.out, "mean_sir")) == Approx(1.6223).epsilon(1e-4));
        CHECK(value_of(r.out, "mean_sir").rfind("1.62227867728", 0) == 0);
        CHECK(value_of(r.out, "tight") == "false");
        CHECK(std::stod(value_of(r.out, "se_upper_bound"))
              == Approx(1.3909).epsilon(1e-4));
    }

    TEST_CASE("analytic power-control diagnostics")
    {
        auto const r = run({"analytic", "--lambda", "1e-4", "--distance",
                            "uniform:15,25", "--power", "aware:rho=1,upsilon=4"});
        CHECK(r.code == exit_ok);
        CHECK(std::stod(value_of(r.out, "mean_sir")) == Approx(125.43).epsilon(1e-4));
        CHECK(value_of(r.out, "pc.distance_moment_increases") == "false");
    }

    TEST_CASE("simulate is deterministic")
    {
        std::vector<std::string> const args{"simulate", "--seed", "42", "--n",
                                            "1000", "--lambda", "1e-3",
                                            "--theta", "0.5"};
        auto const a = run(args);
        auto const b = run(args);
        CHECK(a.code == exit_ok);
        CHECK(a.out == b.out);
        CHECK(a.out.find("mean_sir value=") != std::string::npos);

        auto threaded = args;
        threaded.insert(threaded.end(), {"--threads", "4"});
        CHECK(run(threaded).out == a.out);
    }

    TEST_CASE("sweep output")
    {
        TempDir dir;
        auto const r = run({"sweep", "--grid", "1e-4:1e-3:4", "--n", "0",
                            "--theta", "0.5", "--out", dir.file("sw.csv")});
        CHECK(r.code == exit_ok);
        auto const rows = read_sweep(dir.file("sw.csv"));
        REQUIRE(rows.size() == 4);
        for (std::size_t i = 1; i < rows.size(); ++i)
        {
            CHECK(rows[i].param > rows[i - 1].param);
            CHECK(*rows[i].mean_sir_analytic < *rows[i - 1].mean_sir_analytic);
            CHECK_FALSE(rows[i].mean_sir_mc.has_value());
        }
        auto const stdout_run = run({"sweep", "--grid", "1e-4:1e-3:4", "--n", "0",
                                     "--theta", "0.5"});
        CHECK(stdout_run.out == slurp(dir.file("sw.csv")));
    }

    TEST_CASE("fig1 analytic column decreases in m")
    {
        TempDir dir;
        auto const r = run({"fig1", "--n", "0", "--out", dir.file("fig1.csv")});
        REQUIRE(r.code == exit_ok);
        std::vector<std::vector<SweepRow>> series;
        for (double m : figure_m_grid)
        {
            std::ostringstream label;
            label << "m" << m;
            series.push_back(
                read_sweep(figure_series_path(dir.file("fig1"), label.str())));
        }
        auto const flat = read_sweep(figure_series_path(dir.file("fig1"),
                                                        "nofading"));
        CHECK(fs::exists(dir.file("fig1.gp")));
        for (std::size_t i = 0; i < flat.size(); ++i)
        {
            for (std::size_t k = 1; k < series.size(); ++k)
            {
                CHECK(*series[k][i].mean_sir_analytic
                      < *series[k - 1][i].mean_sir_analytic);
            }
            CHECK(*flat[i].mean_sir_analytic < *series.back()[i].mean_sir_analytic);
        }
    }

    TEST_CASE("fig2 analytic power control helps")
    {
        TempDir dir;
        auto const r = run({"fig2", "--n", "0", "--out", dir.file("fig2.csv")});
        REQUIRE(r.code == exit_ok);
        auto const aware = read_sweep(figure_series_path(dir.file("fig2"), "aware"));
        auto const cst = read_sweep(figure_series_path(dir.file("fig2"), "const"));
        REQUIRE(aware.size() == cst.size());
        for (std::size_t i = 0; i < aware.size(); ++i)
            CHECK(*aware[i].mean_sir_analytic > *cst[i].mean_sir_analytic);
    }

    TEST_CASE("optimize analytic mode")
    {
        auto const r = run({"optimize", "--theta", "0.5", "--bounds", "1e-5:1e-2"});
        CHECK(r.code == exit_ok);
        CHECK(std::stod(value_of(r.out, "lambda_star"))
              == Approx(3.632e-4).epsilon(2e-3));
        CHECK(value_of(r.out, "in_pi_lambda") == "true");
    }

    TEST_CASE("config file with flag overrides")
    {
        TempDir dir;
        std::ofstream(dir.file("m.cfg")) << "lambda=1e-3\nalpha=4\nfading=none\n";
        auto const r = run({"analytic", "--config", dir.file("m.cfg")});
        CHECK(r.code == exit_ok);
        CHECK(std::stod(value_of(r.out, "mean_sir")) == Approx(1.274135).epsilon(1e-6));
        auto const o = run({"analytic", "--config", dir.file("m.cfg"), "--fading",
                            "rayleigh"});
        CHECK(std::stod(value_of(o.out, "mean_sir")) == Approx(1.622279).epsilon(1e-6));
    }

    TEST_CASE("exit codes")
    {
        CHECK(run({}).code == exit_usage);
        CHECK(run({"bogus"}).code == exit_usage);
        CHECK(run({"analytic", "--frobnicate"}).code == exit_usage);
        CHECK(run({"analytic", "--lambda", "abc"}).code == exit_usage);
        auto const alpha = run({"analytic", "--alpha", "2"});
        CHECK(alpha.code == exit_domain);
        CHECK(alpha.err.find("alpha must exceed 2") != std::string::npos);
        CHECK(run({"analytic", "--lambda", "-1"}).code == exit_domain);
        CHECK(run({"analytic", "--config", "/nonexistent.cfg"}).code == exit_usage);
        CHECK(run({"optimize", "--theta", "0.5", "--bounds", "1e-6:1e-4"}).code
              == exit_domain);
        CHECK(run({"analytic", "--help"}).code == exit_ok);
    }
}
