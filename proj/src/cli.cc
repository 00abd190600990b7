//---------------------------------------------------------------------------//
//! \file cli.cc
//---------------------------------------------------------------------------//
#include "meansir/cli.hh"

#include <algorithm>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "meansir/analytics.hh"
#include "meansir/config.hh"
#include "meansir/errors.hh"
#include "meansir/figures.hh"
#include "meansir/format.hh"
#include "meansir/optimizer.hh"
#include "meansir/simulator.hh"
#include "meansir/sweep.hh"

namespace meansir
{
namespace
{
//---------------------------------------------------------------------------//
// Flag name and the config key it sets
constexpr std::pair<char const*, char const*> config_flags[] = {
    {"--lambda", "lambda"},
    {"--alpha", "alpha"},
    {"--fading", "fading"},
    {"--fading-g", "fading_g"},
    {"--distance", "distance"},
    {"--power", "power"},
    {"--sched", "sched"},
    {"--n", "n"},
    {"--seed", "seed"},
    {"--theta", "theta"},
    {"--radius", "radius"},
    {"--out", "out"},
};

struct Flags
{
    std::string config_path;
    std::map<std::string, std::string> values;
    unsigned threads = 1;
    std::string grid;
    std::string bounds;
    std::string ccdf = "auto";
};

void add_common(CLI::App& sub, Flags& flags)
{
    sub.add_option("--config", flags.config_path, "key=value config file");
    for (auto const& [flag, key] : config_flags)
    {
        sub.add_option(flag, flags.values[key],
                       std::string("sets config key '") + key + "'");
    }
    sub.add_option("--threads", flags.threads, "worker threads")
        ->check(CLI::PositiveNumber);
}

RunConfig resolve(CLI::App const& sub, Flags const& flags)
{
    RunConfig config;
    if (!flags.config_path.empty())
    {
        config = parse_config(flags.config_path);
    }
    RunConfig overrides;
    for (auto const& [flag, key] : config_flags)
    {
        if (sub.count(flag) > 0)
        {
            overrides.set(key, flags.values.at(key));
        }
    }
    config.merge(overrides);
    return config;
}

SimulationOptions sim_options(RunConfig const& config, unsigned threads)
{
    SimulationOptions opts;
    opts.n = config.n.value_or(opts.n);
    opts.seed = config.seed.value_or(opts.seed);
    opts.radius = config.radius.value_or(0);
    opts.threads = threads;
    return opts;
}

std::string yes_no(bool b)
{
    return b ? "true" : "false";
}

void print_estimate(std::ostream& out, std::string const& name, Estimate const& e)
{
    out << name << " value=" << shortest(e.value)
        << " std_error=" << shortest(e.std_error) << " n=" << e.n_realizations
        << " seed=" << e.seed << " radius_m=" << shortest(e.radius_m) << '\n';
}

//---------------------------------------------------------------------------//
// SUBCOMMANDS
//---------------------------------------------------------------------------//
void cmd_analytic(RunConfig const& config, std::ostream& out)
{
    NetworkModel const model = config.model();
    AnalyticReport const r = analytic_report(model);
    out << "mean_sir=" << shortest(r.mean_sir) << '\n'
        << "kappa=" << shortest(r.kappa) << '\n'
        << "se_upper_bound=" << shortest(r.se_upper_bound) << '\n'
        << "tightness_ratio=" << shortest(r.tightness_ratio) << '\n'
        << "tight=" << yes_no(r.tight) << '\n'
        << "lambda_s=" << shortest(r.lambda_s) << '\n'
        << "mean_inverse_interference="
        << shortest(r.mean_inverse_interference) << '\n';
    if (config.theta)
    {
        try
        {
            double const c = rayleigh_sir_ccdf(model, *config.theta);
            out << "ccdf=" << shortest(c) << '\n'
                << "thrpt_cap="
                << shortest(model.intensity() * c * std::log2(1 + r.mean_sir))
                << '\n';
        }
        catch (UnsupportedModelError const&)
        {
            out << "ccdf=unavailable\n";
        }
    }
    if (auto const* ca = std::get_if<PowerControlLaw::ChannelAware>(
            &model.power().kind()))
    {
        PowerControlConditions const pc
            = power_control_conditions(model, ca->rho, ca->upsilon);
        out << "pc.rho_at_least_minus_one=" << yes_no(pc.rho_at_least_minus_one)
            << '\n'
            << "pc.gain_moment_increases=" << yes_no(pc.gain_moment_increases)
            << '\n'
            << "pc.upsilon_at_least_alpha=" << yes_no(pc.upsilon_at_least_alpha)
            << '\n'
            << "pc.distance_moment_increases="
            << yes_no(pc.distance_moment_increases) << '\n'
            << "pc.all_conditions=" << yes_no(pc.all_conditions) << '\n'
            << "pc.mean_sir_constant=" << shortest(pc.mean_sir_constant) << '\n'
            << "pc.improvement_ratio=" << shortest(pc.improvement_ratio) << '\n';
        if (pc.scheduling_guideline)
        {
            out << "pc.scheduling_guideline="
                << yes_no(*pc.scheduling_guideline) << '\n';
        }
    }
}

void cmd_simulate(RunConfig const& config, unsigned threads, std::ostream& out)
{
    NetworkModel const model = config.model();
    SimulationBatch const batch(model, sim_options(config, threads));
    print_estimate(out, "mean_sir", batch.mean_sir());
    print_estimate(out, "spectrum_efficiency", batch.spectrum_efficiency());
    if (config.theta)
    {
        print_estimate(out, "ccdf", batch.ccdf(*config.theta));
    }
    if (config.out)
    {
        SweepResult result;
        result.rows.push_back(make_row(model, &batch, config.theta));
        result.metadata.model = model.describe();
        result.metadata.seed = batch.seed();
        result.metadata.n = batch.size();
        result.metadata.timestamp = utc_timestamp();
        write_sweep(*config.out, result);
        out << "wrote " << *config.out << '\n';
    }
}

void cmd_sweep(RunConfig const& config,
               Flags const& flags,
               std::ostream& out)
{
    std::vector<double> const grid = parse_grid(
        flags.grid.empty() ? std::string("1e-4:1e-2:9") : flags.grid);
    SweepSettings settings;
    settings.sim = sim_options(config, flags.threads);
    settings.theta = config.theta;
    SweepResult const result = run_sweep(config.model(), grid, settings);
    if (config.out)
    {
        write_sweep(*config.out, result);
        out << "wrote " << *config.out << '\n';
    }
    else
    {
        out << format_csv(result);
    }
}

void cmd_optimize(RunConfig const& config,
                  Flags const& flags,
                  std::ostream& out)
{
    NetworkModel const model = config.model();
    double const theta = config.theta.value_or(figure_theta);
    double lo = default_lambda_lo;
    double hi = default_lambda_hi;
    if (!flags.bounds.empty())
    {
        auto const colon = flags.bounds.find(':');
        if (colon == std::string::npos)
        {
            throw UsageError("--bounds must be lo:hi");
        }
        lo = parse_number(flags.bounds.substr(0, colon), "lower bound");
        hi = parse_number(flags.bounds.substr(colon + 1), "upper bound");
    }

    std::string mode = flags.ccdf;
    if (mode == "auto")
    {
        try
        {
            rayleigh_sir_ccdf(model, theta);
            mode = "analytic";
        }
        catch (UnsupportedModelError const&)
        {
            mode = "simulated";
        }
    }

    std::optional<OptimizationResult> r;
    if (mode == "analytic")
    {
        r = maximize_throughput(model, theta, RayleighCcdf{}, lo, hi);
    }
    else if (mode == "simulated")
    {
        std::vector<double> const grid
            = flags.grid.empty() ? log_grid(lo, hi, 16) : parse_grid(flags.grid);
        SimulatedCcdf const ccdf = build_simulated_ccdf(
            model, theta, grid, sim_options(config, flags.threads));
        r = maximize_throughput(model, theta, ccdf, std::max(lo, grid.front()),
                                std::min(hi, grid.back()));
    }
    else
    {
        throw UsageError("--ccdf must be auto, analytic or simulated");
    }

    out << "ccdf_source=" << mode << '\n'
        << "theta=" << shortest(theta) << '\n'
        << "lambda_star=" << shortest(r->lambda_star) << '\n'
        << "t_star=" << shortest(r->t_star) << '\n'
        << "in_pi_lambda=" << yes_no(r->in_pi_lambda) << '\n'
        << "bracket_lo=" << shortest(r->bracket.first) << '\n'
        << "bracket_hi=" << shortest(r->bracket.second) << '\n'
        << "evaluations=" << r->evaluations << '\n'
        << "unimodal=" << yes_no(r->certificate.unimodal) << '\n'
        << "peak_index=" << r->certificate.peak_index << '\n';
    if (r->certificate.violation_index)
    {
        out << "violation_index=" << *r->certificate.violation_index << '\n';
    }
    out << "curvature_term=" << shortest(r->membership.curvature_term) << '\n'
        << "slope_term=" << shortest(r->membership.slope_term) << '\n'
        << "ratio_term=" << shortest(r->membership.ratio_term) << '\n';
}

void cmd_figure(int number,
                RunConfig const& config,
                Flags const& flags,
                std::ostream& out)
{
    std::vector<double> const grid
        = flags.grid.empty() ? std::vector<double>{} : parse_grid(flags.grid);
    Figure const fig = run_figure(number, config, grid, flags.threads);
    std::string const target
        = config.out.value_or("fig" + std::to_string(number) + ".csv");
    for (auto const& path : write_figure(fig, target))
    {
        out << "wrote " << path << '\n';
    }
}

}  // namespace

//---------------------------------------------------------------------------//
int run_command(std::vector<std::string> const& args,
                std::ostream& out,
                std::ostream& err)
{
    CLI::App app{"Mean SIR analysis and simulation of Poisson wireless networks",
                 "meansir"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    struct Sub
    {
        char const* name;
        char const* help;
    };
    constexpr Sub subs[] = {
        {"analytic", "closed-form metrics as key=value lines"},
        {"simulate", "Monte Carlo estimates (CSV with --out)"},
        {"sweep", "intensity sweep written as CSV"},
        {"optimize", "throughput-maximizing intensity"},
        {"fig1", "mean SIR vs intensity for several fading severities"},
        {"fig2", "mean SIR with and without channel-aware power"},
        {"fig3", "outage with and without channel-aware power"},
        {"fig4", "throughput capacity and area spectrum efficiency"},
    };
    std::map<std::string, Flags> flags;
    std::map<std::string, CLI::App*> apps;
    for (auto const& s : subs)
    {
        Flags& f = flags[s.name];
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        add_common(*sub, f);
        std::string const name = s.name;
        if (name == "sweep" || name == "optimize" || name.starts_with("fig"))
        {
            sub->add_option("--grid", f.grid, "log-spaced intensities lo:hi:k");
        }
        if (name == "optimize")
        {
            sub->add_option("--bounds", f.bounds, "search interval lo:hi");
            sub->add_option("--ccdf", f.ccdf, "auto, analytic or simulated");
        }
        apps[name] = sub;
    }

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (CLI::CallForHelp const&)
    {
        out << app.help();
        return exit_ok;
    }
    catch (CLI::CallForAllHelp const&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    }
    catch (CLI::ParseError const& e)
    {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }

    try
    {
        for (auto const& [name, sub] : apps)
        {
            if (!sub->parsed())
                continue;
            Flags const& f = flags.at(name);
            RunConfig const config = resolve(*sub, f);
            if (name == "analytic")
                cmd_analytic(config, out);
            else if (name == "simulate")
                cmd_simulate(config, f.threads, out);
            else if (name == "sweep")
                cmd_sweep(config, f, out);
            else if (name == "optimize")
                cmd_optimize(config, f, out);
            else
                cmd_figure(name.back() - '0', config, f, out);
        }
    }
    catch (ParseError const& e)
    {
        err << "parse error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (UsageError const& e)
    {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (DomainError const& e)
    {
        err << "domain error: " << e.what() << '\n';
        return exit_domain;
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_ok;
}

//---------------------------------------------------------------------------//
}  // namespace meansir
