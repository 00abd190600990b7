//---------------------------------------------------------------------------//
//! \file figures.cc
//---------------------------------------------------------------------------//
#include "meansir/figures.hh"

#include <filesystem>
#include <sstream>

#include "meansir/errors.hh"
#include "meansir/format.hh"

namespace meansir
{
namespace
{
//---------------------------------------------------------------------------//
std::string grid_note(std::vector<double> const& grid)
{
    return "intensity grid " + shortest(grid.front()) + ".."
           + shortest(grid.back()) + " (" + std::to_string(grid.size())
           + " log-spaced points) chosen by this tool";
}

std::string m_label(double m)
{
    return "m" + shortest(m);
}

// Path of a series file relative to the script's directory
std::string basename(std::string const& path)
{
    return std::filesystem::path(path).filename().string();
}

}  // namespace

//---------------------------------------------------------------------------//
std::vector<double> default_figure_grid(int number)
{
    switch (number)
    {
        case 1:
            return log_grid(1e-4, 1e-2, 9);
        case 2:
        case 3:
            return log_grid(1e-4, 1e-3, 5);
        case 4:
            return log_grid(1e-5, 1e-2, 16);
    }
    throw UsageError("figure presets are numbered 1 to 4");
}

Figure run_figure(int number,
                  RunConfig const& config,
                  std::vector<double> const& grid,
                  unsigned threads)
{
    Figure fig{number, {}, grid.empty() ? default_figure_grid(number) : grid};

    SweepSettings settings;
    settings.sim.n = config.n.value_or(SimulationOptions{}.n);
    settings.sim.seed = config.seed.value_or(SimulationOptions{}.seed);
    settings.sim.radius = config.radius.value_or(0);
    settings.sim.threads = threads;
    settings.theta = config.theta.value_or(figure_theta);

    auto add = [&](std::string label, NetworkModel const& model) {
        SweepResult r = run_sweep(model, fig.lambdas, settings);
        r.metadata.note = grid_note(fig.lambdas);
        fig.series.push_back({std::move(label), std::move(r)});
    };

    if (number == 1)
    {
        auto const d = Distribution::constant(15);
        for (double m : figure_m_grid)
        {
            add(m_label(m),
                NetworkModel::make(fig.lambdas.front(), 4,
                                   Distribution::gamma_unit_mean(m), d));
        }
        add("nofading", NetworkModel::make(fig.lambdas.front(), 4,
                                           Distribution::constant(1), d));
        return fig;
    }
    if (number < 1 || number > 4)
    {
        throw UsageError("figure presets are numbered 1 to 4");
    }

    Distribution const fading = config.fading.value_or(
        number == 4 ? Distribution::gamma_unit_mean(2)
                    : Distribution::exponential_unit_mean());
    PowerControlLaw aware = PowerControlLaw::channel_aware(1, 4);
    if (config.power && config.power->is_channel_aware())
    {
        aware = *config.power;
    }
    NetworkModel const base = NetworkModel::make(
        fig.lambdas.front(), 4, fading, Distribution::uniform(15, 25));
    add("const", base);
    add("aware", base.with_power(aware));
    return fig;
}

//---------------------------------------------------------------------------//
std::string figure_series_path(std::string const& stem, std::string const& label)
{
    return stem + "_" + label + ".csv";
}

std::string figure_script(Figure const& fig, std::string const& stem)
{
    // Columns: 1 param, 2 mean_sir_analytic, 3 mean_sir_mc, 4 its se,
    // 5 ccdf_mc, 6 its se, 7 se_bound, 8 se_mc, 9 its se, 10 thrpt_cap
    std::ostringstream os;
    os << "# gnuplot script; run from the directory holding the CSV files\n"
       << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set logscale x\n"
       << "set xlabel 'intensity lambda (1/m^2)'\n"
       << "set terminal pngcairo size 800,500\n"
       << "set output '" << basename(stem) << ".png'\n";
    auto file = [&](FigureSeries const& s) {
        return "'" + basename(figure_series_path(stem, s.label)) + "'";
    };

    std::string plot = "plot ";
    auto append = [&plot](std::string const& item) {
        if (plot.size() > 5)
            plot += ", \\\n     ";
        plot += item;
    };
    switch (fig.number)
    {
        case 1:
        case 2:
            os << "set ylabel 'mean SIR'\nset logscale y\n";
            for (auto const& s : fig.series)
            {
                if (fig.number == 1)
                    append(file(s) + " using 1:2 with lines title '"
                           + s.label + " analytic'");
                append(file(s) + " using 1:3:4 with yerrorbars title '"
                       + s.label + " simulated'");
            }
            break;
        case 3:
            os << "set ylabel 'outage probability'\n";
            for (auto const& s : fig.series)
            {
                append(file(s) + " using 1:(1-$5):6 with yerrorlines title '"
                       + s.label + "'");
            }
            break;
        case 4:
            os << "set ylabel 'bits/s/Hz/m^2'\n";
            for (auto const& s : fig.series)
            {
                append(file(s) + " using 1:10 with lines title '" + s.label
                       + " throughput capacity'");
                append(file(s) + " using 1:($1*$8*$5) with linespoints title '"
                       + s.label + " area spectrum efficiency'");
            }
            break;
    }
    os << plot << '\n';
    return os.str();
}

std::vector<std::string> write_figure(Figure const& fig, std::string const& out)
{
    std::string stem = out;
    if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0)
    {
        stem.resize(stem.size() - 4);
    }
    std::vector<std::string> written;
    for (auto const& s : fig.series)
    {
        std::string const path = figure_series_path(stem, s.label);
        write_sweep(path, s.result);
        written.push_back(path);
    }
    std::string const script = stem + ".gp";
    write_file_atomic(script, figure_script(fig, stem));
    written.push_back(script);
    return written;
}

//---------------------------------------------------------------------------//
}  // namespace meansir
