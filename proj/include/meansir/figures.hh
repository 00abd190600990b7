//---------------------------------------------------------------------------//
//! \file meansir/figures.hh
//! Preset sweeps for the four standard figures, with plot scripts.
//---------------------------------------------------------------------------//
#pragma once

#include <string>
#include <vector>

#include "config.hh"
#include "sweep.hh"

namespace meansir
{
//---------------------------------------------------------------------------//
struct FigureSeries
{
    std::string label;  //!< file suffix, e.g. "m2" or "aware"
    SweepResult result;
};

struct Figure
{
    int number;
    std::vector<FigureSeries> series;
    std::vector<double> lambdas;
};

//! Nakagami shapes plotted by the fading preset
inline std::vector<double> const figure_m_grid = {0.5, 1, 2, 4, 8};
inline constexpr double figure_theta = 0.5;

/*!
 * Run preset 1-4.
 *
 * 1: alpha=4, D=15, constant power; one series per m plus no fading.
 * 2, 3: alpha=4, D~U[15,25], theta=0.5; constant vs channel-aware power
 *    (rho=1, upsilon=4 unless an aware power law is configured).
 * 4: as 2 with Nakagami m=2 by default and a wider intensity range.
 *
 * The fading law of presets 2-4, the grid, n, seed and radius are taken
 * from \c config when set.
 */
Figure run_figure(int number,
                  RunConfig const& config,
                  std::vector<double> const& grid,
                  unsigned threads);

// Default intensity grid of each preset
std::vector<double> default_figure_grid(int number);

// Series CSVs are "<stem>_<label>.csv"; the script is "<stem>.gp"
std::string figure_series_path(std::string const& stem, std::string const& label);
std::string figure_script(Figure const& figure, std::string const& stem);

// Write every series and the plot script; returns the written paths
std::vector<std::string> write_figure(Figure const& figure, std::string const& out);

//---------------------------------------------------------------------------//
}  // namespace meansir
