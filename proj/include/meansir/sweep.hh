//---------------------------------------------------------------------------//
//! \file meansir/sweep.hh
//! Parameter sweeps and their CSV tables.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "models.hh"
#include "simulator.hh"

namespace meansir
{
//---------------------------------------------------------------------------//
inline constexpr char tool_version[] = "meansir 1.0.0";

//! One row of a sweep table; unset fields are written as empty CSV cells.
struct SweepRow
{
    double param = 0;
    std::optional<double> mean_sir_analytic;
    std::optional<double> mean_sir_mc;
    std::optional<double> mean_sir_mc_se;
    std::optional<double> ccdf_mc;
    std::optional<double> ccdf_mc_se;
    std::optional<double> se_bound;
    std::optional<double> se_mc;
    std::optional<double> se_mc_se;
    std::optional<double> thrpt_cap;
    std::optional<std::uint64_t> n;
    std::optional<std::uint64_t> seed;
    std::optional<double> radius_m;

    bool operator==(SweepRow const&) const = default;
};

struct SweepMetadata
{
    std::string model;  //!< model text of the first row
    std::uint64_t seed = 0;
    std::uint64_t n = 0;
    std::string timestamp;  //!< UTC, ISO 8601
    std::string tool = tool_version;
    std::string note;
};

struct SweepResult
{
    std::vector<SweepRow> rows;
    SweepMetadata metadata;
};

//! Fixed CSV header
inline constexpr char sweep_csv_header[]
    = "param,mean_sir_analytic,mean_sir_mc,mean_sir_mc_se,ccdf_mc,"
      "ccdf_mc_se,se_bound,se_mc,se_mc_se,thrpt_cap,n,seed,radius_m";

//---------------------------------------------------------------------------//
struct SweepSettings
{
    SimulationOptions sim;  //!< sim.n == 0 skips the Monte Carlo columns
    std::optional<double> theta;
};

// Analytic and simulated metrics of one model; param is its intensity
SweepRow evaluate_point(NetworkModel const& model, SweepSettings const& s);

// Row from an existing batch (null for analytic columns only)
SweepRow make_row(NetworkModel const& model,
                  SimulationBatch const* batch,
                  std::optional<double> theta);

// Evaluate the model at each intensity (strictly increasing)
SweepResult run_sweep(NetworkModel const& model,
                      std::vector<double> const& lambdas,
                      SweepSettings const& s);

// k log-spaced values from lo to hi inclusive
std::vector<double> log_grid(double lo, double hi, int k);

// Parse "lo:hi:k" into a log-spaced grid
std::vector<double> parse_grid(std::string const& text);

//---------------------------------------------------------------------------//
std::string format_csv(SweepResult const& result);
std::string format_metadata(SweepMetadata const& meta);
std::vector<SweepRow> parse_csv(std::string const& text);

// Write text to path through a temporary file and a rename
void write_file_atomic(std::string const& path, std::string const& text);

// Write the CSV and its "<path>.meta" sidecar
void write_sweep(std::string const& path, SweepResult const& result);
std::vector<SweepRow> read_sweep(std::string const& path);

std::string utc_timestamp();

//---------------------------------------------------------------------------//
}  // namespace meansir
