//---------------------------------------------------------------------------//
//! \file sweep.cc
//---------------------------------------------------------------------------//
#include "meansir/sweep.hh"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "meansir/analytics.hh"
#include "meansir/config.hh"
#include "meansir/errors.hh"
#include "meansir/format.hh"

namespace meansir
{
namespace
{
//---------------------------------------------------------------------------//
template<class T>
void put(std::string& line, std::optional<T> const& v)
{
    line += ',';
    if (!v)
        return;
    if constexpr (std::is_same_v<T, double>)
        line += shortest(*v);
    else
        line += std::to_string(*v);
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> parts;
    while (true)
    {
        auto const pos = line.find(sep);
        parts.push_back(line.substr(0, pos));
        if (pos == std::string_view::npos)
            break;
        line = line.substr(pos + 1);
    }
    return parts;
}

std::optional<double> opt_number(std::string_view s, char const* what)
{
    if (s.empty())
        return std::nullopt;
    return parse_number(s, what);
}

std::optional<std::uint64_t> opt_count(std::string_view s, char const* what)
{
    if (s.empty())
        return std::nullopt;
    return parse_count(s, what);
}

}  // namespace

//---------------------------------------------------------------------------//
// SWEEPS
//---------------------------------------------------------------------------//
SweepRow make_row(NetworkModel const& model,
                  SimulationBatch const* batch,
                  std::optional<double> theta)
{
    SweepRow row;
    row.param = model.intensity();
    double const mean = mean_sir(model);
    row.mean_sir_analytic = mean;
    row.se_bound = spectrum_efficiency_upper(model).bits;

    std::optional<double> ccdf;
    if (theta)
    {
        try
        {
            ccdf = rayleigh_sir_ccdf(model, *theta);
        }
        catch (UnsupportedModelError const&)
        {
        }
    }

    if (batch)
    {
        Estimate const m = batch->mean_sir();
        Estimate const se = batch->spectrum_efficiency();
        row.mean_sir_mc = m.value;
        row.mean_sir_mc_se = m.std_error;
        row.se_mc = se.value;
        row.se_mc_se = se.std_error;
        if (theta)
        {
            Estimate const c = batch->ccdf(*theta);
            row.ccdf_mc = c.value;
            row.ccdf_mc_se = c.std_error;
            if (!ccdf)
                ccdf = c.value;
        }
        row.n = batch->size();
        row.seed = batch->seed();
        row.radius_m = batch->radius();
    }
    if (ccdf)
    {
        row.thrpt_cap = model.intensity() * *ccdf * std::log2(1 + mean);
    }
    return row;
}

SweepRow evaluate_point(NetworkModel const& model, SweepSettings const& s)
{
    if (s.sim.n == 0)
    {
        return make_row(model, nullptr, s.theta);
    }
    SimulationBatch const batch(model, s.sim);
    return make_row(model, &batch, s.theta);
}

SweepResult run_sweep(NetworkModel const& model,
                      std::vector<double> const& lambdas,
                      SweepSettings const& s)
{
    if (lambdas.empty())
    {
        throw UsageError("sweep needs at least one intensity");
    }
    SweepResult result;
    for (std::size_t i = 0; i < lambdas.size(); ++i)
    {
        if (i > 0 && !(lambdas[i] > lambdas[i - 1]))
        {
            throw DomainError("sweep intensities must be strictly increasing");
        }
        result.rows.push_back(
            evaluate_point(model.with_intensity(lambdas[i]), s));
    }
    result.metadata.model = model.with_intensity(lambdas.front()).describe();
    result.metadata.seed = s.sim.seed;
    result.metadata.n = s.sim.n;
    result.metadata.timestamp = utc_timestamp();
    return result;
}

std::vector<double> log_grid(double lo, double hi, int k)
{
    if (!(lo > 0) || !(hi > lo) || k < 2)
    {
        if (k == 1 && lo > 0 && hi == lo)
            return {lo};
        throw DomainError("grid needs 0 < lo < hi and at least 2 points");
    }
    std::vector<double> grid(k);
    double const a = std::log(lo);
    double const b = std::log(hi);
    for (int i = 0; i < k; ++i)
    {
        grid[i] = i == 0 ? lo : i == k - 1 ? hi : std::exp(a + (b - a) * i / (k - 1));
    }
    return grid;
}

std::vector<double> parse_grid(std::string const& text)
{
    auto const parts = split(text, ':');
    if (parts.size() != 3)
    {
        throw ParseError("grid must be lo:hi:k, got '" + text + "'");
    }
    auto const k = parse_count(parts[2], "grid size");
    return log_grid(parse_number(parts[0], "grid lower bound"),
                    parse_number(parts[1], "grid upper bound"),
                    static_cast<int>(k));
}

//---------------------------------------------------------------------------//
// CSV
//---------------------------------------------------------------------------//
std::string format_csv(SweepResult const& result)
{
    std::string text = sweep_csv_header;
    text += '\n';
    for (auto const& r : result.rows)
    {
        std::string line = shortest(r.param);
        put(line, r.mean_sir_analytic);
        put(line, r.mean_sir_mc);
        put(line, r.mean_sir_mc_se);
        put(line, r.ccdf_mc);
        put(line, r.ccdf_mc_se);
        put(line, r.se_bound);
        put(line, r.se_mc);
        put(line, r.se_mc_se);
        put(line, r.thrpt_cap);
        put(line, r.n);
        put(line, r.seed);
        put(line, r.radius_m);
        text += line;
        text += '\n';
    }
    return text;
}

std::string format_metadata(SweepMetadata const& meta)
{
    std::ostringstream os;
    os << "tool=" << meta.tool << '\n'
       << "timestamp=" << meta.timestamp << '\n'
       << "seed=" << meta.seed << '\n'
       << "n=" << meta.n << '\n';
    if (!meta.note.empty())
    {
        os << "note=" << meta.note << '\n';
    }
    std::istringstream model(meta.model);
    for (std::string line; std::getline(model, line);)
    {
        os << "model." << line << '\n';
    }
    return os.str();
}

std::vector<SweepRow> parse_csv(std::string const& text)
{
    auto lines = split(text, '\n');
    if (lines.empty() || lines.front() != sweep_csv_header)
    {
        throw ParseError("sweep CSV header mismatch", 1);
    }
    std::vector<SweepRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i)
    {
        if (lines[i].empty())
            continue;
        int const line_no = static_cast<int>(i + 1);
        auto const f = split(lines[i], ',');
        if (f.size() != 13)
        {
            throw ParseError("expected 13 fields", line_no);
        }
        try
        {
            SweepRow r;
            r.param = parse_number(f[0], "param");
            r.mean_sir_analytic = opt_number(f[1], "mean_sir_analytic");
            r.mean_sir_mc = opt_number(f[2], "mean_sir_mc");
            r.mean_sir_mc_se = opt_number(f[3], "mean_sir_mc_se");
            r.ccdf_mc = opt_number(f[4], "ccdf_mc");
            r.ccdf_mc_se = opt_number(f[5], "ccdf_mc_se");
            r.se_bound = opt_number(f[6], "se_bound");
            r.se_mc = opt_number(f[7], "se_mc");
            r.se_mc_se = opt_number(f[8], "se_mc_se");
            r.thrpt_cap = opt_number(f[9], "thrpt_cap");
            r.n = opt_count(f[10], "n");
            r.seed = opt_count(f[11], "seed");
            r.radius_m = opt_number(f[12], "radius_m");
            rows.push_back(r);
        }
        catch (ParseError const& e)
        {
            throw ParseError(e.what(), line_no);
        }
    }
    return rows;
}

void write_file_atomic(std::string const& path, std::string const& text)
{
    std::string const tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << text;
        out.flush();
        if (!out)
        {
            std::remove(tmp.c_str());
            throw Error("cannot write '" + tmp + "'");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
    {
        std::remove(tmp.c_str());
        throw Error("cannot rename '" + tmp + "' to '" + path + "'");
    }
}

void write_sweep(std::string const& path, SweepResult const& result)
{
    write_file_atomic(path, format_csv(result));
    write_file_atomic(path + ".meta", format_metadata(result.metadata));
}

std::vector<SweepRow> read_sweep(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw UsageError("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str());
}

std::string utc_timestamp()
{
    std::time_t const now
        = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

//---------------------------------------------------------------------------//
}  // namespace meansir
