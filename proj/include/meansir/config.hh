//---------------------------------------------------------------------------//
//! \file meansir/config.hh
//! Key=value model and run configuration.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "models.hh"

namespace meansir
{
//---------------------------------------------------------------------------//
/*!
 * Partially specified model plus run parameters.
 *
 * Model keys: lambda, alpha, fading, fading_g, distance, power, sched.
 * Run keys: n, seed, theta, radius (auto or meters), out.
 * Unset model keys fall back to the defaults documented in the README.
 */
struct RunConfig
{
    std::optional<double> lambda;
    std::optional<double> alpha;
    std::optional<Distribution> fading;
    std::optional<Distribution> fading_g;
    std::optional<Distribution> distance;
    std::optional<PowerControlLaw> power;
    std::optional<SchedulingPolicy> sched;

    std::optional<std::uint64_t> n;
    std::optional<std::uint64_t> seed;
    std::optional<double> theta;
    std::optional<double> radius;  //!< 0 means auto
    std::optional<std::string> out;

    //! Parse and store one entry; throws ParseError or DomainError
    void set(std::string_view key, std::string_view value);

    //! Overwrite with every field set in \c other
    void merge(RunConfig const& other);

    //! Build the model, filling unset keys with defaults
    NetworkModel model() const;
};

inline constexpr double default_lambda = 1e-3;
inline constexpr double default_alpha = 4;
inline constexpr double default_distance = 15;

bool is_known_key(std::string_view key);

// Parse key=value text; '#' starts a comment, blank lines are ignored
RunConfig parse_config_text(std::string_view text);

// Parse a configuration file
RunConfig parse_config(std::string const& path);

//---------------------------------------------------------------------------//
// Value parsers shared with the command line
double parse_number(std::string_view text, std::string_view what);
std::uint64_t parse_count(std::string_view text, std::string_view what);
Distribution parse_fading(std::string_view text);
Distribution parse_distance(std::string_view text);
PowerControlLaw parse_power(std::string_view text);
SchedulingPolicy parse_sched(std::string_view text);
double parse_radius(std::string_view text);

//---------------------------------------------------------------------------//
}  // namespace meansir
