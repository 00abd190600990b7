//---------------------------------------------------------------------------//
//! \file config.cc
//---------------------------------------------------------------------------//
#include "meansir/config.hh"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "meansir/errors.hh"

namespace meansir
{
namespace
{
//---------------------------------------------------------------------------//
constexpr std::array<std::string_view, 12> known_keys = {
    "lambda", "alpha", "fading", "fading_g", "distance", "power",
    "sched",  "n",     "seed",   "theta",    "radius",   "out"};

std::string_view trim(std::string_view s)
{
    auto const first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    auto const last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool starts_with(std::string_view s, std::string_view prefix, std::string_view& rest)
{
    if (s.substr(0, prefix.size()) != prefix)
        return false;
    rest = s.substr(prefix.size());
    return true;
}

// Parse "k1=v1,k2=v2" with exactly the expected keys
std::map<std::string, double, std::less<>>
parse_fields(std::string_view text,
             std::vector<std::string_view> const& expected,
             std::string_view what)
{
    std::map<std::string, double, std::less<>> fields;
    while (!text.empty())
    {
        auto const comma = text.find(',');
        std::string_view item = trim(text.substr(0, comma));
        text = comma == std::string_view::npos ? std::string_view{}
                                               : text.substr(comma + 1);
        auto const eq = item.find('=');
        if (eq == std::string_view::npos)
        {
            throw ParseError("expected name=value in " + std::string(what)
                             + ", got '" + std::string(item) + "'");
        }
        std::string_view const name = trim(item.substr(0, eq));
        if (std::find(expected.begin(), expected.end(), name) == expected.end())
        {
            throw ParseError("unexpected field '" + std::string(name) + "' in "
                             + std::string(what));
        }
        if (!fields.emplace(std::string(name),
                            parse_number(item.substr(eq + 1), name))
                 .second)
        {
            throw ParseError("duplicate field '" + std::string(name) + "' in "
                             + std::string(what));
        }
    }
    for (auto name : expected)
    {
        if (fields.find(name) == fields.end())
        {
            throw ParseError("missing field '" + std::string(name) + "' in "
                             + std::string(what));
        }
    }
    return fields;
}

[[noreturn]] void bad_value(std::string_view what,
                            std::string_view text,
                            std::string_view forms)
{
    throw ParseError("invalid " + std::string(what) + " '" + std::string(text)
                     + "' (expected " + std::string(forms) + ")");
}

}  // namespace

//---------------------------------------------------------------------------//
// VALUE PARSERS
//---------------------------------------------------------------------------//
double parse_number(std::string_view text, std::string_view what)
{
    text = trim(text);
    double value = 0;
    auto const* end = text.data() + text.size();
    auto const r = std::from_chars(text.data(), end, value);
    if (text.empty() || r.ec != std::errc{} || r.ptr != end)
    {
        throw ParseError("malformed number '" + std::string(text) + "' for "
                         + std::string(what));
    }
    return value;
}

std::uint64_t parse_count(std::string_view text, std::string_view what)
{
    text = trim(text);
    std::uint64_t value = 0;
    auto const* end = text.data() + text.size();
    auto const r = std::from_chars(text.data(), end, value);
    if (r.ec == std::errc{} && r.ptr == end && !text.empty())
    {
        return value;
    }
    // Accept integral values written in floating-point form, such as 2e5
    double const x = parse_number(text, what);
    if (!(x >= 0) || x != std::floor(x) || x > 1.8e19)
    {
        throw ParseError("expected a nonnegative integer for "
                         + std::string(what) + ", got '" + std::string(text)
                         + "'");
    }
    return static_cast<std::uint64_t>(x);
}

Distribution parse_fading(std::string_view text)
{
    text = trim(text);
    std::string_view rest;
    if (text == "rayleigh")
        return Distribution::exponential_unit_mean();
    if (text == "none")
        return Distribution::constant(1);
    if (starts_with(text, "nakagami:", rest))
    {
        auto f = parse_fields(rest, {"m"}, "nakagami fading");
        return Distribution::gamma_unit_mean(f["m"]);
    }
    bad_value("fading", text, "rayleigh, none or nakagami:m=<f>");
}

Distribution parse_distance(std::string_view text)
{
    text = trim(text);
    std::string_view rest;
    if (starts_with(text, "fixed:", rest))
    {
        double const d = parse_number(rest, "fixed distance");
        if (!(d >= 1))
        {
            throw DomainError("link distance must be at least 1");
        }
        return Distribution::constant(d);
    }
    if (starts_with(text, "uniform:", rest))
    {
        auto const comma = rest.find(',');
        if (comma == std::string_view::npos)
            bad_value("distance", text, "uniform:<lo>,<hi>");
        return Distribution::uniform(
            parse_number(rest.substr(0, comma), "distance lower bound"),
            parse_number(rest.substr(comma + 1), "distance upper bound"));
    }
    bad_value("distance", text, "fixed:<d> or uniform:<lo>,<hi>");
}

PowerControlLaw parse_power(std::string_view text)
{
    text = trim(text);
    std::string_view rest;
    if (starts_with(text, "const:", rest))
        return PowerControlLaw::constant(parse_number(rest, "constant power"));
    if (starts_with(text, "aware:", rest))
    {
        auto f = parse_fields(rest, {"rho", "upsilon"}, "channel-aware power");
        return PowerControlLaw::channel_aware(f["rho"], f["upsilon"]);
    }
    bad_value("power", text, "const:<p> or aware:rho=<f>,upsilon=<f>");
}

SchedulingPolicy parse_sched(std::string_view text)
{
    text = trim(text);
    std::string_view rest;
    if (text == "none")
        return SchedulingPolicy::always_on();
    if (starts_with(text, "opp:", rest))
    {
        auto f = parse_fields(rest, {"h0", "d0"}, "opportunistic scheduling");
        return SchedulingPolicy::opportunistic(f["h0"], f["d0"]);
    }
    bad_value("sched", text, "none or opp:h0=<f>,d0=<f>");
}

double parse_radius(std::string_view text)
{
    text = trim(text);
    if (text == "auto")
        return 0;
    double const r = parse_number(text, "radius");
    if (!(r > 0) || !std::isfinite(r))
    {
        throw DomainError("simulation radius must be positive (or auto)");
    }
    return r;
}

//---------------------------------------------------------------------------//
// RUN CONFIG
//---------------------------------------------------------------------------//
bool is_known_key(std::string_view key)
{
    return std::find(known_keys.begin(), known_keys.end(), key)
           != known_keys.end();
}

void RunConfig::set(std::string_view key, std::string_view value)
{
    if (key == "lambda")
    {
        double const v = parse_number(value, key);
        if (!(v > 0) || !std::isfinite(v))
            throw DomainError("lambda must be positive and finite");
        lambda = v;
    }
    else if (key == "alpha")
    {
        double const v = parse_number(value, key);
        if (!(v > 2) || !std::isfinite(v))
            throw DomainError("alpha must exceed 2");
        alpha = v;
    }
    else if (key == "fading")
        fading = parse_fading(value);
    else if (key == "fading_g")
        fading_g = parse_fading(value);
    else if (key == "distance")
        distance = parse_distance(value);
    else if (key == "power")
        power = parse_power(value);
    else if (key == "sched")
        sched = parse_sched(value);
    else if (key == "n")
        n = parse_count(value, key);
    else if (key == "seed")
        seed = parse_count(value, key);
    else if (key == "theta")
    {
        double const v = parse_number(value, key);
        if (!(v >= 0) || !std::isfinite(v))
            throw DomainError("theta must be nonnegative and finite");
        theta = v;
    }
    else if (key == "radius")
        radius = parse_radius(value);
    else if (key == "out")
    {
        std::string_view const path = trim(value);
        if (path.empty())
            throw ParseError("out needs a file path");
        out = std::string(path);
    }
    else
        throw ParseError("unknown key '" + std::string(key) + "'");
}

void RunConfig::merge(RunConfig const& other)
{
    auto take = [](auto& mine, auto const& theirs) {
        if (theirs)
            mine = theirs;
    };
    take(lambda, other.lambda);
    take(alpha, other.alpha);
    take(fading, other.fading);
    take(fading_g, other.fading_g);
    take(distance, other.distance);
    take(power, other.power);
    take(sched, other.sched);
    take(n, other.n);
    take(seed, other.seed);
    take(theta, other.theta);
    take(radius, other.radius);
    take(out, other.out);
}

NetworkModel RunConfig::model() const
{
    Distribution const h = fading.value_or(Distribution::exponential_unit_mean());
    return NetworkModel(lambda.value_or(default_lambda),
                        alpha.value_or(default_alpha),
                        h,
                        fading_g.value_or(h),
                        distance.value_or(Distribution::constant(default_distance)),
                        power.value_or(PowerControlLaw::constant()),
                        sched.value_or(SchedulingPolicy::always_on()));
}

//---------------------------------------------------------------------------//
RunConfig parse_config_text(std::string_view text)
{
    RunConfig config;
    std::vector<std::string> unknown;
    int line_no = 0;
    while (!text.empty())
    {
        ++line_no;
        auto const nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{}
                                            : text.substr(nl + 1);
        if (auto const hash = line.find('#'); hash != std::string_view::npos)
        {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty())
        {
            continue;
        }
        auto const eq = line.find('=');
        if (eq == std::string_view::npos)
        {
            throw ParseError("expected key=value, got '" + std::string(line)
                                 + "'",
                             line_no);
        }
        std::string_view const key = trim(line.substr(0, eq));
        std::string_view const value = trim(line.substr(eq + 1));
        if (!is_known_key(key))
        {
            unknown.push_back(std::string(key) + " (line "
                              + std::to_string(line_no) + ")");
            continue;
        }
        try
        {
            config.set(key, value);
        }
        catch (ParseError const& e)
        {
            throw ParseError(e.what(), line_no);
        }
        catch (DomainError const& e)
        {
            throw DomainError("line " + std::to_string(line_no) + ": "
                              + e.what());
        }
    }
    if (!unknown.empty())
    {
        std::string msg = "unknown keys: ";
        for (std::size_t i = 0; i < unknown.size(); ++i)
        {
            msg += (i ? ", " : "") + unknown[i];
        }
        throw ParseError(msg);
    }
    return config;
}

RunConfig parse_config(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw UsageError("cannot read config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

//---------------------------------------------------------------------------//
}  // namespace meansir
