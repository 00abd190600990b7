//---------------------------------------------------------------------------//
//! \file simulator.cc
//---------------------------------------------------------------------------//
#include "meansir/simulator.hh"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "meansir/analytics.hh"
#include "meansir/errors.hh"

namespace meansir
{
//---------------------------------------------------------------------------//
// RADIUS SELECTION
//---------------------------------------------------------------------------//
double truncated_tail_interference(NetworkModel const& model, double radius)
{
    NetworkModel const eff = effective_network(model);
    double const alpha = eff.alpha();
    return 2 * std::numbers::pi * eff.intensity() * mean_power(eff)
           * eff.fading_g().mean() * std::pow(radius, 2 - alpha) / (alpha - 2);
}

double pick_radius(NetworkModel const& model, double eps)
{
    if (!(eps > 0))
    {
        throw DomainError("radius tolerance eps must be positive");
    }
    NetworkModel const eff = effective_network(model);
    double const alpha = eff.alpha();
    double const lambda_s = eff.intensity();
    double const budget = eps / mean_inverse_interference(model);
    double const prefactor = 2 * std::numbers::pi * lambda_s * mean_power(eff)
                             * eff.fading_g().mean() / (alpha - 2);
    double const by_tail = std::pow(prefactor / budget, 1 / (alpha - 2));
    double const by_count
        = std::sqrt(min_expected_points / (std::numbers::pi * lambda_s));
    return std::max(by_tail, by_count);
}

//---------------------------------------------------------------------------//
// SAMPLER
//---------------------------------------------------------------------------//
RealizationSampler::PowerLaw::PowerLaw(double e) : exponent(e)
{
    if (e == 0)
        mode = Mode::one;
    else if (e == 1)
        mode = Mode::linear;
    else if (e == 2)
        mode = Mode::square;
    else if (e == 3)
        mode = Mode::cube;
    else if (e == 4)
        mode = Mode::fourth;
    else if (e == -1)
        mode = Mode::inverse;
    else if (e == -2)
        mode = Mode::inverse_square;
    else if (e == 0.5)
        mode = Mode::sqrt;
    else
        mode = Mode::general;
}

double RealizationSampler::PowerLaw::operator()(double x) const
{
    switch (mode)
    {
        case Mode::one:
            return 1;
        case Mode::linear:
            return x;
        case Mode::square:
            return x * x;
        case Mode::cube:
            return x * x * x;
        case Mode::fourth: {
            double const x2 = x * x;
            return x2 * x2;
        }
        case Mode::inverse:
            return 1 / x;
        case Mode::inverse_square:
            return 1 / (x * x);
        case Mode::sqrt:
            return std::sqrt(x);
        case Mode::general:
            break;
    }
    return std::pow(x, exponent);
}

RealizationSampler::RealizationSampler(NetworkModel const& model, double radius)
    : model_(model)
    , radius_(radius)
    , radius_sq_(radius * radius)
    , mean_candidates_(model.intensity() * std::numbers::pi * radius * radius)
    , path_loss_(-model.alpha() / 2)
{
    if (!(radius > 0) || !std::isfinite(radius))
    {
        throw DomainError("simulation radius must be positive and finite");
    }
    auto const& law = model.power();
    scheduled_ = !model.scheduling().is_always_on();
    if (auto const* o = std::get_if<SchedulingPolicy::Opportunistic>(
            &model.scheduling().kind()))
    {
        h0_ = o->h0;
        d0_ = o->d0;
    }
    if (auto const* ca
        = std::get_if<PowerControlLaw::ChannelAware>(&law.kind()))
    {
        rho_pow_ = PowerLaw(ca->rho);
        upsilon_pow_ = PowerLaw(ca->upsilon);
        power_factor_ = law.scale() / ca->normalization;
    }
    else if (auto const* c
             = std::get_if<PowerControlLaw::ConstantPower>(&law.kind()))
    {
        power_factor_ = law.scale() * c->p;
    }
    else
    {
        power_factor_ = law.scale();
    }
    draw_own_marks_ = scheduled_ || law.is_channel_aware();
}

double RealizationSampler::draw_power(double h, double d, CounterStream& rng) const
{
    auto const& law = model_.power();
    if (law.is_channel_aware())
    {
        return power_factor_ * rho_pow_(h) * upsilon_pow_(d);
    }
    if (law.is_constant())
    {
        return power_factor_;
    }
    auto const& rp = std::get<PowerControlLaw::RandomPower>(law.kind());
    return power_factor_ * sample_mark(rp.dist, rng);
}

double RealizationSampler::draw_g(CounterStream& rng) const
{
    return sample_mark(model_.fading_g(), rng);
}

SirSample RealizationSampler::operator()(CounterStream& rng) const
{
    // Reference link: own marks conditioned on being scheduled
    MarkLaw h_law = model_.fading_h();
    MarkLaw d_law = model_.distance();
    if (scheduled_)
    {
        h_law.at_least = std::max(h_law.at_least, h0_);
        d_law.at_most = std::min(d_law.at_most, d0_);
    }
    double const h_ref = sample_mark(h_law, rng);
    double const d_ref = sample_mark(d_law, rng);
    double const signal = this->draw_power(h_ref, d_ref, rng) * h_ref
                          * path_loss_(d_ref * d_ref);

    auto const& h_dist = model_.fading_h();
    auto const& d_dist = model_.distance();
    for (int attempt = 0; attempt < 100; ++attempt)
    {
        // Candidates in order of distance: unit-rate arrival times map to
        // squared radii, so runs at R and 2R share their inner points
        double const area_per_candidate = radius_sq_ / mean_candidates_;
        double interference = 0;
        std::uint32_t active = 0;
        for (double t = rng.exponential(); t <= mean_candidates_;
             t += rng.exponential())
        {
            double const r_sq = area_per_candidate * t;
            double h = 1;
            double d = 1;
            if (draw_own_marks_)
            {
                h = sample_mark(h_dist, rng);
                d = sample_mark(d_dist, rng);
                if (scheduled_ && (h < h0_ || d > d0_))
                {
                    continue;
                }
            }
            double const p = this->draw_power(h, d, rng);
            double const g = this->draw_g(rng);
            interference += p * g * path_loss_(r_sq);
            ++active;
        }
        if (active > 0)
        {
            return {signal / interference, interference, signal, active};
        }
    }
    throw DegenerateConfigurationError(
        "no active interferer in 100 consecutive draws; increase the "
        "simulation radius");
}

SirSample sample_realization(NetworkModel const& model,
                             CounterStream& rng,
                             double radius)
{
    return RealizationSampler(model, radius)(rng);
}

//---------------------------------------------------------------------------//
// BATCH
//---------------------------------------------------------------------------//
double pairwise_sum(std::span<double const> values)
{
    constexpr std::size_t block = 64;
    if (values.size() <= block)
    {
        double sum = 0;
        for (double v : values)
        {
            sum += v;
        }
        return sum;
    }
    std::size_t const half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

SimulationBatch::SimulationBatch(NetworkModel const& model,
                                 SimulationOptions const& opts)
    : seed_(opts.seed)
    , radius_(opts.radius > 0 ? opts.radius : pick_radius(model, opts.eps))
{
    if (opts.n < 2)
    {
        throw DomainError("simulation needs at least two realizations");
    }
    RealizationSampler const sampler(model, radius_);
    samples_.resize(opts.n);

    auto run = [this, &sampler](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i)
        {
            CounterStream rng(seed_, i);
            samples_[i] = sampler(rng);
        }
    };

    unsigned const threads = std::max(1u, opts.threads);
    if (threads == 1)
    {
        run(0, opts.n);
        return;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(threads);
    std::uint64_t const chunk = (opts.n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t)
    {
        std::uint64_t const begin = std::min<std::uint64_t>(t * chunk, opts.n);
        std::uint64_t const end = std::min<std::uint64_t>(begin + chunk, opts.n);
        workers.emplace_back([&, t, begin, end] {
            try
            {
                run(begin, end);
            }
            catch (...)
            {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& w : workers)
    {
        w.join();
    }
    for (auto const& e : errors)
    {
        if (e)
        {
            std::rethrow_exception(e);
        }
    }
}

template<class F>
Estimate SimulationBatch::mean_of(F&& f) const
{
    std::vector<double> values(samples_.size());
    std::transform(samples_.begin(), samples_.end(), values.begin(), f);
    double const n = static_cast<double>(values.size());
    double const mean = pairwise_sum(values) / n;
    for (double& v : values)
    {
        v = (v - mean) * (v - mean);
    }
    double const variance = pairwise_sum(values) / (n - 1);
    return {mean, std::sqrt(variance / n), samples_.size(), seed_, radius_};
}

Estimate SimulationBatch::proportion(std::size_t count) const
{
    double const n = static_cast<double>(samples_.size());
    double const p = static_cast<double>(count) / n;
    return {p, std::sqrt(p * (1 - p) / n), samples_.size(), seed_, radius_};
}

Estimate SimulationBatch::mean_sir() const
{
    return this->mean_of([](SirSample const& s) { return s.sir; });
}

double SimulationBatch::trimmed_mean_sir(double fraction) const
{
    std::vector<double> sir(samples_.size());
    std::transform(samples_.begin(), samples_.end(), sir.begin(),
                   [](SirSample const& s) { return s.sir; });
    std::sort(sir.begin(), sir.end());
    auto const cut = static_cast<std::size_t>(fraction * sir.size());
    std::span<double const> kept(sir.data() + cut, sir.size() - 2 * cut);
    return pairwise_sum(kept) / static_cast<double>(kept.size());
}

Estimate SimulationBatch::ccdf(double theta) const
{
    auto const count = std::count_if(
        samples_.begin(), samples_.end(),
        [theta](SirSample const& s) { return s.sir >= theta; });
    return this->proportion(static_cast<std::size_t>(count));
}

std::vector<Estimate> SimulationBatch::ccdf(std::span<double const> thetas) const
{
    if (!std::is_sorted(thetas.begin(), thetas.end()))
    {
        throw DomainError("CCDF thresholds must be sorted ascending");
    }
    std::vector<double> sir(samples_.size());
    std::transform(samples_.begin(), samples_.end(), sir.begin(),
                   [](SirSample const& s) { return s.sir; });
    std::sort(sir.begin(), sir.end());
    std::vector<Estimate> result;
    result.reserve(thetas.size());
    for (double theta : thetas)
    {
        auto const below = std::lower_bound(sir.begin(), sir.end(), theta)
                           - sir.begin();
        result.push_back(
            this->proportion(sir.size() - static_cast<std::size_t>(below)));
    }
    return result;
}

Estimate SimulationBatch::spectrum_efficiency() const
{
    return this->mean_of([](SirSample const& s) {
        return std::log1p(s.sir) / std::numbers::ln2;
    });
}

Estimate SimulationBatch::laplace(double s) const
{
    return this->mean_of(
        [s](SirSample const& x) { return std::exp(-s * x.interference); });
}

Estimate SimulationBatch::interferer_count() const
{
    return this->mean_of([](SirSample const& s) {
        return static_cast<double>(s.n_interferers);
    });
}

//---------------------------------------------------------------------------//
// ESTIMATORS
//---------------------------------------------------------------------------//
Estimate estimate_mean_sir(NetworkModel const& model,
                           SimulationOptions const& opts)
{
    return SimulationBatch(model, opts).mean_sir();
}

std::vector<Estimate> estimate_ccdf(NetworkModel const& model,
                                    std::span<double const> thetas,
                                    SimulationOptions const& opts)
{
    if (!std::is_sorted(thetas.begin(), thetas.end()))
    {
        throw DomainError("CCDF thresholds must be sorted ascending");
    }
    return SimulationBatch(model, opts).ccdf(thetas);
}

Estimate estimate_spectrum_efficiency(NetworkModel const& model,
                                      SimulationOptions const& opts)
{
    return SimulationBatch(model, opts).spectrum_efficiency();
}

Estimate estimate_laplace(NetworkModel const& model,
                          double s,
                          SimulationOptions const& opts)
{
    return SimulationBatch(model, opts).laplace(s);
}

SimulatedCcdf build_simulated_ccdf(NetworkModel const& model,
                                   double theta,
                                   std::vector<double> const& lambdas,
                                   SimulationOptions const& opts)
{
    std::vector<double> values;
    std::vector<double> errors;
    values.reserve(lambdas.size());
    errors.reserve(lambdas.size());
    for (double lambda : lambdas)
    {
        SimulationBatch const batch(model.with_intensity(lambda), opts);
        Estimate const e = batch.ccdf(theta);
        values.push_back(e.value);
        errors.push_back(e.std_error);
    }
    return SimulatedCcdf(theta, lambdas, std::move(values), std::move(errors));
}

//---------------------------------------------------------------------------//
}  // namespace meansir
