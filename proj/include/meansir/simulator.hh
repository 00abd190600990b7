//---------------------------------------------------------------------------//
//! \file meansir/simulator.hh
//! Monte Carlo estimation of SIR statistics on a truncated Poisson field.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ccdf.hh"
#include "models.hh"
#include "rng.hh"

namespace meansir
{
//---------------------------------------------------------------------------//
//! One realization seen from the reference receiver at the origin.
struct SirSample
{
    double sir;
    double interference;
    double signal;
    std::uint32_t n_interferers;
};

//! Monte Carlo statistic with its standard error.
struct Estimate
{
    double value = 0;
    double std_error = 0;
    std::uint64_t n_realizations = 0;
    std::uint64_t seed = 0;
    double radius_m = 0;
};

struct SimulationOptions
{
    std::uint64_t n = 200'000;
    std::uint64_t seed = 1;
    double radius = 0;  //!< meters; 0 selects pick_radius(model, eps)
    double eps = 1e-4;  //!< relative truncation tolerance for auto radius
    unsigned threads = 1;
};

//! Minimum expected number of active transmitters in the simulation disk
inline constexpr double min_expected_points = 2000;

//---------------------------------------------------------------------------//
// Expected interference from active transmitters beyond the radius
double truncated_tail_interference(NetworkModel const& model, double radius);

/*!
 * Smallest disk radius whose neglected far-field interference is at most
 * eps / E[1/I] and which holds at least min_expected_points active
 * transmitters on average.
 */
double pick_radius(NetworkModel const& model, double eps = 1e-4);

//---------------------------------------------------------------------------//
/*!
 * Precomputed sampler for one model and disk radius.
 *
 * Candidate transmitters are generated outward from the receiver: squared
 * distances are pi * lambda times the arrival times of a unit-rate Poisson
 * process, which gives a Poisson number of uniform points on the disk and
 * nests the points of smaller radii inside larger ones. Under opportunistic
 * scheduling each candidate's own (H, D) pair
 * is drawn and the candidate is kept only if H >= h0 and D <= d0. The
 * reference link's marks are drawn from the scheduled laws by rejection.
 */
class RealizationSampler
{
  public:
    RealizationSampler(NetworkModel const& model, double radius);

    SirSample operator()(CounterStream& rng) const;

    double radius() const { return radius_; }
    NetworkModel const& model() const { return model_; }

  private:
    struct PowerLaw
    {
        enum class Mode
        {
            one,
            linear,
            square,
            cube,
            fourth,
            inverse,
            inverse_square,
            sqrt,
            general
        };
        Mode mode = Mode::one;
        double exponent = 0;

        explicit PowerLaw(double e = 0);
        double operator()(double x) const;
    };

    double draw_power(double h, double d, CounterStream& rng) const;
    double draw_g(CounterStream& rng) const;

    NetworkModel model_;
    double radius_;
    double radius_sq_;
    double mean_candidates_;
    bool draw_own_marks_;
    bool scheduled_;
    double h0_ = 0;
    double d0_ = 0;
    PowerLaw path_loss_;  // applied to squared distance
    PowerLaw rho_pow_;
    PowerLaw upsilon_pow_;
    double power_factor_ = 1;
};

// One realization (convenience wrapper around RealizationSampler)
SirSample sample_realization(NetworkModel const& model,
                             CounterStream& rng,
                             double radius);

//---------------------------------------------------------------------------//
/*!
 * A set of realizations indexed 0..n-1, realization i drawn from the
 * stream (seed, i). Results do not depend on the thread count.
 */
class SimulationBatch
{
  public:
    SimulationBatch(NetworkModel const& model, SimulationOptions const& opts);

    std::span<SirSample const> samples() const { return samples_; }
    std::uint64_t seed() const { return seed_; }
    double radius() const { return radius_; }
    std::uint64_t size() const { return samples_.size(); }

    Estimate mean_sir() const;
    // Mean with the given fraction trimmed from each tail (diagnostic)
    double trimmed_mean_sir(double fraction = 1e-3) const;
    Estimate ccdf(double theta) const;
    std::vector<Estimate> ccdf(std::span<double const> thetas) const;
    Estimate spectrum_efficiency() const;
    Estimate laplace(double s) const;
    Estimate interferer_count() const;

  private:
    template<class F>
    Estimate mean_of(F&& f) const;
    Estimate proportion(std::size_t count) const;

    std::vector<SirSample> samples_;
    std::uint64_t seed_;
    double radius_;
};

//---------------------------------------------------------------------------//
Estimate estimate_mean_sir(NetworkModel const& model,
                           SimulationOptions const& opts);
std::vector<Estimate> estimate_ccdf(NetworkModel const& model,
                                    std::span<double const> thetas,
                                    SimulationOptions const& opts);
Estimate estimate_spectrum_efficiency(NetworkModel const& model,
                                      SimulationOptions const& opts);
Estimate estimate_laplace(NetworkModel const& model,
                          double s,
                          SimulationOptions const& opts);

/*!
 * Simulated CCDF curve on an intensity grid.
 *
 * Every grid point uses the same seed, so neighbouring points share their
 * underlying random numbers and the curve is smooth in lambda.
 */
SimulatedCcdf build_simulated_ccdf(NetworkModel const& model,
                                   double theta,
                                   std::vector<double> const& lambdas,
                                   SimulationOptions const& opts);

// Deterministic pairwise summation
double pairwise_sum(std::span<double const> values);

//---------------------------------------------------------------------------//
}  // namespace meansir
