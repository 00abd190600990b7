//---------------------------------------------------------------------------//
//! \file test_simulator.cc
//---------------------------------------------------------------------------//
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <doctest.h>

#include "meansir/analytics.hh"
#include "meansir/errors.hh"
#include "meansir/simulator.hh"

using namespace meansir;
using doctest::Approx;
using std::numbers::pi;

namespace
{
auto const rayleigh = Distribution::exponential_unit_mean();
auto const no_fading = Distribution::constant(1);
auto const d_fixed = Distribution::constant(15);

NetworkModel rayleigh_model(double lambda)
{
    return NetworkModel::make(lambda, 4, rayleigh, d_fixed);
}

SimulationOptions opts(std::uint64_t n, std::uint64_t seed, double radius = 0)
{
    SimulationOptions o;
    o.n = n;
    o.seed = seed;
    o.radius = radius;
    return o;
}

bool within(Estimate const& e, double expected, double k = 3)
{
    return std::fabs(e.value - expected) <= k * e.std_error;
}

double floor_radius(double lambda)
{
    return std::sqrt(min_expected_points / (pi * lambda));
}

}  // namespace

//---------------------------------------------------------------------------//
TEST_SUITE("radius")
{
    TEST_CASE("point-count floor and tail arithmetic")
    {
        auto const m = rayleigh_model(1e-3);
        double const floor = floor_radius(1e-3);
        CHECK(floor == Approx(797.9).epsilon(1e-4));
        CHECK(pick_radius(m) >= floor);
        CHECK(truncated_tail_interference(m, 798)
              == Approx(2 * pi * 1e-3 / (798.0 * 798.0) / 2).epsilon(1e-12));
        CHECK(truncated_tail_interference(m, 798) == Approx(4.93e-9).epsilon(1e-2));

        // The auto radius meets the tail budget exactly when the tail binds
        double const r = pick_radius(m);
        CHECK(truncated_tail_interference(m, r)
              <= 1e-4 / mean_inverse_interference(m) * (1 + 1e-12));
    }

    TEST_CASE("looser tolerance never grows the radius")
    {
        for (double lambda : {1e-5, 1e-3, 1e-1})
        {
            auto const m = rayleigh_model(lambda);
            double prev = INFINITY;
            for (double eps : {1e-8, 1e-6, 1e-4, 1e-2, 1.0, 100.0})
            {
                double const r = pick_radius(m, eps);
                CHECK(r <= prev);
                CHECK(r >= floor_radius(lambda) * (1 - 1e-14));
                prev = r;
            }
        }
        CHECK_THROWS_AS(pick_radius(rayleigh_model(1e-3), 0), DomainError);
    }

    TEST_CASE("scheduled models use the thinned intensity")
    {
        auto const m = NetworkModel::make(1e-3, 4, rayleigh,
                                          Distribution::uniform(15, 25),
                                          PowerControlLaw::constant(),
                                          SchedulingPolicy::opportunistic(
                                              std::log(2.0), 20));
        CHECK(pick_radius(m) >= floor_radius(1e-3 / 4) * (1 - 1e-14));
    }
}

//---------------------------------------------------------------------------//
TEST_SUITE("realizations")
{
    TEST_CASE("single interferer link")
    {
        double const d = 15;
        auto const m = NetworkModel::make(1e-4, 4, no_fading,
                                          Distribution::constant(d));
        // Mean candidate count 0.5: most nonempty draws hold one interferer
        double const radius = std::sqrt(0.5 / (pi * 1e-4));
        RealizationSampler const sampler(m, radius);
        int singles = 0;
        for (std::uint64_t i = 0; i < 2000; ++i)
        {
            CounterStream rng(9, i);
            auto const s = sampler(rng);
            REQUIRE(s.n_interferers >= 1);
            CHECK(s.sir == s.signal / s.interference);
            CHECK(s.signal == std::pow(d, -4.0));
            if (s.n_interferers == 1)
            {
                ++singles;
                double const r = std::pow(s.interference, -0.25);
                CHECK(r <= radius);
                CHECK(s.sir == Approx(std::pow(r / d, 4)).epsilon(1e-13));
            }
        }
        CHECK(singles > 1400);
    }

    TEST_CASE("sampler matches the free function")
    {
        auto const m = rayleigh_model(1e-3);
        RealizationSampler const sampler(m, 900);
        for (std::uint64_t i = 0; i < 20; ++i)
        {
            CounterStream a(3, i);
            CounterStream b(3, i);
            auto const x = sampler(a);
            auto const y = sample_realization(m, b, 900);
            CHECK(x.sir == y.sir);
            CHECK(x.n_interferers == y.n_interferers);
        }
    }

    TEST_CASE("empty disk is a degenerate configuration")
    {
        auto const m = rayleigh_model(1e-6);
        RealizationSampler const sampler(m, 1e-3);
        CounterStream rng(1, 0);
        CHECK_THROWS_AS(sampler(rng), DegenerateConfigurationError);
    }

    TEST_CASE("interferer count is Poisson with the disk mean")
    {
        double const lambda = 1e-3;
        SimulationBatch const b(rayleigh_model(lambda),
                                opts(4000, 5, floor_radius(lambda)));
        auto const count = b.interferer_count();
        CHECK(std::fabs(count.value - 2000) <= 3 * std::sqrt(2000.0 / 4000));
        CHECK(within(count, 2000));
    }

    TEST_CASE("scheduled interferer density equals the thinned intensity")
    {
        double const lambda = 1e-3;
        auto const m = NetworkModel::make(lambda, 4, rayleigh,
                                          Distribution::uniform(15, 25),
                                          PowerControlLaw::constant(),
                                          SchedulingPolicy::opportunistic(0.5, 21));
        double const radius = 700;
        SimulationBatch const b(m, opts(4000, 6, radius));
        double const ls = effective_network(m).intensity();
        CHECK(ls == Approx(lambda * std::exp(-0.5) * 0.6).epsilon(1e-12));
        CHECK(within(b.interferer_count(), ls * pi * radius * radius));
    }
}

//---------------------------------------------------------------------------//
TEST_SUITE("batch")
{
    TEST_CASE("bit reproducibility and thread invariance")
    {
        auto const m = NetworkModel::make(1e-3, 4, Distribution::gamma_unit_mean(2),
                                          Distribution::uniform(15, 25),
                                          PowerControlLaw::channel_aware(1, 4));
        auto o = opts(3001, 42, 600);
        SimulationBatch const a(m, o);
        SimulationBatch const b(m, o);
        o.threads = 4;
        SimulationBatch const c(m, o);
        o.threads = 7;
        SimulationBatch const d(m, o);
        REQUIRE(a.size() == 3001);
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            REQUIRE(a.samples()[i].sir == b.samples()[i].sir);
            REQUIRE(a.samples()[i].sir == c.samples()[i].sir);
            REQUIRE(a.samples()[i].sir == d.samples()[i].sir);
        }
        CHECK(a.mean_sir().value == c.mean_sir().value);
        CHECK(a.mean_sir().std_error == d.mean_sir().std_error);

        // A prefix of a longer run is the shorter run
        o.n = 5000;
        SimulationBatch const longer(m, o);
        for (std::size_t i = 0; i < a.size(); ++i)
            REQUIRE(longer.samples()[i].interference == a.samples()[i].interference);

        o.seed = 43;
        SimulationBatch const other(m, o);
        CHECK(other.samples()[0].sir != a.samples()[0].sir);
    }

    TEST_CASE("estimate bookkeeping")
    {
        SimulationBatch const b(rayleigh_model(1e-3), opts(1000, 8, 800));
        auto const e = b.mean_sir();
        CHECK(e.n_realizations == 1000);
        CHECK(e.seed == 8);
        CHECK(e.radius_m == 800);

        std::vector<double> sirs;
        for (auto const& s : b.samples())
            sirs.push_back(s.sir);
        long double sum = 0;
        for (double x : sirs)
            sum += x;
        double const mean = static_cast<double>(sum / sirs.size());
        long double ss = 0;
        for (double x : sirs)
            ss += (x - mean) * (x - mean);
        double const se = std::sqrt(static_cast<double>(ss / (sirs.size() - 1))
                                    / sirs.size());
        CHECK(e.value == Approx(mean).epsilon(1e-13));
        CHECK(e.std_error == Approx(se).epsilon(1e-10));
        CHECK(b.trimmed_mean_sir() <= e.value);
        CHECK_THROWS_AS(SimulationBatch(rayleigh_model(1e-3), opts(1, 1, 800)),
                        DomainError);
    }

    TEST_CASE("CCDF on shared realizations")
    {
        SimulationBatch const b(rayleigh_model(1e-4), opts(20000, 10));
        std::vector<double> const thetas{0, 0.1, 0.5, 1, 2, 10};
        auto const est = b.ccdf(thetas);
        CHECK(est[0].value == 1);
        CHECK(est[0].std_error == 0);
        for (std::size_t i = 1; i < est.size(); ++i)
            CHECK(est[i].value <= est[i - 1].value);
        CHECK(est[2].value == b.ccdf(0.5).value);
        double const p = est[2].value;
        CHECK(est[2].std_error == Approx(std::sqrt(p * (1 - p) / 20000)));
        CHECK(within(est[2], rayleigh_sir_ccdf(rayleigh_model(1e-4), 0.5)));

        std::vector<double> const unsorted{1, 0.5};
        CHECK_THROWS_AS(b.ccdf(unsorted), DomainError);
    }

    TEST_CASE("pairwise summation")
    {
        std::mt19937_64 gen(1);
        std::lognormal_distribution<double> dist(0, 3);
        for (std::size_t n : {0, 1, 63, 64, 65, 1000, 100001})
        {
            std::vector<double> v(n);
            long double exact = 0;
            for (auto& x : v)
            {
                x = dist(gen);
                exact += x;
            }
            CHECK(pairwise_sum(v) == Approx(static_cast<double>(exact)).epsilon(1e-14));
        }
    }
}

//---------------------------------------------------------------------------//
TEST_SUITE("estimators against closed forms")
{
    TEST_CASE("Rayleigh and no-fading mean SIR")
    {
        auto const ray = rayleigh_model(1e-3);
        auto const flat = NetworkModel::make(1e-3, 4, no_fading, d_fixed);
        auto const er = estimate_mean_sir(ray, opts(20000, 21));
        auto const ef = estimate_mean_sir(flat, opts(20000, 22));
        CHECK(within(er, mean_sir(ray)));
        CHECK(within(ef, mean_sir(flat)));
        CHECK(ef.value + 3 * ef.std_error < er.value - 3 * er.std_error + 0.5);
        CHECK(ef.value < er.value);
    }

    TEST_CASE("Laplace transform")
    {
        auto const m = rayleigh_model(1e-3);
        auto const e = estimate_laplace(m, 1, opts(20000, 23));
        CHECK(within(e, laplace_interference(m, 1)));
        CHECK(e.value == Approx(0.99508).epsilon(5e-4));
    }

    TEST_CASE("spectrum efficiency: Jensen and linearization")
    {
        auto const m = rayleigh_model(1e-3);
        SimulationBatch const b(m, opts(20000, 24));
        auto const se = b.spectrum_efficiency();
        auto const ms = b.mean_sir();
        CHECK(se.value <= std::log2(1 + ms.value) + 3 * se.std_error);
        CHECK(se.value <= spectrum_efficiency_upper(m).bits);

        auto const dense = rayleigh_model(1e-2);
        auto const sd = estimate_spectrum_efficiency(dense, opts(20000, 25));
        double const lin = mean_sir(dense) / std::numbers::ln2;
        CHECK(mean_sir(dense) == Approx(0.0162).epsilon(2e-3));
        CHECK(std::fabs(sd.value - lin) <= 0.1 * lin);
    }

    TEST_CASE("integrated CCDF reproduces the mean")
    {
        SimulationBatch const b(
            NetworkModel::make(1e-3, 4, no_fading, d_fixed), opts(20000, 26));
        std::vector<double> sirs;
        for (auto const& s : b.samples())
            sirs.push_back(s.sir);
        std::sort(sirs.begin(), sirs.end());
        double const cap = sirs[static_cast<std::size_t>(0.9999 * sirs.size())];

        int const k = 4000;
        std::vector<double> thetas(k + 1);
        for (int i = 0; i <= k; ++i)
            thetas[i] = cap * i / k;
        auto const ccdf = b.ccdf(thetas);
        double integral = 0;
        for (int i = 0; i < k; ++i)
            integral += 0.5 * (ccdf[i].value + ccdf[i + 1].value) * cap / k;
        CHECK(std::fabs(integral - b.mean_sir().value) <= 0.02 * b.mean_sir().value);
    }

    TEST_CASE("doubling the radius moves the mean by less than one error")
    {
        auto const m = rayleigh_model(1e-3);
        double const r = pick_radius(m);
        auto const near = estimate_mean_sir(m, opts(5000, 27, r));
        auto const far = estimate_mean_sir(m, opts(5000, 27, 2 * r));
        CHECK(std::fabs(near.value - far.value) < near.std_error);
    }
}
