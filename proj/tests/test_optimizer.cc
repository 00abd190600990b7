//---------------------------------------------------------------------------//
//! \file test_optimizer.cc
//---------------------------------------------------------------------------//
#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "meansir/errors.hh"
#include "meansir/optimizer.hh"
#include "meansir/simulator.hh"

using namespace meansir;
using doctest::Approx;

namespace
{
NetworkModel rayleigh_model()
{
    return NetworkModel::make(1e-3, 4, Distribution::exponential_unit_mean(),
                              Distribution::constant(15));
}

struct GridArgmax
{
    double x;
    std::size_t index;
    std::size_t size;
};

GridArgmax grid_argmax(NetworkModel const& m,
                       double theta,
                       CcdfSource const& ccdf,
                       double lo,
                       double hi,
                       std::size_t n = 1000)
{
    std::vector<double> t(n);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        x[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
        t[i] = throughput_capacity(m.with_intensity(x[i]), theta, ccdf);
    }
    auto const k = static_cast<std::size_t>(std::max_element(t.begin(), t.end())
                                            - t.begin());
    return {x[k], k, n};
}

}  // namespace

//---------------------------------------------------------------------------//
TEST_SUITE("certificate")
{
    TEST_CASE("exact sequences")
    {
        auto const ok = certify_unimodal({1, 2, 3, 2, 1});
        CHECK(ok.unimodal);
        CHECK(ok.peak_index == 2);
        CHECK_FALSE(ok.violation_index.has_value());

        auto const bad = certify_unimodal({1, 3, 2, 3, 1});
        CHECK_FALSE(bad.unimodal);
        REQUIRE(bad.violation_index.has_value());
        CHECK(*bad.violation_index == 3);

        CHECK(certify_unimodal({5, 4, 3, 2, 1}).unimodal);
        CHECK(certify_unimodal({1, 2, 3, 4, 5}).peak_index == 4);
        CHECK_FALSE(certify_unimodal({1, 2, 1, 2, 3, 2}).unimodal);
        CHECK_THROWS_AS(certify_unimodal({1, 2, 1, 0}), DomainError);
    }

    TEST_CASE("noise tolerance uses two combined errors")
    {
        std::vector<double> const v{1, 2, 1.9, 3, 2, 1};
        CHECK_FALSE(certify_unimodal(v).unimodal);
        // Dip of 0.1 against 2 * sqrt(2) * 0.05 = 0.141
        CHECK(certify_unimodal(v, std::vector<double>(6, 0.05)).unimodal);
        // 2 * sqrt(2) * 0.03 = 0.085 is not enough
        CHECK_FALSE(certify_unimodal(v, std::vector<double>(6, 0.03)).unimodal);
        CHECK_THROWS_AS(certify_unimodal(v, {0.1, 0.1}), DomainError);
    }
}

//---------------------------------------------------------------------------//
TEST_SUITE("unimodal maximizer")
{
    TEST_CASE("quadratic stub")
    {
        for (double c : {2e-5, 3e-4, 7.5e-3})
        {
            auto const r = maximize_unimodal(
                [c](double x) { return -(x - c) * (x - c); }, 1e-6, 1e-1);
            CHECK(r.x == Approx(c).epsilon(1e-4));
            CHECK(r.bracket.first < r.x);
            CHECK(r.x < r.bracket.second);
            CHECK(r.grid_x.size() == 64);
            CHECK(r.evaluations > 64);

            // Golden section and grid argmax agree within one grid cell
            auto const k = std::max_element(r.grid_values.begin(),
                                            r.grid_values.end())
                           - r.grid_values.begin();
            double const cell = std::log(r.grid_x[1] / r.grid_x[0]);
            CHECK(std::fabs(std::log(r.x / r.grid_x[k])) <= cell);
        }
    }

    TEST_CASE("edge maxima name the side")
    {
        auto inc = [](double x) { return x; };
        auto dec = [](double x) { return -x; };
        CHECK_THROWS_WITH_AS(maximize_unimodal(inc, 1, 2),
                             doctest::Contains("upper"), NoInteriorMaximumError);
        CHECK_THROWS_WITH_AS(maximize_unimodal(dec, 1, 2),
                             doctest::Contains("lower"), NoInteriorMaximumError);
        CHECK_THROWS_AS(maximize_unimodal(inc, 2, 1), DomainError);
        CHECK_THROWS_AS(maximize_unimodal(inc, 0, 1), DomainError);
        CHECK_THROWS_AS(maximize_unimodal([](double) { return NAN; }, 1, 2),
                        PropagationError);
    }
}

//---------------------------------------------------------------------------//
TEST_SUITE("throughput")
{
    TEST_CASE("analytic Rayleigh maximizer")
    {
        auto const m = rayleigh_model();
        RayleighCcdf const ray;
        auto const r = maximize_throughput(m, 0.5, ray, 1e-5, 1e-2);
        auto const grid = grid_argmax(m, 0.5, ray, 1e-5, 1e-2);
        CHECK(std::fabs(r.lambda_star / grid.x - 1) < 0.02);
        CHECK(r.in_pi_lambda);
        CHECK(r.certificate.unimodal);
        CHECK(r.bracket.first < r.lambda_star);
        CHECK(r.lambda_star < r.bracket.second);
        CHECK(r.t_star
              == Approx(throughput_capacity(m.with_intensity(r.lambda_star), 0.5,
                                            ray))
                     .epsilon(1e-12));
        CHECK(r.grid_lambdas.size() == 64);

        // Default bounds
        auto const d = maximize_throughput(m, 0.5, ray);
        CHECK(d.lambda_star == Approx(r.lambda_star).epsilon(1e-3));
    }

    TEST_CASE("unit CCDF reduction follows the grid oracle")
    {
        auto const m = rayleigh_model();
        FunctionCcdf const one([](double, double) { return 1.0; });
        double const lo = 1e-6;
        double const hi = 1e-1;
        auto const grid = grid_argmax(m, 0, one, lo, hi);
        if (grid.index == 0 || grid.index + 1 == grid.size)
        {
            CHECK_THROWS_AS(maximize_throughput(m, 0, one, lo, hi),
                            NoInteriorMaximumError);
        }
        else
        {
            auto const r = maximize_throughput(m, 0, one, lo, hi);
            CHECK(std::fabs(r.lambda_star / grid.x - 1) < 0.02);
            CHECK(r.in_pi_lambda);
        }
    }

    TEST_CASE("monotone throughput on the bounds")
    {
        auto const m = rayleigh_model();
        RayleighCcdf const ray;
        CHECK_THROWS_WITH_AS(maximize_throughput(m, 0.5, ray, 1e-6, 1e-4),
                             doctest::Contains("upper"), NoInteriorMaximumError);
        CHECK_THROWS_WITH_AS(maximize_throughput(m, 0.5, ray, 2e-3, 1e-1),
                             doctest::Contains("lower"), NoInteriorMaximumError);
        CHECK_THROWS_AS(maximize_throughput(m, 0.5, ray, 1e-3, 1e-4), DomainError);
    }

    TEST_CASE("simulated CCDF maximizer is stable under refinement")
    {
        auto const m = rayleigh_model();
        std::vector<double> lambdas;
        for (int i = 0; i < 12; ++i)
            lambdas.push_back(1e-4 * std::pow(30.0, i / 11.0));

        SimulationOptions o;
        o.eps = 1;  // point-count floor binds
        o.seed = 3;
        o.n = 5000;
        auto const coarse = build_simulated_ccdf(m, 0.5, lambdas, o);
        o.n = 10000;
        auto const fine = build_simulated_ccdf(m, 0.5, lambdas, o);

        auto const a = maximize_throughput(m, 0.5, coarse, lambdas.front(),
                                           lambdas.back());
        auto const b = maximize_throughput(m, 0.5, fine, lambdas.front(),
                                           lambdas.back());
        CHECK(a.certificate.unimodal);
        CHECK(b.certificate.unimodal);
        CHECK(std::fabs(a.lambda_star / b.lambda_star - 1) < 0.05);

        RayleighCcdf const ray;
        auto const exact = maximize_throughput(m, 0.5, ray, lambdas.front(),
                                               lambdas.back());
        CHECK(std::fabs(b.lambda_star / exact.lambda_star - 1) < 0.05);
    }
}
