//---------------------------------------------------------------------------//
//! \file test_ccdf.cc
//---------------------------------------------------------------------------//
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "meansir/analytics.hh"
#include "meansir/ccdf.hh"
#include "meansir/errors.hh"

using namespace meansir;
using doctest::Approx;

namespace
{
// Min-max formula for the weighted nonincreasing least-squares fit
std::vector<double> isotonic_oracle(std::vector<double> const& y,
                                    std::vector<double> const& w)
{
    std::size_t const n = y.size();
    std::vector<double> fit(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double best = INFINITY;
        for (std::size_t j = 0; j <= i; ++j)
        {
            double worst = -INFINITY;
            for (std::size_t k = i; k < n; ++k)
            {
                double num = 0;
                double den = 0;
                for (std::size_t t = j; t <= k; ++t)
                {
                    num += w[t] * y[t];
                    den += w[t];
                }
                worst = std::max(worst, num / den);
            }
            best = std::min(best, worst);
        }
        fit[i] = best;
    }
    return fit;
}

NetworkModel model_at(double lambda)
{
    return NetworkModel::make(lambda, 4, Distribution::exponential_unit_mean(),
                              Distribution::constant(15));
}

}  // namespace

//---------------------------------------------------------------------------//
TEST_CASE("isotonic projection")
{
    SUBCASE("already monotone input is unchanged")
    {
        std::vector<double> y{0.9, 0.8, 0.8, 0.3};
        CHECK(isotonic_nonincreasing(y, {1, 1, 1, 1}) == y);
    }
    SUBCASE("single violator pools with its neighbour")
    {
        auto const fit = isotonic_nonincreasing({0.9, 0.5, 0.7, 0.1}, {1, 1, 1, 1});
        CHECK(fit[0] == Approx(0.9));
        CHECK(fit[1] == Approx(0.6));
        CHECK(fit[2] == Approx(0.6));
        CHECK(fit[3] == Approx(0.1));
    }
    SUBCASE("weights pull the pooled value")
    {
        auto const fit = isotonic_nonincreasing({0.5, 0.7}, {3, 1});
        CHECK(fit[0] == Approx(0.55));
        CHECK(fit[1] == Approx(0.55));
    }
    SUBCASE("random sequences against the min-max formula")
    {
        std::mt19937 gen(11);
        std::uniform_real_distribution<double> u(0, 1);
        for (int trial = 0; trial < 200; ++trial)
        {
            std::size_t const n = 2 + gen() % 12;
            std::vector<double> y(n);
            std::vector<double> w(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                y[i] = u(gen);
                w[i] = 0.1 + u(gen);
            }
            auto const fit = isotonic_nonincreasing(y, w);
            auto const oracle = isotonic_oracle(y, w);
            for (std::size_t i = 0; i < n; ++i)
            {
                CHECK(fit[i] == Approx(oracle[i]).epsilon(1e-12));
                if (i > 0)
                    CHECK(fit[i] <= fit[i - 1]);
            }
        }
    }
}

TEST_CASE("monotone interpolation")
{
    std::vector<double> lambdas;
    std::vector<double> values;
    std::vector<double> errors;
    RayleighCcdf const ray;
    for (int i = 0; i < 9; ++i)
    {
        lambdas.push_back(std::pow(10.0, -4 + 0.25 * i));
        values.push_back(ray.evaluate(model_at(lambdas.back()), 0.5));
        errors.push_back(1e-3);
    }
    // Inject a noisy violation
    values[3] = values[2] + 0.01;
    SimulatedCcdf const curve(0.5, lambdas, values, errors);
    CHECK(curve.raw_values() == values);

    auto const& mono = curve.monotone_values();
    for (std::size_t i = 1; i < mono.size(); ++i)
        CHECK(mono[i] <= mono[i - 1]);
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        CHECK(curve.at(lambdas[i]) == Approx(mono[i]).epsilon(1e-14));

    double prev = 1;
    for (int i = 0; i <= 2000; ++i)
    {
        double const lambda = std::pow(10.0, -4 + 2.0 * i / 2000);
        double const v = curve.at(std::min(lambda, lambdas.back()));
        CHECK(v <= prev + 1e-15);
        CHECK(v >= 0);
        prev = v;
    }

    // Smooth inputs are reproduced closely between nodes
    SimulatedCcdf const clean(0.5, lambdas,
                              [&] {
                                  std::vector<double> v;
                                  for (double l : lambdas)
                                      v.push_back(ray.evaluate(model_at(l), 0.5));
                                  return v;
                              }(),
                              errors);
    for (double lambda : {1.3e-4, 4.1e-4, 2.2e-3, 7.7e-3})
    {
        CHECK(clean.at(lambda)
              == Approx(ray.evaluate(model_at(lambda), 0.5)).epsilon(2e-3));
    }
}

TEST_CASE("flat and two-point curves")
{
    SimulatedCcdf const flat(1, {1e-4, 1e-3, 1e-2}, {0.5, 0.5, 0.5}, {0, 0, 0});
    CHECK(flat.at(3e-3) == 0.5);
    SimulatedCcdf const two(1, {1e-4, 1e-2}, {0.9, 0.1}, {0.01, 0.01});
    CHECK(two.at(1e-3) == Approx(0.5));
    CHECK(two.std_error_at(1e-3) == Approx(0.01));
}

TEST_CASE("standard error interpolation")
{
    SimulatedCcdf const c(1, {1e-4, 1e-3, 1e-2}, {0.9, 0.5, 0.1},
                          {0.01, 0.03, 0.02});
    CHECK(c.std_error_at(1e-4) == Approx(0.01));
    CHECK(c.std_error_at(std::sqrt(1e-7)) == Approx(0.02));
    CHECK(c.std_error_at(1e-2) == Approx(0.02));
    CHECK_THROWS_AS(c.std_error_at(2e-2), InterpolationRangeError);
}

TEST_CASE("range and threshold errors")
{
    SimulatedCcdf const c(0.5, {1e-4, 1e-3, 1e-2}, {0.9, 0.5, 0.1},
                          {0.01, 0.01, 0.01});
    CHECK_THROWS_AS(c.at(9e-5), InterpolationRangeError);
    CHECK_THROWS_AS(c.at(1.1e-2), InterpolationRangeError);
    CHECK(c.evaluate(model_at(1e-3), 0.5) == Approx(0.5));
    CHECK_THROWS_AS(c.evaluate(model_at(1e-3), 0.6), DomainError);
    CHECK_THROWS_AS(throughput_capacity(model_at(0.05), 0.5, c),
                    InterpolationRangeError);
    CHECK(c.domain().first == 1e-4);
    CHECK(c.domain().second == 1e-2);
}

TEST_CASE("construction errors")
{
    CHECK_THROWS_AS(SimulatedCcdf(1, {1e-3}, {0.5}, {0.1}), DomainError);
    CHECK_THROWS_AS(SimulatedCcdf(1, {1e-3, 1e-4}, {0.5, 0.4}, {0.1, 0.1}),
                    DomainError);
    CHECK_THROWS_AS(SimulatedCcdf(1, {1e-4, 1e-3}, {0.5, 1.4}, {0.1, 0.1}),
                    DomainError);
    CHECK_THROWS_AS(SimulatedCcdf(1, {1e-4, 1e-3}, {0.5, 0.4}, {0.1}),
                    DomainError);
}

TEST_CASE("function CCDF source")
{
    FunctionCcdf const f([](double lambda, double theta) {
        return std::exp(-lambda * theta);
    });
    CHECK(f.evaluate(model_at(1e-3), 2) == Approx(std::exp(-2e-3)));
}
