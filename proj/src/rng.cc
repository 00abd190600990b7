//---------------------------------------------------------------------------//
//! \file rng.cc
//---------------------------------------------------------------------------//
#include "meansir/rng.hh"

#include <cmath>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include "meansir/errors.hh"
#include "meansir/specfun.hh"

namespace meansir
{
namespace
{
constexpr std::uint32_t philox_m0 = 0xD2511F53;
constexpr std::uint32_t philox_m1 = 0xCD9E8D57;
constexpr std::uint32_t philox_w0 = 0x9E3779B9;
constexpr std::uint32_t philox_w1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a,
                    std::uint32_t b,
                    std::uint32_t& lo,
                    std::uint32_t& hi)
{
    std::uint64_t const product = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(product);
    hi = static_cast<std::uint32_t>(product >> 32);
}

}  // namespace

//---------------------------------------------------------------------------//
PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key)
{
    for (int round = 0; round < 10; ++round)
    {
        std::uint32_t lo0, hi0, lo1, hi1;
        mulhilo(philox_m0, ctr[0], lo0, hi0);
        mulhilo(philox_m1, ctr[2], lo1, hi1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += philox_w0;
        key[1] += philox_w1;
    }
    return ctr;
}

//---------------------------------------------------------------------------//
CounterStream::CounterStream(std::uint64_t seed, std::uint64_t stream)
    : key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)}
    , stream_(stream)
{
}

void CounterStream::refill()
{
    // Same rounds as philox4x32, interleaved over consecutive counters
    std::array<PhiloxCounter, blocks_per_refill> ctr;
    for (int b = 0; b < blocks_per_refill; ++b)
    {
        std::uint64_t const block = block_ + b;
        ctr[b] = {static_cast<std::uint32_t>(block),
                  static_cast<std::uint32_t>(block >> 32),
                  static_cast<std::uint32_t>(stream_),
                  static_cast<std::uint32_t>(stream_ >> 32)};
    }
    PhiloxKey key = key_;
    for (int round = 0; round < 10; ++round)
    {
        for (auto& c : ctr)
        {
            std::uint32_t lo0, hi0, lo1, hi1;
            mulhilo(philox_m0, c[0], lo0, hi0);
            mulhilo(philox_m1, c[2], lo1, hi1);
            c = {hi1 ^ c[1] ^ key[0], lo1, hi0 ^ c[3] ^ key[1], lo0};
        }
        key[0] += philox_w0;
        key[1] += philox_w1;
    }
    for (int b = 0; b < blocks_per_refill; ++b)
    {
        auto const& c = ctr[b];
        buffer_[2 * b] = (static_cast<std::uint64_t>(c[1]) << 32) | c[0];
        buffer_[2 * b + 1] = (static_cast<std::uint64_t>(c[3]) << 32) | c[2];
    }
    block_ += blocks_per_refill;
    available_ = buffer_size;
}

//---------------------------------------------------------------------------//
double CounterStream::normal()
{
    return boost::random::normal_distribution<double>{}(*this);
}

double CounterStream::exponential()
{
    return boost::random::exponential_distribution<double>{}(*this);
}

double CounterStream::gamma(double shape)
{
    if (shape == 1)
    {
        return this->exponential();
    }
    if (shape < 1)
    {
        // Boost the shape by one and rescale: G(k) = G(k + 1) U^(1/k)
        double const boosted = this->gamma(shape + 1);
        return boosted * std::pow(this->uniform_open(), 1 / shape);
    }
    double const d = shape - 1.0 / 3;
    double const c = 1 / std::sqrt(9 * d);
    while (true)
    {
        double x;
        double v;
        do
        {
            x = this->normal();
            v = 1 + c * x;
        } while (v <= 0);
        v = v * v * v;
        double const u = this->uniform_open();
        double const x2 = x * x;
        if (u < 1 - 0.0331 * x2 * x2)
        {
            return d * v;
        }
        if (std::log(u) < 0.5 * x2 + d * (1 - v + std::log(v)))
        {
            return d * v;
        }
    }
}

std::uint64_t CounterStream::poisson(double mean)
{
    if (!(mean >= 0) || !std::isfinite(mean))
    {
        throw DomainError("Poisson mean must be finite and nonnegative");
    }
    if (mean == 0)
    {
        return 0;
    }
    if (mean < 10)
    {
        // Inversion by sequential search
        double const limit = std::exp(-mean);
        double prod = this->uniform_open();
        std::uint64_t k = 0;
        while (prod > limit)
        {
            prod *= this->uniform_open();
            ++k;
        }
        return k;
    }

    // Transformed rejection with squeeze (Hormann 1993, PTRS)
    double const slam = std::sqrt(mean);
    double const loglam = std::log(mean);
    double const b = 0.931 + 2.53 * slam;
    double const a = -0.059 + 0.02483 * b;
    double const inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    double const vr = 0.9277 - 3.6224 / (b - 2);
    while (true)
    {
        double const u = this->uniform() - 0.5;
        double const v = this->uniform_open();
        double const us = 0.5 - std::fabs(u);
        double const k = std::floor((2 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr)
        {
            return static_cast<std::uint64_t>(k);
        }
        if (k < 0 || (us < 0.013 && v > us))
        {
            continue;
        }
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b)
            <= -mean + k * loglam - log_gamma(k + 1))
        {
            return static_cast<std::uint64_t>(k);
        }
    }
}

//---------------------------------------------------------------------------//
}  // namespace meansir
