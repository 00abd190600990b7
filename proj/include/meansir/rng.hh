//---------------------------------------------------------------------------//
//! \file meansir/rng.hh
//! Counter-based random streams and the variate samplers built on them.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>

namespace meansir
{
//---------------------------------------------------------------------------//
/*!
 * Philox4x32-10 block function.
 *
 * Maps a 128-bit counter and a 64-bit key to 128 pseudo-random bits
 * (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC11).
 */
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

//---------------------------------------------------------------------------//
/*!
 * Independent random stream identified by (seed, stream index).
 *
 * The seed is the Philox key and the stream index occupies the upper half
 * of the counter, so every stream is reproducible in isolation and streams
 * never overlap (2^64 blocks each).
 */
class CounterStream
{
  public:
    using result_type = std::uint64_t;

    CounterStream(std::uint64_t seed, std::uint64_t stream);

    //! Next 64 random bits
    std::uint64_t next_u64()
    {
        if (available_ == 0)
        {
            this->refill();
        }
        return buffer_[buffer_size - available_--];
    }

    //! Uniform on [0, 1) with 53 random bits
    double uniform()
    {
        return static_cast<double>(this->next_u64() >> 11) * 0x1.0p-53;
    }

    //! Uniform on the open interval (0, 1)
    double uniform_open()
    {
        return (static_cast<double>(this->next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    //! Standard normal (ziggurat)
    double normal();

    //! Unit-mean exponential (ziggurat)
    double exponential();

    // Gamma with the given shape and unit scale (Marsaglia-Tsang)
    double gamma(double shape);

    // Poisson with the given mean (inversion below 10, PTRS above)
    std::uint64_t poisson(double mean);

    //! Philox blocks generated so far
    std::uint64_t blocks_used() const { return block_; }

    // URBG interface
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return this->next_u64(); }

  private:
    void refill();

    PhiloxKey key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    // Blocks are generated four at a time to overlap their latency chains
    static constexpr int blocks_per_refill = 4;
    static constexpr int buffer_size = 2 * blocks_per_refill;
    std::array<std::uint64_t, buffer_size> buffer_{};
    int available_ = 0;
};

//---------------------------------------------------------------------------//
}  // namespace meansir
