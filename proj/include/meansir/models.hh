//---------------------------------------------------------------------------//
//! \file meansir/models.hh
//! Marked Poisson network description, mark sampling and thinning.
//---------------------------------------------------------------------------//
#pragma once

#include <limits>
#include <string>
#include <variant>

#include "rng.hh"
#include "specfun.hh"

namespace meansir
{
//---------------------------------------------------------------------------//
/*!
 * A mark law, optionally conditioned on at_least <= Z <= at_most.
 *
 * Moment queries route to the closed-form or truncated moment calculus
 * depending on which bounds are active.
 */
struct MarkLaw
{
    Distribution dist;
    double at_least = 0;
    double at_most = std::numeric_limits<double>::infinity();

    MarkLaw(Distribution d) : dist(d) {}  // NOLINT(implicit)
    MarkLaw(Distribution d, double lo, double hi)
        : dist(d), at_least(lo), at_most(hi)
    {
    }

    bool conditioned() const;
    bool accepts(double z) const { return z >= at_least && z <= at_most; }
    // P[at_least <= Z <= at_most] under the base law
    double probability() const;
    // E[Z^a | conditioning]
    double moment(double a) const;
    std::string describe() const;

    bool operator==(MarkLaw const&) const = default;
};

//---------------------------------------------------------------------------//
/*!
 * Transmit power law.
 *
 * - constant power p;
 * - channel-aware power P = H^rho D^upsilon / E[H^rho D^upsilon];
 * - random power drawn i.i.d. from a law independent of (H, D).
 *
 * The channel-aware normalization is bound when the law is placed in a
 * NetworkModel, since it depends on the model's H and D laws.
 */
class PowerControlLaw
{
  public:
    struct ConstantPower
    {
        double p;
        bool operator==(ConstantPower const&) const = default;
    };
    struct ChannelAware
    {
        double rho;
        double upsilon;
        double normalization;  //!< E[H^rho D^upsilon], NaN until bound
        bool operator==(ChannelAware const& o) const
        {
            return rho == o.rho && upsilon == o.upsilon;
        }
    };
    struct RandomPower
    {
        Distribution dist;
        bool operator==(RandomPower const&) const = default;
    };
    using Kind = std::variant<ConstantPower, ChannelAware, RandomPower>;

  public:
    static PowerControlLaw constant(double p = 1);
    static PowerControlLaw channel_aware(double rho, double upsilon);
    static PowerControlLaw random(Distribution dist);

    Kind const& kind() const { return kind_; }
    bool is_channel_aware() const;
    bool is_constant() const;
    bool is_bound() const;
    //! Common multiplier applied to every transmit power
    double scale() const { return scale_; }

    // Bind the channel-aware normalization to the given H and D laws
    PowerControlLaw bound_to(Distribution const& h, Distribution const& d) const;

    // Scale every transmit power by c > 0 (same SIR statistics)
    PowerControlLaw scaled(double c) const;

    std::string describe() const;
    bool operator==(PowerControlLaw const&) const = default;

  private:
    explicit PowerControlLaw(Kind k) : kind_(k) {}
    Kind kind_;
    double scale_ = 1;
};

//---------------------------------------------------------------------------//
//! Transmission scheduling: always on, or only when H >= h0 and D <= d0.
class SchedulingPolicy
{
  public:
    struct AlwaysOn
    {
        bool operator==(AlwaysOn const&) const = default;
    };
    struct Opportunistic
    {
        double h0;
        double d0;
        bool operator==(Opportunistic const&) const = default;
    };
    using Kind = std::variant<AlwaysOn, Opportunistic>;

    static SchedulingPolicy always_on() { return SchedulingPolicy{AlwaysOn{}}; }
    static SchedulingPolicy opportunistic(double h0, double d0);

    Kind const& kind() const { return kind_; }
    bool is_always_on() const;
    std::string describe() const;
    bool operator==(SchedulingPolicy const&) const = default;

  private:
    explicit SchedulingPolicy(Kind k) : kind_(k) {}
    Kind kind_;
};

//---------------------------------------------------------------------------//
/*!
 * Marked homogeneous Poisson network of transmitters.
 *
 * Each transmitter carries a link gain H toward its own receiver, a link
 * distance D >= 1 and a transmit power P; G is the gain from an interferer
 * to the reference receiver. The model is immutable: the \c with_* helpers
 * return validated copies.
 */
class NetworkModel
{
  public:
    NetworkModel(double intensity,
                 double alpha,
                 MarkLaw fading_h,
                 Distribution fading_g,
                 MarkLaw distance,
                 PowerControlLaw power = PowerControlLaw::constant(),
                 SchedulingPolicy scheduling = SchedulingPolicy::always_on());

    //! Convenience: G follows the same law as H
    static NetworkModel make(double intensity,
                             double alpha,
                             Distribution fading,
                             Distribution distance,
                             PowerControlLaw power = PowerControlLaw::constant(),
                             SchedulingPolicy scheduling
                             = SchedulingPolicy::always_on());

    double intensity() const { return intensity_; }
    double alpha() const { return alpha_; }
    MarkLaw const& fading_h() const { return fading_h_; }
    Distribution const& fading_g() const { return fading_g_; }
    MarkLaw const& distance() const { return distance_; }
    PowerControlLaw const& power() const { return power_; }
    SchedulingPolicy const& scheduling() const { return scheduling_; }

    NetworkModel with_intensity(double intensity) const;
    NetworkModel with_alpha(double alpha) const;
    NetworkModel with_power(PowerControlLaw power) const;
    NetworkModel with_scheduling(SchedulingPolicy scheduling) const;
    NetworkModel with_fading(Distribution h, Distribution g) const;
    NetworkModel with_distance(Distribution d) const;

    // Key=value description in the model text format
    std::string describe() const;

    bool operator==(NetworkModel const&) const = default;

  private:
    double intensity_;
    double alpha_;
    MarkLaw fading_h_;
    Distribution fading_g_;
    MarkLaw distance_;
    PowerControlLaw power_;
    SchedulingPolicy scheduling_;
};

//---------------------------------------------------------------------------//
// OPERATIONS
//---------------------------------------------------------------------------//
// Draw one variate of the mark law
double sample_mark(Distribution const& dist, CounterStream& rng);

// Draw from a conditioned law by rejection from its base law
double sample_mark(MarkLaw const& law, CounterStream& rng);

// Transmit power for own-link gain h and distance d
double tx_power(PowerControlLaw const& law, double h, double d);

// Mean and 2/alpha-th moment of the transmit power under the model's marks
double mean_power(NetworkModel const& model);
double power_moment(NetworkModel const& model, double a);

/*!
 * Scheduling-thinned network.
 *
 * Always-on models are returned unchanged. Opportunistic scheduling yields
 * an always-on model with intensity lambda P[H >= h0] P[D <= d0] whose H and
 * D laws are conditioned on the scheduling event. G stays unconditioned.
 */
NetworkModel effective_network(NetworkModel const& model);

//---------------------------------------------------------------------------//
}  // namespace meansir
