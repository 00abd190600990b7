//---------------------------------------------------------------------------//
//! \file models.cc
//---------------------------------------------------------------------------//
#include "meansir/models.hh"

#include <cmath>
#include <sstream>

#include "meansir/errors.hh"
#include "meansir/format.hh"

namespace meansir
{
namespace
{
constexpr double inf = std::numeric_limits<double>::infinity();

std::string fmt(double v)
{
    return shortest(v);
}

void require_unit_mean(Distribution const& d, char const* name)
{
    if (std::fabs(d.mean() - 1) > 1e-12)
    {
        throw DomainError(std::string(name) + " must have unit mean (got "
                          + d.describe() + ")");
    }
}

}  // namespace

//---------------------------------------------------------------------------//
// MARK LAW
//---------------------------------------------------------------------------//
bool MarkLaw::conditioned() const
{
    return at_least > dist.support_lo() || at_most < dist.support_hi();
}

double MarkLaw::probability() const
{
    if (!this->conditioned())
    {
        return 1;
    }
    double const upper = dist.prob_at_least(at_least);
    double const above = std::isinf(at_most) ? 0 : dist.ccdf(at_most);
    return std::max(0.0, upper - above);
}

double MarkLaw::moment(double a) const
{
    bool const lower_active = at_least > dist.support_lo();
    bool const upper_active = at_most < dist.support_hi();
    if (!lower_active && !upper_active)
    {
        return fractional_moment(dist, a);
    }
    if (lower_active && !upper_active)
    {
        return truncated_moment_upper(dist, a, at_least);
    }
    if (!lower_active && upper_active)
    {
        return truncated_moment_lower(dist, a, at_most);
    }
    double const prob = this->probability();
    if (!(prob > 0))
    {
        throw EmptyConditioningError("conditioning event of " + describe()
                                     + " has zero probability");
    }
    if (a == 0)
    {
        return 1;
    }
    return partial_moment(dist, a, at_least, at_most) / prob;
}

std::string MarkLaw::describe() const
{
    std::string result = dist.describe();
    if (at_least > 0)
    {
        result += "|>=" + fmt(at_least);
    }
    if (!std::isinf(at_most))
    {
        result += "|<=" + fmt(at_most);
    }
    return result;
}

//---------------------------------------------------------------------------//
// POWER CONTROL LAW
//---------------------------------------------------------------------------//
PowerControlLaw PowerControlLaw::constant(double p)
{
    if (!(p > 0) || !std::isfinite(p))
    {
        throw DomainError("constant transmit power must be positive");
    }
    return PowerControlLaw{ConstantPower{p}};
}

PowerControlLaw PowerControlLaw::channel_aware(double rho, double upsilon)
{
    if (!std::isfinite(rho) || !std::isfinite(upsilon))
    {
        throw DomainError("power-control exponents must be finite");
    }
    return PowerControlLaw{
        ChannelAware{rho, upsilon, std::numeric_limits<double>::quiet_NaN()}};
}

PowerControlLaw PowerControlLaw::random(Distribution dist)
{
    return PowerControlLaw{RandomPower{dist}};
}

bool PowerControlLaw::is_channel_aware() const
{
    return std::holds_alternative<ChannelAware>(kind_);
}

bool PowerControlLaw::is_constant() const
{
    return std::holds_alternative<ConstantPower>(kind_);
}

bool PowerControlLaw::is_bound() const
{
    auto const* ca = std::get_if<ChannelAware>(&kind_);
    return !ca || std::isfinite(ca->normalization);
}

PowerControlLaw
PowerControlLaw::bound_to(Distribution const& h, Distribution const& d) const
{
    PowerControlLaw result = *this;
    if (auto* ca = std::get_if<ChannelAware>(&result.kind_))
    {
        double norm;
        try
        {
            norm = fractional_moment(h, ca->rho)
                   * fractional_moment(d, ca->upsilon);
        }
        catch (DomainError const& e)
        {
            throw DomainError(
                "power normalization E[H^rho D^upsilon] diverges: "
                + std::string(e.what()));
        }
        if (!(norm > 0) || !std::isfinite(norm))
        {
            throw DomainError("power normalization E[H^rho D^upsilon] is not "
                              "positive and finite");
        }
        ca->normalization = norm;
    }
    return result;
}

PowerControlLaw PowerControlLaw::scaled(double c) const
{
    if (!(c > 0) || !std::isfinite(c))
    {
        throw DomainError("power scale must be positive");
    }
    PowerControlLaw result = *this;
    result.scale_ *= c;
    return result;
}

std::string PowerControlLaw::describe() const
{
    std::string base = std::visit(
        [](auto const& k) -> std::string {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ConstantPower>)
                return "const:" + fmt(k.p);
            else if constexpr (std::is_same_v<K, ChannelAware>)
                return "aware:rho=" + fmt(k.rho) + ",upsilon=" + fmt(k.upsilon);
            else
                return "random:" + k.dist.describe();
        },
        kind_);
    if (scale_ != 1)
    {
        base += "*" + fmt(scale_);
    }
    return base;
}

//---------------------------------------------------------------------------//
// SCHEDULING
//---------------------------------------------------------------------------//
SchedulingPolicy SchedulingPolicy::opportunistic(double h0, double d0)
{
    if (!(h0 >= 0) || !std::isfinite(h0))
    {
        throw DomainError("scheduling gain threshold h0 must be nonnegative");
    }
    if (!(d0 >= 1))
    {
        throw DomainError("scheduling distance cap d0 must be at least 1");
    }
    return SchedulingPolicy{Opportunistic{h0, d0}};
}

bool SchedulingPolicy::is_always_on() const
{
    return std::holds_alternative<AlwaysOn>(kind_);
}

std::string SchedulingPolicy::describe() const
{
    if (auto const* o = std::get_if<Opportunistic>(&kind_))
    {
        return "opp:h0=" + fmt(o->h0) + ",d0=" + fmt(o->d0);
    }
    return "none";
}

//---------------------------------------------------------------------------//
// NETWORK MODEL
//---------------------------------------------------------------------------//
NetworkModel::NetworkModel(double intensity,
                           double alpha,
                           MarkLaw fading_h,
                           Distribution fading_g,
                           MarkLaw distance,
                           PowerControlLaw power,
                           SchedulingPolicy scheduling)
    : intensity_(intensity)
    , alpha_(alpha)
    , fading_h_(fading_h)
    , fading_g_(fading_g)
    , distance_(distance)
    , power_(power.bound_to(fading_h.dist, distance.dist))
    , scheduling_(scheduling)
{
    if (!(intensity_ > 0) || !std::isfinite(intensity_))
    {
        throw DomainError("lambda must be positive and finite");
    }
    if (!(alpha_ > 2) || !std::isfinite(alpha_))
    {
        throw DomainError("alpha must exceed 2");
    }
    require_unit_mean(fading_h_.dist, "fading H");
    require_unit_mean(fading_g_, "fading G");
    if (!(distance_.dist.support_lo() >= 1))
    {
        throw DomainError("distance D must be supported on [1, inf) (got "
                          + distance_.dist.describe() + ")");
    }
    if (!(fading_h_.probability() > 0) || !(distance_.probability() > 0))
    {
        throw EmptyNetworkError("mark conditioning has zero probability");
    }
    if (auto const* o
        = std::get_if<SchedulingPolicy::Opportunistic>(&scheduling_.kind()))
    {
        if (!(fading_h_.dist.prob_at_least(o->h0) > 0))
        {
            throw EmptyNetworkError("scheduling: P[H >= h0] = 0 for h0="
                                    + fmt(o->h0));
        }
        if (!(distance_.dist.cdf(o->d0) > 0))
        {
            throw EmptyNetworkError("scheduling: P[D <= d0] = 0 for d0="
                                    + fmt(o->d0));
        }
    }
}

NetworkModel NetworkModel::make(double intensity,
                                double alpha,
                                Distribution fading,
                                Distribution distance,
                                PowerControlLaw power,
                                SchedulingPolicy scheduling)
{
    return NetworkModel(
        intensity, alpha, fading, fading, distance, power, scheduling);
}

NetworkModel NetworkModel::with_intensity(double intensity) const
{
    NetworkModel m = *this;
    m.intensity_ = intensity;
    if (!(intensity > 0) || !std::isfinite(intensity))
    {
        throw DomainError("lambda must be positive and finite");
    }
    return m;
}

NetworkModel NetworkModel::with_alpha(double alpha) const
{
    return NetworkModel(intensity_,
                        alpha,
                        fading_h_,
                        fading_g_,
                        distance_,
                        power_,
                        scheduling_);
}

NetworkModel NetworkModel::with_power(PowerControlLaw power) const
{
    return NetworkModel(intensity_,
                        alpha_,
                        fading_h_,
                        fading_g_,
                        distance_,
                        power,
                        scheduling_);
}

NetworkModel NetworkModel::with_scheduling(SchedulingPolicy scheduling) const
{
    return NetworkModel(intensity_,
                        alpha_,
                        fading_h_,
                        fading_g_,
                        distance_,
                        power_,
                        scheduling);
}

NetworkModel NetworkModel::with_fading(Distribution h, Distribution g) const
{
    return NetworkModel(
        intensity_, alpha_, h, g, distance_.dist, power_, scheduling_);
}

NetworkModel NetworkModel::with_distance(Distribution d) const
{
    return NetworkModel(
        intensity_, alpha_, fading_h_.dist, fading_g_, d, power_, scheduling_);
}

namespace
{
std::string describe_fading(Distribution const& d)
{
    if (d.is_constant())
        return "none";
    if (d.is_gamma(1))
        return "rayleigh";
    auto const& g = std::get<Distribution::GammaUnitMean>(d.kind());
    return "nakagami:m=" + fmt(g.shape);
}

std::string describe_distance(Distribution const& d)
{
    if (auto const* c = std::get_if<Distribution::Constant>(&d.kind()))
        return "fixed:" + fmt(c->value);
    auto const& u = std::get<Distribution::UniformInterval>(d.kind());
    return "uniform:" + fmt(u.lo) + "," + fmt(u.hi);
}
}  // namespace

std::string NetworkModel::describe() const
{
    std::ostringstream os;
    os << "lambda=" << fmt(intensity_) << '\n'
       << "alpha=" << fmt(alpha_) << '\n'
       << "fading=" << describe_fading(fading_h_.dist) << '\n';
    if (!(fading_g_ == fading_h_.dist))
    {
        os << "fading_g=" << describe_fading(fading_g_) << '\n';
    }
    os << "distance=" << describe_distance(distance_.dist) << '\n'
       << "power=" << power_.describe() << '\n'
       << "sched=" << scheduling_.describe() << '\n';
    if (fading_h_.conditioned() || distance_.conditioned())
    {
        os << "# conditioned marks: H~" << fading_h_.describe()
           << " D~" << distance_.describe() << '\n';
    }
    return os.str();
}

//---------------------------------------------------------------------------//
// OPERATIONS
//---------------------------------------------------------------------------//
double sample_mark(Distribution const& dist, CounterStream& rng)
{
    return std::visit(
        [&rng](auto const& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Distribution::Constant>)
                return k.value;
            else if constexpr (std::is_same_v<K, Distribution::UniformInterval>)
                return k.lo + (k.hi - k.lo) * rng.uniform();
            else
                return rng.gamma(k.shape) / k.shape;
        },
        dist.kind());
}

double sample_mark(MarkLaw const& law, CounterStream& rng)
{
    if (!law.conditioned())
    {
        return sample_mark(law.dist, rng);
    }
    for (int attempt = 0; attempt < 10'000'000; ++attempt)
    {
        double const z = sample_mark(law.dist, rng);
        if (law.accepts(z))
        {
            return z;
        }
    }
    throw DegenerateConfigurationError("rejection sampling of "
                                       + law.describe() + " did not accept");
}

double tx_power(PowerControlLaw const& law, double h, double d)
{
    return std::visit(
        [&law, h, d](auto const& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, PowerControlLaw::ConstantPower>)
            {
                return law.scale() * k.p;
            }
            else if constexpr (std::is_same_v<K, PowerControlLaw::ChannelAware>)
            {
                if (!std::isfinite(k.normalization))
                {
                    throw DomainError("channel-aware power law is not bound "
                                      "to mark laws");
                }
                return law.scale() * std::pow(h, k.rho) * std::pow(d, k.upsilon)
                       / k.normalization;
            }
            else
            {
                throw DomainError("random power is not a function of (h, d)");
            }
        },
        law.kind());
}

double power_moment(NetworkModel const& model, double a)
{
    auto const& law = model.power();
    double const moment = std::visit(
        [&model, a](auto const& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, PowerControlLaw::ConstantPower>)
            {
                return std::pow(k.p, a);
            }
            else if constexpr (std::is_same_v<K, PowerControlLaw::ChannelAware>)
            {
                return model.fading_h().moment(k.rho * a)
                       * model.distance().moment(k.upsilon * a)
                       / std::pow(k.normalization, a);
            }
            else
            {
                return fractional_moment(k.dist, a);
            }
        },
        law.kind());
    return std::pow(law.scale(), a) * moment;
}

double mean_power(NetworkModel const& model)
{
    return power_moment(model, 1);
}

NetworkModel effective_network(NetworkModel const& model)
{
    auto const* opp = std::get_if<SchedulingPolicy::Opportunistic>(
        &model.scheduling().kind());
    if (!opp)
    {
        return model;
    }
    MarkLaw h = model.fading_h();
    MarkLaw d = model.distance();
    double const prob_before = h.probability() * d.probability();
    h.at_least = std::max(h.at_least, opp->h0);
    d.at_most = std::min(d.at_most, opp->d0);
    double const prob_after = h.probability() * d.probability();
    double const thinning = prob_after / prob_before;
    double const lambda_s = model.intensity() * thinning;
    if (!(lambda_s > 0))
    {
        throw EmptyNetworkError("opportunistic scheduling leaves no "
                                "transmitters (lambda_s = 0)");
    }
    return NetworkModel(lambda_s,
                        model.alpha(),
                        h,
                        model.fading_g(),
                        d,
                        model.power(),
                        SchedulingPolicy::always_on());
}

//---------------------------------------------------------------------------//
}  // namespace meansir
