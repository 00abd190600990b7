//---------------------------------------------------------------------------//
//! \file analytics.cc
//---------------------------------------------------------------------------//
#include "meansir/analytics.hh"

#include <cmath>
#include <numbers>
#include <sstream>

#include "meansir/errors.hh"

namespace meansir
{
namespace
{
//---------------------------------------------------------------------------//
// Evaluate a moment, naming it in any divergence error
template<class F>
double named_moment(F&& eval, char const* name, double exponent)
{
    try
    {
        return eval(exponent);
    }
    catch (EmptyConditioningError const&)
    {
        throw;
    }
    catch (DomainError const& e)
    {
        std::ostringstream os;
        os << name << " with exponent " << exponent
           << " is not finite: " << e.what();
        throw DomainError(os.str());
    }
}

double h_moment(NetworkModel const& m, char const* name, double a)
{
    return named_moment([&m](double x) { return m.fading_h().moment(x); },
                        name,
                        a);
}

double d_moment(NetworkModel const& m, char const* name, double a)
{
    return named_moment([&m](double x) { return m.distance().moment(x); },
                        name,
                        a);
}

//! pi Gamma(1 - 2/alpha) E[P^(2/alpha)] E[G^(2/alpha)] (per unit intensity)
double interference_coefficient(NetworkModel const& eff)
{
    double const delta = 2 / eff.alpha();
    double const p_moment = named_moment(
        [&eff](double x) { return power_moment(eff, x); }, "E[P^(2/alpha)]", delta);
    double const g_moment = named_moment(
        [&eff](double x) { return fractional_moment(eff.fading_g(), x); },
        "E[G^(2/alpha)]",
        delta);
    return std::numbers::pi * gamma_fn(1 - delta) * p_moment * g_moment;
}

double signal_moment_effective(NetworkModel const& eff)
{
    double const alpha = eff.alpha();
    auto const& law = eff.power();
    if (auto const* ca
        = std::get_if<PowerControlLaw::ChannelAware>(&law.kind()))
    {
        return law.scale() * h_moment(eff, "E[H^(rho+1)]", ca->rho + 1)
               * d_moment(eff, "E[D^(upsilon-alpha)]", ca->upsilon - alpha)
               / ca->normalization;
    }
    return mean_power(eff) * h_moment(eff, "E[H]", 1)
           * d_moment(eff, "E[D^-alpha]", -alpha);
}

double log2_1p(double x)
{
    return std::log1p(x) / std::numbers::ln2;
}

void require_theta(double theta)
{
    if (!(theta >= 0) || !std::isfinite(theta))
    {
        throw DomainError("SIR threshold theta must be finite and nonnegative");
    }
}

}  // namespace

//---------------------------------------------------------------------------//
double laplace_interference(NetworkModel const& model, double s)
{
    if (!(s >= 0))
    {
        throw DomainError("Laplace variable s must be nonnegative");
    }
    if (s == 0)
    {
        return 1;
    }
    NetworkModel const eff = effective_network(model);
    double const coef = eff.intensity() * interference_coefficient(eff);
    return std::exp(-coef * std::pow(s, 2 / eff.alpha()));
}

double mean_inverse_interference(NetworkModel const& model)
{
    NetworkModel const eff = effective_network(model);
    double const alpha = eff.alpha();
    double const coef = eff.intensity() * interference_coefficient(eff);
    return gamma_fn(1 + alpha / 2) / std::pow(coef, alpha / 2);
}

double signal_moment(NetworkModel const& model)
{
    return signal_moment_effective(effective_network(model));
}

double kappa(NetworkModel const& model)
{
    NetworkModel const eff = effective_network(model);
    double const alpha = eff.alpha();
    double const thinning = eff.intensity() / model.intensity();
    double const coef = thinning * interference_coefficient(eff);
    return signal_moment_effective(eff) * gamma_fn(1 + alpha / 2)
           / std::pow(coef, alpha / 2);
}

double mean_sir(NetworkModel const& model)
{
    return kappa(model) * std::pow(model.intensity(), -model.alpha() / 2);
}

double mean_sir_nakagami(double m, double alpha, double d, double lambda)
{
    if (!(m > 0) || !(alpha > 2) || !(d >= 1) || !(lambda > 0))
    {
        throw DomainError("Nakagami mean SIR requires m > 0, alpha > 2, "
                          "d >= 1 and lambda > 0");
    }
    double const delta = 2 / alpha;
    double const log_value
        = std::log(m) + std::log(gamma_fn(1 + alpha / 2))
          + (alpha / 2)
                * (log_gamma(m) - log_gamma(m + delta)
                   - std::log(std::numbers::pi * d * d * lambda
                              * gamma_fn(1 - delta)));
    return std::exp(log_value);
}

SpectrumEfficiencyBound spectrum_efficiency_upper(NetworkModel const& model)
{
    double const k = kappa(model);
    double const sir = k * std::pow(model.intensity(), -model.alpha() / 2);
    double const ratio = model.intensity() / std::pow(k, 2 / model.alpha());
    return {log2_1p(sir), ratio, ratio >= tight_ratio_threshold};
}

AnalyticReport analytic_report(NetworkModel const& model)
{
    AnalyticReport r;
    r.kappa = kappa(model);
    r.mean_sir = r.kappa * std::pow(model.intensity(), -model.alpha() / 2);
    r.se_upper_bound = log2_1p(r.mean_sir);
    r.tightness_ratio = model.intensity()
                        / std::pow(r.kappa, 2 / model.alpha());
    r.tight = r.tightness_ratio >= tight_ratio_threshold;
    r.lambda_s = effective_network(model).intensity();
    r.mean_inverse_interference = mean_inverse_interference(model);
    return r;
}

//---------------------------------------------------------------------------//
PowerControlConditions
power_control_conditions(NetworkModel const& model, double rho, double upsilon)
{
    NetworkModel const eff = effective_network(model);
    double const alpha = model.alpha();

    PowerControlConditions c;
    c.rho_at_least_minus_one = rho >= -1;
    c.gain_moment_lhs = h_moment(eff, "E[H^(1+rho)]", 1 + rho);
    c.gain_moment_rhs = h_moment(eff, "E[H^rho]", rho);
    c.gain_moment_increases = c.gain_moment_lhs >= c.gain_moment_rhs;
    c.upsilon_at_least_alpha = upsilon >= alpha;
    c.distance_moment_rhs = d_moment(eff, "E[D]", 1);
    if (upsilon == 0)
    {
        c.distance_moment_lhs = std::numeric_limits<double>::quiet_NaN();
        c.distance_moment_increases = false;
    }
    else
    {
        c.distance_moment_lhs
            = d_moment(eff, "E[D^(1-alpha/upsilon)]", 1 - alpha / upsilon);
        c.distance_moment_increases = c.distance_moment_lhs
                                      >= c.distance_moment_rhs;
    }
    c.all_conditions = c.rho_at_least_minus_one && c.gain_moment_increases
                       && c.upsilon_at_least_alpha
                       && c.distance_moment_increases;

    c.mean_sir_aware = mean_sir(
        model.with_power(PowerControlLaw::channel_aware(rho, upsilon)));
    c.mean_sir_constant = mean_sir(model.with_power(PowerControlLaw::constant()));
    c.improvement_ratio = c.mean_sir_aware / c.mean_sir_constant;
    c.empirical_improvement = c.improvement_ratio > 1 + 1e-12;

    if (auto const* opp = std::get_if<SchedulingPolicy::Opportunistic>(
            &model.scheduling().kind()))
    {
        auto const& h = model.fading_h().dist;
        auto const& d = model.distance().dist;
        double const delta = 2 / alpha;
        double const thinned = h.prob_at_least(opp->h0) * d.cdf(opp->d0)
                               * truncated_moment_upper(h, delta * rho, opp->h0)
                               * truncated_moment_lower(d, delta * upsilon, opp->d0);
        double const full
            = truncated_moment_upper(h, delta * rho, 0)
              * truncated_moment_lower(d, delta * upsilon, d.support_hi());
        c.scheduling_guideline = thinned < full;
    }
    return c;
}

//---------------------------------------------------------------------------//
double rayleigh_sir_ccdf(NetworkModel const& model, double theta)
{
    require_theta(theta);
    auto const* dist = std::get_if<Distribution::Constant>(
        &model.distance().dist.kind());
    if (!model.fading_h().dist.is_gamma(1) || model.fading_h().conditioned()
        || !model.fading_g().is_gamma(1) || !model.power().is_constant()
        || !dist || !model.scheduling().is_always_on())
    {
        throw UnsupportedModelError(
            "closed-form CCDF needs Rayleigh fading, constant power, fixed "
            "distance and no scheduling; use a simulated CCDF");
    }
    double const delta = 2 / model.alpha();
    double const d = dist->value;
    double const exponent = std::numbers::pi * model.intensity() * d * d
                            * std::pow(theta, delta) * gamma_fn(1 + delta)
                            * gamma_fn(1 - delta);
    return std::exp(-exponent);
}

double link_throughput(NetworkModel const& model,
                       double theta,
                       CcdfSource const& ccdf)
{
    require_theta(theta);
    return ccdf.evaluate(model, theta) * log2_1p(mean_sir(model));
}

double throughput_capacity(NetworkModel const& model,
                           double theta,
                           CcdfSource const& ccdf)
{
    return model.intensity() * link_throughput(model, theta, ccdf);
}

//---------------------------------------------------------------------------//
ConcavityMembership concavity_membership(NetworkModel const& model,
                                         double theta,
                                         double lambda,
                                         CcdfSource const& ccdf,
                                         double boundary_slack)
{
    double const step = std::max(1e-4 * lambda, 1e-9);
    if (!(step < lambda))
    {
        std::ostringstream os;
        os << "derivative step " << step << " is not below lambda=" << lambda;
        throw StepSizeError(os.str());
    }
    auto ell = [&](double x) {
        return link_throughput(model.with_intensity(x), theta, ccdf);
    };
    Derivatives const coarse = central_derivatives(ell, lambda, step);
    Derivatives const fine = central_derivatives(ell, lambda, step / 2);

    ConcavityMembership r;
    r.step = step;
    r.link_throughput = ell(lambda);
    r.first_derivative = (4 * fine.first - coarse.first) / 3;
    r.second_derivative = (4 * fine.second - coarse.second) / 3;
    r.curvature_term = 0.5 * lambda * r.second_derivative;
    r.slope_term = -r.first_derivative;
    r.ratio_term = r.link_throughput / lambda;
    r.member = r.curvature_term < r.slope_term
               && r.slope_term < r.ratio_term + boundary_slack;
    return r;
}

//---------------------------------------------------------------------------//
}  // namespace meansir
