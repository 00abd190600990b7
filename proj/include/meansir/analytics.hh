//---------------------------------------------------------------------------//
//! \file meansir/analytics.hh
//! Closed-form interference and SIR functionals of the marked network.
//---------------------------------------------------------------------------//
#pragma once

#include <optional>

#include "ccdf.hh"
#include "models.hh"

namespace meansir
{
//---------------------------------------------------------------------------//
/*!
 * Summary of the closed-form metrics of a model.
 *
 * \c kappa is defined against the nominal intensity, so that
 * mean_sir == kappa * lambda^(-alpha/2) also holds for scheduled models
 * (the thinning factor is absorbed into kappa).
 */
struct AnalyticReport
{
    double mean_sir;
    double kappa;
    double se_upper_bound;  //!< bits/s/Hz
    double tightness_ratio;  //!< lambda / kappa^(2/alpha)
    bool tight;  //!< tightness_ratio >= tight_ratio_threshold
    double lambda_s;  //!< intensity of active transmitters
    double mean_inverse_interference;
};

//! Ratio above which the spectrum-efficiency bound is flagged as tight
inline constexpr double tight_ratio_threshold = 10;

//---------------------------------------------------------------------------//
// E[exp(-s I)] at the reference receiver
double laplace_interference(NetworkModel const& model, double s);

// E[1/I]
double mean_inverse_interference(NetworkModel const& model);

// E[P H D^-alpha] of the (scheduled) reference link
double signal_moment(NetworkModel const& model);

// E[SIR]
double mean_sir(NetworkModel const& model);

// E[SIR] for Nakagami-m fading, constant power and fixed distance d
double mean_sir_nakagami(double m, double alpha, double d, double lambda);

// E[SIR] * lambda^(alpha/2)
double kappa(NetworkModel const& model);

//! log2(1 + mean SIR) with its tightness diagnostics
struct SpectrumEfficiencyBound
{
    double bits;
    double tightness_ratio;
    bool tight;
};

SpectrumEfficiencyBound spectrum_efficiency_upper(NetworkModel const& model);

AnalyticReport analytic_report(NetworkModel const& model);

//---------------------------------------------------------------------------//
/*!
 * Sufficient conditions under which channel-aware power H^rho D^upsilon
 * improves the mean SIR over constant power.
 *
 * The four literal conditions are evaluated independently of the actual
 * ordering of the two mean SIRs, which is reported separately. The
 * scheduling guideline (thinned interference moment smaller than the
 * unthinned one) is a diagnostic, present only for opportunistic models.
 */
struct PowerControlConditions
{
    bool rho_at_least_minus_one;
    bool gain_moment_increases;  //!< E[H^(1+rho)] >= E[H^rho]
    bool upsilon_at_least_alpha;
    bool distance_moment_increases;  //!< E[D^(1-alpha/upsilon)] >= E[D]
    bool all_conditions;

    double gain_moment_lhs;
    double gain_moment_rhs;
    double distance_moment_lhs;  //!< NaN when upsilon == 0
    double distance_moment_rhs;

    double mean_sir_aware;
    double mean_sir_constant;
    double improvement_ratio;
    bool empirical_improvement;

    std::optional<bool> scheduling_guideline;
};

PowerControlConditions
power_control_conditions(NetworkModel const& model, double rho, double upsilon);

//---------------------------------------------------------------------------//
// P[SIR >= theta] for Rayleigh fading, constant power and fixed distance
double rayleigh_sir_ccdf(NetworkModel const& model, double theta);

// F^c(lambda, theta) * log2(1 + E[SIR]) at the model's intensity
double link_throughput(NetworkModel const& model,
                       double theta,
                       CcdfSource const& ccdf);

// lambda * link_throughput
double throughput_capacity(NetworkModel const& model,
                           double theta,
                           CcdfSource const& ccdf);

//---------------------------------------------------------------------------//
/*!
 * Test whether throughput capacity is increasing and concave at lambda.
 *
 * With l(lambda) the link throughput, membership requires
 * (lambda / 2) l'' < -l' < l / lambda, the first inequality being
 * concavity of lambda * l and the second its positive slope. Derivatives
 * use central differences with step max(1e-4 lambda, 1e-9) and one
 * Richardson refinement.
 *
 * \c boundary_slack relaxes the slope inequality to
 * -l' < l / lambda + slack, for use at a numerically located maximizer
 * where the slope vanishes.
 */
struct ConcavityMembership
{
    bool member;
    double link_throughput;
    double first_derivative;
    double second_derivative;
    double curvature_term;  //!< (lambda / 2) l''
    double slope_term;  //!< -l'
    double ratio_term;  //!< l / lambda
    double step;
};

ConcavityMembership concavity_membership(NetworkModel const& model,
                                         double theta,
                                         double lambda,
                                         CcdfSource const& ccdf,
                                         double boundary_slack = 0);

//---------------------------------------------------------------------------//
}  // namespace meansir
