//---------------------------------------------------------------------------//
//! \file meansir/specfun.hh
//! Special functions and moment calculus for positive random marks.
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <string>
#include <variant>

namespace meansir
{
//---------------------------------------------------------------------------//
// SPECIAL FUNCTIONS
//---------------------------------------------------------------------------//
// Gamma function for x > 0 (Lanczos approximation, reflection below 1/2)
double gamma_fn(double x);

// Natural log of the gamma function for x > 0
double log_gamma(double x);

// Regularized lower incomplete gamma P(a, x)
double gamma_p(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x)
double gamma_q(double a, double x);

//---------------------------------------------------------------------------//
/*!
 * Marginal law of a positive random mark (channel gain or link distance).
 *
 * Three kinds are supported: a point mass, a uniform law on [lo, hi] with
 * 1 <= lo (distances never fall below the unit reference distance), and a
 * unit-mean gamma law with shape m (Nakagami-m power gain, variance 1/m).
 * The exponential law is the m = 1 gamma law.
 */
class Distribution
{
  public:
    struct Constant
    {
        double value;
        bool operator==(Constant const&) const = default;
    };
    struct UniformInterval
    {
        double lo;
        double hi;
        bool operator==(UniformInterval const&) const = default;
    };
    struct GammaUnitMean
    {
        double shape;
        bool operator==(GammaUnitMean const&) const = default;
    };
    using Kind = std::variant<Constant, UniformInterval, GammaUnitMean>;

  public:
    static Distribution constant(double value);
    static Distribution uniform(double lo, double hi);
    static Distribution gamma_unit_mean(double shape);
    static Distribution exponential_unit_mean() { return gamma_unit_mean(1); }

    Kind const& kind() const { return kind_; }
    bool is_constant() const;
    bool is_gamma(double shape) const;

    //! P[Z <= z]
    double cdf(double z) const;
    //! P[Z > z]
    double ccdf(double z) const;
    //! P[Z >= b]; differs from ccdf only at an atom
    double prob_at_least(double b) const;
    //! Density (zero for the point mass)
    double pdf(double z) const;

    double mean() const;
    double variance() const;
    double support_lo() const;
    double support_hi() const;

    // Human-readable description ("constant:15", "uniform:15,25", ...)
    std::string describe() const;

    bool operator==(Distribution const&) const = default;

  private:
    explicit Distribution(Kind kind) : kind_(kind) {}
    Kind kind_;
};

//---------------------------------------------------------------------------//
// MOMENTS
//---------------------------------------------------------------------------//
// E[Z^a] in closed form
double fractional_moment(Distribution const& dist, double a);

// E[Z^a 1{lo <= Z <= hi}]
double partial_moment(Distribution const& dist, double a, double lo, double hi);

// E[Z^a | Z >= b]
double truncated_moment_upper(Distribution const& dist, double a, double b);

// E[Z^a | Z <= b]
double truncated_moment_lower(Distribution const& dist, double a, double b);

//---------------------------------------------------------------------------//
// NUMERICAL DIFFERENTIATION
//---------------------------------------------------------------------------//
struct Derivatives
{
    double first;
    double second;
};

// Central-difference first and second derivatives with step h < x
Derivatives central_derivatives(std::function<double(double)> const& f,
                                double x,
                                double h);

//---------------------------------------------------------------------------//
}  // namespace meansir
