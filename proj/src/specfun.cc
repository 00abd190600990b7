//---------------------------------------------------------------------------//
//! \file specfun.cc
//---------------------------------------------------------------------------//
#include "meansir/specfun.hh"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "meansir/errors.hh"
#include "meansir/format.hh"
#include "meansir/quadrature.hh"

namespace meansir
{
namespace
{
//---------------------------------------------------------------------------//
// Lanczos coefficients for g = 7, n = 9
constexpr double lanczos_g = 7;
constexpr std::array<double, 9> lanczos_coeff = {
    0.99999999999980993227684700473478,
    676.520368121885098567009190444019,
    -1259.13921672240287047156078755283,
    771.3234287776530788486528258894,
    -176.61502916214059906584551354,
    12.507343278686904814458936853,
    -0.13857109526572011689554707,
    9.984369578019570859563e-6,
    1.50563273514931155834e-7,
};

double lanczos_sum(double xm1)
{
    double sum = lanczos_coeff[0];
    for (std::size_t i = 1; i < lanczos_coeff.size(); ++i)
    {
        sum += lanczos_coeff[i] / (xm1 + static_cast<double>(i));
    }
    return sum;
}

constexpr double half_log_two_pi = 0.91893853320467274178032973640562;

void require_positive(double x, char const* what)
{
    if (!(x > 0) || !std::isfinite(x))
    {
        std::ostringstream os;
        os << what << " requires a positive finite argument (got " << x << ")";
        throw DomainError(os.str());
    }
}

//---------------------------------------------------------------------------//
// Series for P(a, x), valid for x < a + 1
double gamma_p_series(double a, double x)
{
    double ap = a;
    double term = 1 / a;
    double sum = term;
    for (int n = 0; n < 100000; ++n)
    {
        ap += 1;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-17)
        {
            break;
        }
    }
    return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
}

// Modified Lentz continued fraction for Q(a, x), valid for x >= a + 1
double gamma_q_fraction(double a, double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1 - a;
    double c = 1 / tiny;
    double d = 1 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i)
    {
        double const an = -i * (i - a);
        b += 2;
        d = an * d + b;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1 / d;
        double const delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1) < 1e-16)
        {
            break;
        }
    }
    return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
}

//---------------------------------------------------------------------------//
// Log of the gamma density normalization m^m / Gamma(m)
double gamma_log_norm(double m)
{
    return m * std::log(m) - log_gamma(m);
}

/*!
 * Integral of z^(s-1) exp(-m z) over [lo, hi], with s = a + m > 0.
 *
 * Uses the regularized incomplete gamma function; the difference is taken
 * on whichever tail keeps both terms away from 1.
 */
double gamma_power_integral(double m, double s, double lo, double hi)
{
    double const x_lo = m * lo;
    double const x_hi = m * hi;
    double diff;
    if (x_lo >= s)
    {
        diff = gamma_q(s, x_lo) - (std::isinf(hi) ? 0 : gamma_q(s, x_hi));
    }
    else
    {
        double const upper = std::isinf(hi) ? 1 : gamma_p(s, x_hi);
        double const lower = lo > 0 ? gamma_p(s, x_lo) : 0;
        diff = upper - lower;
        if (x_hi > s && diff > 0.5)
        {
            // Both terms may be close to 1; use complements where possible
            diff = (1 - lower) - (std::isinf(hi) ? 0 : gamma_q(s, x_hi));
        }
    }
    return std::max(diff, 0.0) * std::exp(log_gamma(s) - s * std::log(m));
}

}  // namespace

//---------------------------------------------------------------------------//
// SPECIAL FUNCTIONS
//---------------------------------------------------------------------------//
double gamma_fn(double x)
{
    require_positive(x, "gamma function");
    if (x < 0.5)
    {
        // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        return std::numbers::pi
               / (std::sin(std::numbers::pi * x) * gamma_fn(1 - x));
    }
    double const xm1 = x - 1;
    double const t = xm1 + lanczos_g + 0.5;
    // Split the power to delay overflow for large x
    double const half_pow = std::pow(t, 0.5 * (xm1 + 0.5));
    return std::sqrt(2 * std::numbers::pi) * half_pow * (half_pow * std::exp(-t))
           * lanczos_sum(xm1);
}

double log_gamma(double x)
{
    require_positive(x, "log-gamma function");
    if (x < 0.5)
    {
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x))
               - log_gamma(1 - x);
    }
    double const xm1 = x - 1;
    double const t = xm1 + lanczos_g + 0.5;
    return half_log_two_pi + (xm1 + 0.5) * std::log(t) - t
           + std::log(lanczos_sum(xm1));
}

double gamma_p(double a, double x)
{
    require_positive(a, "incomplete gamma shape");
    if (x <= 0)
        return 0;
    if (std::isinf(x))
        return 1;
    if (x < a + 1)
        return gamma_p_series(a, x);
    return 1 - gamma_q_fraction(a, x);
}

double gamma_q(double a, double x)
{
    require_positive(a, "incomplete gamma shape");
    if (x <= 0)
        return 1;
    if (std::isinf(x))
        return 0;
    if (x < a + 1)
        return 1 - gamma_p_series(a, x);
    return gamma_q_fraction(a, x);
}

//---------------------------------------------------------------------------//
// DISTRIBUTION
//---------------------------------------------------------------------------//
Distribution Distribution::constant(double value)
{
    if (!(value > 0) || !std::isfinite(value))
    {
        throw DomainError("constant mark must be positive and finite");
    }
    return Distribution{Constant{value}};
}

Distribution Distribution::uniform(double lo, double hi)
{
    if (!(lo >= 1) || !(hi > lo) || !std::isfinite(hi))
    {
        std::ostringstream os;
        os << "uniform interval requires 1 <= lo < hi (got " << lo << ", "
           << hi << ")";
        throw DomainError(os.str());
    }
    return Distribution{UniformInterval{lo, hi}};
}

Distribution Distribution::gamma_unit_mean(double shape)
{
    if (!(shape > 0) || !std::isfinite(shape))
    {
        throw DomainError("Nakagami shape m must be positive");
    }
    return Distribution{GammaUnitMean{shape}};
}

bool Distribution::is_constant() const
{
    return std::holds_alternative<Constant>(kind_);
}

bool Distribution::is_gamma(double shape) const
{
    auto const* g = std::get_if<GammaUnitMean>(&kind_);
    return g && g->shape == shape;
}

double Distribution::cdf(double z) const
{
    return std::visit(
        [z](auto const& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Constant>)
            {
                return z >= k.value ? 1 : 0;
            }
            else if constexpr (std::is_same_v<K, UniformInterval>)
            {
                if (z <= k.lo)
                    return 0;
                if (z >= k.hi)
                    return 1;
                return (z - k.lo) / (k.hi - k.lo);
            }
            else
            {
                return gamma_p(k.shape, k.shape * z);
            }
        },
        kind_);
}

double Distribution::ccdf(double z) const
{
    return std::visit(
        [z](auto const& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Constant>)
            {
                return z < k.value ? 1 : 0;
            }
            else if constexpr (std::is_same_v<K, UniformInterval>)
            {
                if (z <= k.lo)
                    return 1;
                if (z >= k.hi)
                    return 0;
                return (k.hi - z) / (k.hi - k.lo);
            }
            else
            {
                return gamma_q(k.shape, k.shape * z);
            }
        },
        kind_);
}

double Distribution::prob_at_least(double b) const
{
    if (auto const* c = std::get_if<Constant>(&kind_))
    {
        return b <= c->value ? 1 : 0;
    }
    return this->ccdf(b);
}

double Distribution::pdf(double z) const
{
    return std::visit(
        [z](auto const& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Constant>)
            {
                return 0;
            }
            else if constexpr (std::is_same_v<K, UniformInterval>)
            {
                return (z >= k.lo && z <= k.hi) ? 1 / (k.hi - k.lo) : 0;
            }
            else
            {
                if (z <= 0)
                    return 0;
                double const m = k.shape;
                return std::exp(gamma_log_norm(m) + (m - 1) * std::log(z)
                                - m * z);
            }
        },
        kind_);
}

double Distribution::mean() const
{
    return std::visit(
        [](auto const& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Constant>)
                return k.value;
            else if constexpr (std::is_same_v<K, UniformInterval>)
                return 0.5 * (k.lo + k.hi);
            else
                return 1;
        },
        kind_);
}

double Distribution::variance() const
{
    return std::visit(
        [](auto const& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Constant>)
                return 0;
            else if constexpr (std::is_same_v<K, UniformInterval>)
                return (k.hi - k.lo) * (k.hi - k.lo) / 12;
            else
                return 1 / k.shape;
        },
        kind_);
}

double Distribution::support_lo() const
{
    return std::visit(
        [](auto const& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Constant>)
                return k.value;
            else if constexpr (std::is_same_v<K, UniformInterval>)
                return k.lo;
            else
                return 0;
        },
        kind_);
}

double Distribution::support_hi() const
{
    return std::visit(
        [](auto const& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Constant>)
                return k.value;
            else if constexpr (std::is_same_v<K, UniformInterval>)
                return k.hi;
            else
                return std::numeric_limits<double>::infinity();
        },
        kind_);
}

std::string Distribution::describe() const
{
    return std::visit(
        [](auto const& k) -> std::string {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Constant>)
                return "constant:" + shortest(k.value);
            else if constexpr (std::is_same_v<K, UniformInterval>)
                return "uniform:" + shortest(k.lo) + ',' + shortest(k.hi);
            else
                return "gamma:m=" + shortest(k.shape);
        },
        kind_);
}

//---------------------------------------------------------------------------//
// MOMENTS
//---------------------------------------------------------------------------//
double fractional_moment(Distribution const& dist, double a)
{
    if (a == 0)
    {
        return 1;
    }
    return std::visit(
        [a](auto const& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Distribution::Constant>)
            {
                return std::pow(k.value, a);
            }
            else if constexpr (std::is_same_v<K, Distribution::UniformInterval>)
            {
                double const width = k.hi - k.lo;
                if (a == -1)
                {
                    return std::log(k.hi / k.lo) / width;
                }
                return (std::pow(k.hi, a + 1) - std::pow(k.lo, a + 1))
                       / ((a + 1) * width);
            }
            else
            {
                double const m = k.shape;
                if (!(a > -m))
                {
                    std::ostringstream os;
                    os << "moment E[Z^" << a << "] of gamma(m=" << m
                       << ") diverges (requires exponent > " << -m << ")";
                    throw DomainError(os.str());
                }
                if (a == 1)
                {
                    return 1;
                }
                return std::exp(log_gamma(m + a) - log_gamma(m)
                                - a * std::log(m));
            }
        },
        dist.kind());
}

double partial_moment(Distribution const& dist, double a, double lo, double hi)
{
    lo = std::max(lo, 0.0);
    if (!(hi >= lo))
    {
        return 0;
    }
    return std::visit(
        [a, lo, hi](auto const& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Distribution::Constant>)
            {
                return (k.value >= lo && k.value <= hi) ? std::pow(k.value, a)
                                                        : 0;
            }
            else if constexpr (std::is_same_v<K, Distribution::UniformInterval>)
            {
                double const from = std::max(lo, k.lo);
                double const to = std::min(hi, k.hi);
                if (!(to > from))
                    return 0;
                double const integral
                    = a == -1 ? std::log(to / from)
                              : (std::pow(to, a + 1) - std::pow(from, a + 1))
                                    / (a + 1);
                return integral / (k.hi - k.lo);
            }
            else
            {
                double const m = k.shape;
                double const s = a + m;
                if (!(s > 0) && lo == 0)
                {
                    std::ostringstream os;
                    os << "partial moment E[Z^" << a << "; Z <= " << hi
                       << "] of gamma(m=" << m << ") diverges";
                    throw DomainError(os.str());
                }
                if (!(s > 0))
                {
                    // Lower limit is positive; integrate the density directly
                    auto f = [a, m](double z) {
                        return std::exp((a + m - 1) * std::log(z) - m * z);
                    };
                    double const v
                        = std::isinf(hi)
                              ? integrate_to_infinity(f, lo, std::max(lo, 1 / m))
                                    .value
                              : integrate(f, lo, hi).value;
                    return v * std::exp(gamma_log_norm(m));
                }
                return gamma_power_integral(m, s, lo, hi)
                       * std::exp(gamma_log_norm(m));
            }
        },
        dist.kind());
}

double truncated_moment_upper(Distribution const& dist, double a, double b)
{
    if (!(b >= 0))
    {
        throw DomainError("upper truncation threshold must be nonnegative");
    }
    double const prob = dist.prob_at_least(b);
    if (!(prob > 0))
    {
        std::ostringstream os;
        os << "P[Z >= " << b << "] = 0 for " << dist.describe();
        throw EmptyConditioningError(os.str());
    }
    if (a == 0)
    {
        return 1;
    }
    if (b <= dist.support_lo())
    {
        return fractional_moment(dist, a);
    }
    if (auto const* c = std::get_if<Distribution::Constant>(&dist.kind()))
    {
        return std::pow(c->value, a);
    }
    if (a < 0)
    {
        return partial_moment(dist, a, b, dist.support_hi()) / prob;
    }

    // E[Z^a 1{Z >= b}] = b^a P[Z >= b] + int_{b^a}^inf P[Z >= w^(1/a)] dw
    double const inv_a = 1 / a;
    auto survival = [&dist, inv_a](double w) {
        return dist.prob_at_least(std::pow(w, inv_a));
    };
    double const start = std::pow(b, a);
    double tail = 0;
    double const top = dist.support_hi();
    if (std::isinf(top))
    {
        double const scale = std::max(1.0, a) * std::max(1.0, start);
        tail = integrate_to_infinity(survival, start, scale).value;
    }
    else
    {
        // Split at the lower support edge where the survival function kinks
        double const kink = std::pow(dist.support_lo(), a);
        if (kink > start)
        {
            tail += kink - start;
            tail += integrate(survival, kink, std::pow(top, a)).value;
        }
        else
        {
            tail += integrate(survival, start, std::pow(top, a)).value;
        }
    }
    return (start * prob + tail) / prob;
}

double truncated_moment_lower(Distribution const& dist, double a, double b)
{
    if (!(b > 0))
    {
        throw DomainError("lower truncation threshold must be positive");
    }
    double const prob = dist.cdf(b);
    if (!(prob > 0))
    {
        std::ostringstream os;
        os << "P[Z <= " << b << "] = 0 for " << dist.describe();
        throw EmptyConditioningError(os.str());
    }
    if (a == 0)
    {
        return 1;
    }
    if (b >= dist.support_hi())
    {
        return fractional_moment(dist, a);
    }
    return partial_moment(dist, a, 0, b) / prob;
}

//---------------------------------------------------------------------------//
// NUMERICAL DIFFERENTIATION
//---------------------------------------------------------------------------//
Derivatives central_derivatives(std::function<double(double)> const& f,
                                double x,
                                double h)
{
    if (!(h > 0) || !(h < x))
    {
        std::ostringstream os;
        os << "derivative step h=" << h << " must satisfy 0 < h < x=" << x;
        throw StepSizeError(os.str());
    }
    double const lo = f(x - h);
    double const mid = f(x);
    double const hi = f(x + h);
    if (!std::isfinite(lo) || !std::isfinite(mid) || !std::isfinite(hi))
    {
        std::ostringstream os;
        os << "non-finite function value near x=" << x;
        throw PropagationError(os.str());
    }
    return {(hi - lo) / (2 * h), (hi - 2 * mid + lo) / (h * h)};
}

//---------------------------------------------------------------------------//
}  // namespace meansir
