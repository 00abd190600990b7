//---------------------------------------------------------------------------//
//! \file ccdf.cc
//---------------------------------------------------------------------------//
#include "meansir/ccdf.hh"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "meansir/analytics.hh"
#include "meansir/errors.hh"
#include "meansir/models.hh"

namespace meansir
{
//---------------------------------------------------------------------------//
double RayleighCcdf::evaluate(NetworkModel const& model, double theta) const
{
    return rayleigh_sir_ccdf(model, theta);
}

double FunctionCcdf::evaluate(NetworkModel const& model, double theta) const
{
    return fn_(model.intensity(), theta);
}

//---------------------------------------------------------------------------//
std::vector<double> isotonic_nonincreasing(std::vector<double> const& values,
                                           std::vector<double> const& weights)
{
    struct Block
    {
        double mean;
        double weight;
        std::size_t count;
    };
    std::vector<Block> blocks;
    blocks.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        blocks.push_back({values[i], weights[i], 1});
        // Merge while the nonincreasing order is violated
        while (blocks.size() > 1
               && blocks[blocks.size() - 2].mean < blocks.back().mean)
        {
            Block const top = blocks.back();
            blocks.pop_back();
            Block& prev = blocks.back();
            double const w = prev.weight + top.weight;
            prev.mean = (prev.mean * prev.weight + top.mean * top.weight) / w;
            prev.weight = w;
            prev.count += top.count;
        }
    }
    std::vector<double> result;
    result.reserve(values.size());
    for (auto const& b : blocks)
    {
        result.insert(result.end(), b.count, b.mean);
    }
    return result;
}

//---------------------------------------------------------------------------//
SimulatedCcdf::SimulatedCcdf(double theta,
                             std::vector<double> lambdas,
                             std::vector<double> values,
                             std::vector<double> std_errors)
    : theta_(theta)
    , lambdas_(std::move(lambdas))
    , raw_(std::move(values))
    , errors_(std::move(std_errors))
{
    std::size_t const n = lambdas_.size();
    if (n < 2 || raw_.size() != n || errors_.size() != n)
    {
        throw DomainError("simulated CCDF needs at least two points with "
                          "matching values and errors");
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        if (!(lambdas_[i] > 0) || (i > 0 && !(lambdas_[i] > lambdas_[i - 1])))
        {
            throw DomainError("simulated CCDF intensities must be positive "
                              "and strictly increasing");
        }
        if (!(raw_[i] >= 0 && raw_[i] <= 1))
        {
            throw DomainError("simulated CCDF values must lie in [0, 1]");
        }
    }

    std::vector<double> weights(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double const var = errors_[i] * errors_[i];
        weights[i] = 1 / std::max(var, 1e-12);
    }
    values_ = isotonic_nonincreasing(raw_, weights);

    log_lambdas_.resize(n);
    std::transform(lambdas_.begin(), lambdas_.end(), log_lambdas_.begin(),
                   [](double x) { return std::log(x); });

    // Monotone Hermite slopes (Fritsch-Carlson with weighted harmonic mean)
    std::vector<double> width(n - 1), secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
    {
        width[i] = log_lambdas_[i + 1] - log_lambdas_[i];
        secant[i] = (values_[i + 1] - values_[i]) / width[i];
    }
    slopes_.assign(n, 0);
    if (n == 2)
    {
        slopes_[0] = slopes_[1] = secant[0];
        return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i)
    {
        if (secant[i - 1] * secant[i] <= 0)
        {
            continue;
        }
        double const w1 = 2 * width[i] + width[i - 1];
        double const w2 = width[i] + 2 * width[i - 1];
        slopes_[i] = (w1 + w2) / (w1 / secant[i - 1] + w2 / secant[i]);
    }
    auto edge = [](double h0, double h1, double d0, double d1) {
        double m = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (std::signbit(m) != std::signbit(d0) || d0 == 0)
            return 0.0;
        if (std::signbit(d0) != std::signbit(d1) && std::fabs(m) > 3 * std::fabs(d0))
            return 3 * d0;
        return m;
    };
    slopes_[0] = edge(width[0], width[1], secant[0], secant[1]);
    slopes_[n - 1]
        = edge(width[n - 2], width[n - 3], secant[n - 2], secant[n - 3]);
}

double SimulatedCcdf::at(double lambda) const
{
    if (!(lambda >= lambdas_.front() && lambda <= lambdas_.back()))
    {
        std::ostringstream os;
        os << "lambda=" << lambda << " outside simulated CCDF range ["
           << lambdas_.front() << ", " << lambdas_.back() << "]";
        throw InterpolationRangeError(os.str());
    }
    double const x = std::log(lambda);
    auto it = std::upper_bound(log_lambdas_.begin(), log_lambdas_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - log_lambdas_.begin());
    i = std::clamp<std::size_t>(i, 1, log_lambdas_.size() - 1) - 1;

    double const h = log_lambdas_[i + 1] - log_lambdas_[i];
    double const t = std::clamp((x - log_lambdas_[i]) / h, 0.0, 1.0);
    double const t2 = t * t;
    double const t3 = t2 * t;
    double const value = (2 * t3 - 3 * t2 + 1) * values_[i]
                         + (t3 - 2 * t2 + t) * h * slopes_[i]
                         + (-2 * t3 + 3 * t2) * values_[i + 1]
                         + (t3 - t2) * h * slopes_[i + 1];
    return std::clamp(value, 0.0, 1.0);
}

double SimulatedCcdf::std_error_at(double lambda) const
{
    this->at(lambda);  // range check
    double const x = std::log(lambda);
    auto it = std::upper_bound(log_lambdas_.begin(), log_lambdas_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - log_lambdas_.begin());
    i = std::clamp<std::size_t>(i, 1, log_lambdas_.size() - 1) - 1;
    double const t = std::clamp(
        (x - log_lambdas_[i]) / (log_lambdas_[i + 1] - log_lambdas_[i]),
        0.0, 1.0);
    return (1 - t) * errors_[i] + t * errors_[i + 1];
}

double SimulatedCcdf::evaluate(NetworkModel const& model, double theta) const
{
    if (std::fabs(theta - theta_) > 1e-12 * std::max(1.0, theta_))
    {
        std::ostringstream os;
        os << "simulated CCDF was built for theta=" << theta_
           << ", queried at theta=" << theta;
        throw DomainError(os.str());
    }
    return this->at(model.intensity());
}

//---------------------------------------------------------------------------//
}  // namespace meansir
