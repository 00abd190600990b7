//---------------------------------------------------------------------------//
//! \file meansir/ccdf.hh
//! Sources of the SIR complementary CDF as a function of intensity.
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace meansir
{
class NetworkModel;

//---------------------------------------------------------------------------//
//! P[SIR >= theta] for a model at its intensity.
class CcdfSource
{
  public:
    virtual ~CcdfSource() = default;
    virtual double evaluate(NetworkModel const& model, double theta) const = 0;
};

//---------------------------------------------------------------------------//
//! Closed-form Rayleigh CCDF (constant power, fixed distance only).
class RayleighCcdf final : public CcdfSource
{
  public:
    double evaluate(NetworkModel const& model, double theta) const final;
};

//---------------------------------------------------------------------------//
//! Arbitrary callable of (intensity, theta); used for stubs and tests.
class FunctionCcdf final : public CcdfSource
{
  public:
    using Fn = std::function<double(double lambda, double theta)>;
    explicit FunctionCcdf(Fn fn) : fn_(std::move(fn)) {}
    double evaluate(NetworkModel const& model, double theta) const final;

  private:
    Fn fn_;
};

//---------------------------------------------------------------------------//
/*!
 * Simulated CCDF curve at a fixed threshold, interpolated in intensity.
 *
 * The sampled values are first projected onto nonincreasing sequences in
 * lambda (weighted pool-adjacent-violators, weights 1/se^2), then
 * interpolated with a monotone piecewise-cubic Hermite scheme in log lambda.
 * Queries outside the sampled range raise InterpolationRangeError.
 */
class SimulatedCcdf final : public CcdfSource
{
  public:
    SimulatedCcdf(double theta,
                  std::vector<double> lambdas,
                  std::vector<double> values,
                  std::vector<double> std_errors);

    double evaluate(NetworkModel const& model, double theta) const final;

    //! Interpolated value at the given intensity
    double at(double lambda) const;
    //! Standard error interpolated linearly in log lambda
    double std_error_at(double lambda) const;

    double theta() const { return theta_; }
    std::pair<double, double> domain() const
    {
        return {lambdas_.front(), lambdas_.back()};
    }
    std::vector<double> const& lambdas() const { return lambdas_; }
    std::vector<double> const& raw_values() const { return raw_; }
    std::vector<double> const& monotone_values() const { return values_; }
    std::vector<double> const& std_errors() const { return errors_; }

  private:
    double theta_;
    std::vector<double> lambdas_;
    std::vector<double> log_lambdas_;
    std::vector<double> raw_;
    std::vector<double> values_;
    std::vector<double> errors_;
    std::vector<double> slopes_;
};

// Weighted least-squares projection onto nonincreasing sequences
std::vector<double> isotonic_nonincreasing(std::vector<double> const& values,
                                           std::vector<double> const& weights);

//---------------------------------------------------------------------------//
}  // namespace meansir
