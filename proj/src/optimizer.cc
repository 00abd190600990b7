//---------------------------------------------------------------------------//
//! \file optimizer.cc
//---------------------------------------------------------------------------//
#include "meansir/optimizer.hh"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "meansir/errors.hh"

namespace meansir
{
//---------------------------------------------------------------------------//
UnimodalityCertificate certify_unimodal(std::vector<double> const& values,
                                        std::vector<double> const& std_errors)
{
    std::size_t const n = values.size();
    if (n < 5)
    {
        throw DomainError("unimodality check needs at least 5 points");
    }
    if (!std_errors.empty() && std_errors.size() != n)
    {
        throw DomainError("standard errors must match the values");
    }
    auto tolerance = [&](std::size_t i, std::size_t j) {
        if (std_errors.empty())
            return 0.0;
        return 2 * std::hypot(std_errors[i], std_errors[j]);
    };

    UnimodalityCertificate cert{true, 0, std::nullopt};
    cert.peak_index = static_cast<std::size_t>(
        std::max_element(values.begin(), values.end()) - values.begin());
    for (std::size_t i = 0; i + 1 < n; ++i)
    {
        double const tol = tolerance(i, i + 1);
        bool const ok = i < cert.peak_index
                            ? values[i + 1] >= values[i] - tol
                            : values[i + 1] <= values[i] + tol;
        if (!ok)
        {
            cert.unimodal = false;
            cert.violation_index = i + 1;
            break;
        }
    }
    return cert;
}

//---------------------------------------------------------------------------//
UnimodalMaximum maximize_unimodal(std::function<double(double)> const& f,
                                  double lo,
                                  double hi,
                                  MaximizeOptions const& opts)
{
    if (!(lo > 0 && lo < hi && std::isfinite(hi)))
    {
        throw DomainError("search bounds must satisfy 0 < lo < hi");
    }
    if (opts.grid_points < 3 || !(opts.rel_tol > 0))
    {
        throw DomainError("search needs at least 3 grid points and a "
                          "positive tolerance");
    }

    UnimodalMaximum r;
    r.evaluations = 0;
    auto eval = [&](double x) {
        double const v = f(x);
        ++r.evaluations;
        if (std::isnan(v))
        {
            std::ostringstream os;
            os << "objective is NaN at " << x;
            throw PropagationError(os.str());
        }
        return v;
    };

    int const n = opts.grid_points;
    double const log_lo = std::log(lo);
    double const log_hi = std::log(hi);
    r.grid_x.resize(n);
    r.grid_values.resize(n);
    for (int i = 0; i < n; ++i)
    {
        double const x = i == 0       ? lo
                         : i == n - 1 ? hi
                                      : std::exp(log_lo
                                                 + (log_hi - log_lo) * i
                                                       / (n - 1));
        r.grid_x[i] = x;
        r.grid_values[i] = eval(x);
    }
    auto const best = static_cast<int>(
        std::max_element(r.grid_values.begin(), r.grid_values.end())
        - r.grid_values.begin());
    if (best == 0 || best == n - 1)
    {
        std::ostringstream os;
        os << "no interior maximum: objective is largest at the "
           << (best == 0 ? "lower" : "upper") << " bound "
           << r.grid_x[best];
        throw NoInteriorMaximumError(os.str());
    }

    // Golden section in log x
    constexpr double inv_phi = 0.6180339887498949;
    double a = std::log(r.grid_x[best - 1]);
    double b = std::log(r.grid_x[best + 1]);
    r.bracket = {r.grid_x[best - 1], r.grid_x[best + 1]};
    double best_u = std::log(r.grid_x[best]);
    double best_v = r.grid_values[best];
    auto consider = [&](double u, double v) {
        if (v > best_v)
        {
            best_u = u;
            best_v = v;
        }
    };

    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = eval(std::exp(c));
    double fd = eval(std::exp(d));
    consider(c, fc);
    consider(d, fd);
    double const width_tol = std::log1p(opts.rel_tol);
    while (b - a > width_tol)
    {
        if (fc >= fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(std::exp(c));
            consider(c, fc);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(std::exp(d));
            consider(d, fd);
        }
    }
    r.x = std::exp(best_u);
    r.value = best_v;
    return r;
}

//---------------------------------------------------------------------------//
OptimizationResult maximize_throughput(NetworkModel const& model,
                                       double theta,
                                       CcdfSource const& ccdf,
                                       double lambda_lo,
                                       double lambda_hi,
                                       MaximizeOptions const& opts)
{
    auto capacity = [&](double lambda) {
        return throughput_capacity(model.with_intensity(lambda), theta, ccdf);
    };
    UnimodalMaximum const m
        = maximize_unimodal(capacity, lambda_lo, lambda_hi, opts);

    OptimizationResult r;
    r.lambda_star = m.x;
    r.t_star = m.value;
    r.bracket = m.bracket;
    r.evaluations = m.evaluations;
    r.grid_lambdas = m.grid_x;
    r.grid_values = m.grid_values;

    std::vector<double> errors;
    if (auto const* sim = dynamic_cast<SimulatedCcdf const*>(&ccdf))
    {
        errors.reserve(m.grid_x.size());
        for (double lambda : m.grid_x)
        {
            double const bits = std::log2(
                1 + mean_sir(model.with_intensity(lambda)));
            errors.push_back(lambda * bits * sim->std_error_at(lambda));
        }
    }
    r.certificate = certify_unimodal(m.grid_values, errors);

    // At the maximizer T' = l + lambda l' vanishes; a bracket of relative
    // width rel_tol leaves |T'| / lambda up to |T''| rel_tol.
    ConcavityMembership const probe
        = concavity_membership(model, theta, r.lambda_star, ccdf);
    double const t_second = 2 * probe.first_derivative
                            + r.lambda_star * probe.second_derivative;
    double const slack = 2 * std::fabs(t_second) * opts.rel_tol;
    r.membership
        = concavity_membership(model, theta, r.lambda_star, ccdf, slack);
    r.in_pi_lambda = r.membership.member;
    return r;
}

//---------------------------------------------------------------------------//
}  // namespace meansir
