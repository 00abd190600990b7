//---------------------------------------------------------------------------//
//! \file meansir/optimizer.hh
//! Throughput-maximizing intensity search.
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "analytics.hh"
#include "ccdf.hh"
#include "models.hh"

namespace meansir
{
//---------------------------------------------------------------------------//
//! Result of checking a sampled curve for a single interior-or-edge peak.
struct UnimodalityCertificate
{
    bool unimodal;
    std::size_t peak_index;
    std::optional<std::size_t> violation_index;
};

/*!
 * Check that values rise to one peak and then fall.
 *
 * Consecutive differences against the expected direction are tolerated up
 * to 2 sqrt(se_i^2 + se_j^2) when standard errors are given. The peak is
 * the first maximum; the reported violation is the index where the
 * ordering first breaks.
 */
UnimodalityCertificate certify_unimodal(std::vector<double> const& values,
                                        std::vector<double> const& std_errors
                                        = {});

//---------------------------------------------------------------------------//
struct MaximizeOptions
{
    int grid_points = 64;
    double rel_tol = 1e-4;  //!< relative width of the final bracket
};

struct UnimodalMaximum
{
    double x;
    double value;
    std::pair<double, double> bracket;  //!< grid neighbours of the argmax
    int evaluations;
    std::vector<double> grid_x;
    std::vector<double> grid_values;
};

/*!
 * Maximize f on [lo, hi]: log-spaced grid, then golden section in log x
 * between the grid neighbours of the best point.
 *
 * A grid argmax on either end raises NoInteriorMaximumError.
 */
UnimodalMaximum maximize_unimodal(std::function<double(double)> const& f,
                                  double lo,
                                  double hi,
                                  MaximizeOptions const& opts = {});

//---------------------------------------------------------------------------//
struct OptimizationResult
{
    double lambda_star;
    double t_star;
    bool in_pi_lambda;
    ConcavityMembership membership;
    std::pair<double, double> bracket;
    int evaluations;
    UnimodalityCertificate certificate;
    std::vector<double> grid_lambdas;
    std::vector<double> grid_values;
};

inline constexpr double default_lambda_lo = 1e-6;
inline constexpr double default_lambda_hi = 1e-1;

/*!
 * Intensity maximizing the throughput capacity at SIR threshold theta.
 *
 * Membership in the concave increasing set is evaluated at the maximizer
 * with a slack matching the located bracket width, since the slope
 * inequality is tight exactly at the maximum.
 */
OptimizationResult maximize_throughput(NetworkModel const& model,
                                       double theta,
                                       CcdfSource const& ccdf,
                                       double lambda_lo = default_lambda_lo,
                                       double lambda_hi = default_lambda_hi,
                                       MaximizeOptions const& opts = {});

//---------------------------------------------------------------------------//
}  // namespace meansir
