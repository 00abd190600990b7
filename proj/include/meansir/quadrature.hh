//---------------------------------------------------------------------------//
//! \file meansir/quadrature.hh
//---------------------------------------------------------------------------//
#pragma once

#include <functional>

namespace meansir
{
//---------------------------------------------------------------------------//
struct QuadratureOptions
{
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_intervals = 4000;
};

struct QuadratureResult
{
    double value = 0;
    double error = 0;
    int evaluations = 0;
    bool converged = false;
};

using ScalarFn = std::function<double(double)>;

//---------------------------------------------------------------------------//
/*!
 * Adaptive 15-point Gauss-Kronrod integration of \c f over [a, b].
 *
 * The interval with the largest error estimate is bisected until the total
 * error falls below max(abs_tol, rel_tol * |I|). The integrand is never
 * evaluated at the endpoints, so integrable endpoint singularities are
 * allowed.
 */
QuadratureResult
integrate(ScalarFn const& f, double a, double b, QuadratureOptions opts = {});

/*!
 * Integrate \c f over [a, inf) through the map x = a + scale * t / (1 - t).
 *
 * \c scale should be of the order of the width of the integrand's mass.
 */
QuadratureResult integrate_to_infinity(ScalarFn const& f,
                                       double a,
                                       double scale = 1,
                                       QuadratureOptions opts = {});

//---------------------------------------------------------------------------//
}  // namespace meansir
