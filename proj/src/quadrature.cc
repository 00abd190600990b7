//---------------------------------------------------------------------------//
//! \file quadrature.cc
//---------------------------------------------------------------------------//
#include "meansir/quadrature.hh"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "meansir/errors.hh"

namespace meansir
{
namespace
{
//---------------------------------------------------------------------------//
// Kronrod abscissae on [0, 1]; odd indices are the embedded Gauss nodes.
constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment
{
    double a;
    double b;
    double value;
    double error;

    bool operator<(Segment const& other) const { return error < other.error; }
};

Segment gauss_kronrod(ScalarFn const& f, double a, double b)
{
    double const center = 0.5 * (a + b);
    double const half = 0.5 * (b - a);

    double const fc = f(center);
    double kronrod = fc * kronrod_w[7];
    double gauss = fc * gauss_w[3];
    for (int i = 0; i < 7; ++i)
    {
        double const dx = half * kronrod_x[i];
        double const pair = f(center - dx) + f(center + dx);
        kronrod += kronrod_w[i] * pair;
        if (i % 2 == 1)
        {
            gauss += gauss_w[i / 2] * pair;
        }
    }
    kronrod *= half;
    gauss *= half;
    if (!std::isfinite(kronrod))
    {
        throw PropagationError("non-finite integrand value on ["
                               + std::to_string(a) + ", " + std::to_string(b)
                               + "]");
    }
    return {a, b, kronrod, std::fabs(kronrod - gauss)};
}

}  // namespace

//---------------------------------------------------------------------------//
QuadratureResult
integrate(ScalarFn const& f, double a, double b, QuadratureOptions opts)
{
    QuadratureResult result;
    if (a == b)
    {
        result.converged = true;
        return result;
    }
    double sign = 1;
    if (b < a)
    {
        std::swap(a, b);
        sign = -1;
    }

    std::priority_queue<Segment> segments;
    segments.push(gauss_kronrod(f, a, b));
    result.evaluations = 15;
    double total = segments.top().value;
    double error = segments.top().error;

    while (error > std::max(opts.abs_tol, opts.rel_tol * std::fabs(total))
           && static_cast<int>(segments.size()) < opts.max_intervals)
    {
        Segment worst = segments.top();
        double const mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
        {
            // Interval exhausted at floating-point resolution
            break;
        }
        segments.pop();
        Segment left = gauss_kronrod(f, worst.a, mid);
        Segment right = gauss_kronrod(f, mid, worst.b);
        result.evaluations += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        segments.push(left);
        segments.push(right);
    }

    // Re-sum to remove drift from the incremental updates
    std::vector<Segment> all;
    all.reserve(segments.size());
    while (!segments.empty())
    {
        all.push_back(segments.top());
        segments.pop();
    }
    std::sort(all.begin(), all.end(), [](Segment const& l, Segment const& r) {
        return l.a < r.a;
    });
    total = 0;
    error = 0;
    for (auto const& s : all)
    {
        total += s.value;
        error += s.error;
    }

    result.value = sign * total;
    result.error = error;
    result.converged
        = error <= std::max(opts.abs_tol, opts.rel_tol * std::fabs(total));
    return result;
}

//---------------------------------------------------------------------------//
QuadratureResult integrate_to_infinity(ScalarFn const& f,
                                       double a,
                                       double scale,
                                       QuadratureOptions opts)
{
    auto mapped = [&f, a, scale](double t) {
        double const one_minus = 1 - t;
        double const x = a + scale * t / one_minus;
        if (!std::isfinite(x))
        {
            return 0.0;
        }
        double const fx = f(x);
        if (fx == 0)
        {
            return 0.0;
        }
        return fx * scale / (one_minus * one_minus);
    };
    return integrate(mapped, 0, 1, opts);
}

//---------------------------------------------------------------------------//
}  // namespace meansir
