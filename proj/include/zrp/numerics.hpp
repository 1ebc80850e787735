#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "zrp/errors.hpp"

namespace zrp
{
//---------------------------------------------------------------------------//
//! Gauss-Legendre rule on [-1, 1]: ascending nodes, positive weights.
struct QuadratureRule
{
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

inline constexpr int max_quadrature_nodes = 4096;

/*!
 * Gauss-Legendre rule with n nodes, 2 <= n <= 4096.
 *
 * Rules are built once per n and cached for the life of the process; the
 * returned reference stays valid and immutable.
 */
QuadratureRule const& gauss_legendre(int n);

/*!
 * Integrate an axisymmetric function over the unit sphere:
 * 2 pi * sum_i w_i f(u_i), with u the polar cosine.
 */
template<class F>
double integrate_axial(F&& f, QuadratureRule const& rule)
{
    double sum = 0;
    for (std::size_t i = 0; i < rule.size(); ++i)
    {
        double const value = f(rule.nodes[i]);
        if (!std::isfinite(value))
        {
            throw NumericalError("non-finite integrand at quadrature node "
                                 + std::to_string(i) + " (u = "
                                 + std::to_string(rule.nodes[i]) + ")");
        }
        sum += rule.weights[i] * value;
    }
    return 2 * std::numbers::pi * sum;
}

struct ConvergedIntegral
{
    double value;
    int nodes;        //!< node count of the accepted estimate
    double change;    //!< |last - previous| at acceptance
};

/*!
 * Double the node count from `start_nodes` until two successive axial
 * integrals differ by less than `tol` (relative to max(1, |value|)).
 */
template<class F>
ConvergedIntegral
integrate_axial_converged(F&& f, int start_nodes, double tol)
{
    int n = start_nodes;
    double previous = integrate_axial(f, gauss_legendre(n));
    while (2 * n <= max_quadrature_nodes)
    {
        n *= 2;
        double const current = integrate_axial(f, gauss_legendre(n));
        double const change = std::abs(current - previous);
        if (change < tol * std::fmax(1.0, std::abs(current)))
        {
            return {current, n, change};
        }
        previous = current;
    }
    throw NumericalError("axial quadrature did not converge within "
                         + std::to_string(max_quadrature_nodes) + " nodes");
}

//---------------------------------------------------------------------------//
// Extrapolation
//---------------------------------------------------------------------------//

struct RichardsonSample
{
    double h;
    double value;
};

struct RichardsonResult
{
    double limit;
    double error;  //!< |difference of the last two extrapolants|
};

/*!
 * Polynomial (Neville) extrapolation of samples f(h) to h = 0.
 *
 * Requires at least three samples with strictly decreasing h. The error
 * estimate compares the full-order extrapolant with the one built from all
 * but the first sample.
 */
RichardsonResult richardson_limit(std::span<RichardsonSample const> samples);

//! As above, throwing NumericalError when error > rel_tol * |limit|
RichardsonResult
richardson_limit(std::span<RichardsonSample const> samples, double rel_tol);

//---------------------------------------------------------------------------//
// Cancellation-free elementary combinations
//---------------------------------------------------------------------------//

//! z - sin z, accurate to full relative precision for z >= 0
double z_minus_sin(double z);

//! 1 - sin(z)/z for z > 0
double one_minus_sinc(double z);

//! (1 - sin(z)/z) / z^2; tends to 1/6 as z -> 0
double sinc_deficit_ratio(double z);

//! Fold an angle into the principal interval (-pi/2, pi/2]
double fold_half_turn(double angle);

}  // namespace zrp
