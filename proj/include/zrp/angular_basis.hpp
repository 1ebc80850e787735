#pragma once

#include <array>
#include <utility>

namespace zrp
{
//---------------------------------------------------------------------------//
/*!
 * Non-spherical angular functions of a two-center target at fixed k and R:
 *
 *   Z0(u) = cos(z u / 2) / sqrt(2 pi S+)
 *   Z1(u) = sin(z u / 2) / sqrt(2 pi S-)
 *
 * with z = kR, u the cosine of the angle to the target axis and
 * S+- = 1 +- sin(z)/z. Both depend on u only.
 */
struct AngularBasis
{
    double k;
    double R;
    double s_plus;
    double s_minus;

    double z() const { return k * R; }
};

using GramMatrix = std::array<std::array<double, 2>, 2>;

//! (S+, S-) for z > 0; S- keeps full relative precision as z -> 0
std::pair<double, double> s_factors(double z);

AngularBasis make_angular_basis(double k, double R);

//! Z_lambda(u), lambda in {0, 1}
double eval_Z(int lambda, AngularBasis const& basis, double cos_theta);

//! k -> 0 limits: Y00 for lambda = 0, Y10(u) for lambda = 1
double limit_Y(int lambda, double cos_theta);

//! Gram matrix of (Z0, Z1) over the sphere with `nodes` Gauss-Legendre points
GramMatrix orthonormality_matrix(AngularBasis const& basis, int nodes);

}  // namespace zrp
