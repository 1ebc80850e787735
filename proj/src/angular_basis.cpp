#include "zrp/angular_basis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "zrp/errors.hpp"
#include "zrp/numerics.hpp"

namespace zrp
{
namespace
{
constexpr double series_threshold = 1e-3;
constexpr double two_pi = 2 * std::numbers::pi;

void check_lambda(int lambda)
{
    if (lambda != 0 && lambda != 1)
    {
        throw DomainError("channel index must be 0 or 1, got "
                          + std::to_string(lambda));
    }
}

}  // namespace

std::pair<double, double> s_factors(double z)
{
    if (!(z > 0))
        throw DomainError("s_factors: z must be positive");
    double const minus = one_minus_sinc(z);
    return {2 - minus, minus};
}

AngularBasis make_angular_basis(double k, double R)
{
    if (!(k > 0) || !(R > 0))
        throw DomainError("angular basis needs k > 0 and R > 0");
    auto const [plus, minus] = s_factors(k * R);
    return {k, R, plus, minus};
}

double eval_Z(int lambda, AngularBasis const& basis, double u)
{
    check_lambda(lambda);
    double const z = basis.z();
    if (lambda == 0)
        return std::cos(z * u / 2) / std::sqrt(two_pi * basis.s_plus);

    if (z < series_threshold)
    {
        // sin(zu/2)/(z/2) over sqrt(2 pi S- / (z/2)^2), both finite at z=0
        double const half = z / 2;
        double const x = half * u;
        double const sinc_ratio
            = (x == 0) ? u : u * (1 - x * x / 6 + x * x * x * x / 120);
        return sinc_ratio / std::sqrt(4 * two_pi * sinc_deficit_ratio(z));
    }
    return std::sin(z * u / 2) / std::sqrt(two_pi * basis.s_minus);
}

double limit_Y(int lambda, double u)
{
    check_lambda(lambda);
    if (lambda == 0)
        return 1 / std::sqrt(4 * std::numbers::pi);
    return std::sqrt(3 / (4 * std::numbers::pi)) * u;
}

GramMatrix orthonormality_matrix(AngularBasis const& basis, int nodes)
{
    if (nodes < 16)
        throw DomainError("orthonormality_matrix needs at least 16 nodes");
    auto const& rule = gauss_legendre(nodes);
    GramMatrix g{};
    for (int a = 0; a < 2; ++a)
    {
        for (int b = a; b < 2; ++b)
        {
            g[a][b] = integrate_axial(
                [&](double u) {
                    return eval_Z(a, basis, u) * eval_Z(b, basis, u);
                },
                rule);
            g[b][a] = g[a][b];
        }
    }
    return g;
}

}  // namespace zrp
