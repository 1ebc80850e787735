#include "zrp/numerics.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace zrp
{
namespace
{
QuadratureRule build_gauss_legendre(int n)
{
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    int const half = (n + 1) / 2;
    for (int i = 0; i < half; ++i)
    {
        // Tricomi initial guess for the i-th largest root
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1;
            double p1 = x;
            for (int j = 2; j <= n; ++j)
            {
                double const p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_n(x), p0 = P_{n-1}(x)
            dp = n * (x * p1 - p0) / (x * x - 1);
            double const dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-16 * std::fmax(1.0, std::abs(x)))
                break;
        }
        double const w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0;
    return rule;
}

}  // namespace

//---------------------------------------------------------------------------//
QuadratureRule const& gauss_legendre(int n)
{
    if (n < 2 || n > max_quadrature_nodes)
    {
        throw DomainError("Gauss-Legendre order must be in [2, "
                          + std::to_string(max_quadrature_nodes) + "], got "
                          + std::to_string(n));
    }
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<QuadratureRule const>> cache;

    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<QuadratureRule const>(build_gauss_legendre(n));
    return *slot;
}

//---------------------------------------------------------------------------//
RichardsonResult richardson_limit(std::span<RichardsonSample const> samples)
{
    std::size_t const n = samples.size();
    if (n < 3)
        throw DomainError("Richardson extrapolation needs at least 3 samples");
    for (std::size_t i = 1; i < n; ++i)
    {
        if (!(samples[i].h < samples[i - 1].h))
            throw DomainError("Richardson samples need strictly decreasing h");
    }

    // Neville table evaluated at h = 0; after pass m, p[i] interpolates
    // samples i..i+m.
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = samples[i].value;
    for (std::size_t m = 1; m < n; ++m)
    {
        for (std::size_t i = 0; i + m < n; ++i)
        {
            double const hi = samples[i].h;
            double const hj = samples[i + m].h;
            p[i] = (hi * p[i + 1] - hj * p[i]) / (hi - hj);
        }
        if (m == n - 2)
        {
            // p[1] now holds the extrapolant of the last n-1 samples
            double const partial = p[1];
            double const hi = samples[0].h;
            double const hj = samples[n - 1].h;
            double const full = (hi * p[1] - hj * p[0]) / (hi - hj);
            return {full, std::abs(full - partial)};
        }
    }
    return {p[0], 0.0};
}

RichardsonResult
richardson_limit(std::span<RichardsonSample const> samples, double rel_tol)
{
    auto result = richardson_limit(samples);
    if (result.error > rel_tol * std::abs(result.limit))
    {
        throw NumericalError(
            "Richardson extrapolation did not converge: error estimate "
            + std::to_string(result.error) + " vs limit "
            + std::to_string(result.limit));
    }
    return result;
}

//---------------------------------------------------------------------------//
double z_minus_sin(double z)
{
    if (z < 0)
        return -z_minus_sin(-z);
    if (z >= 1)
        return z - std::sin(z);
    // z^3/3! - z^5/5! + ...; terms shrink by at least 1/20 each step
    double const z2 = z * z;
    double term = z * z2 / 6;
    double sum = term;
    for (int j = 2; j < 30; ++j)
    {
        term *= -z2 / ((2 * j) * (2 * j + 1));
        double const next = sum + term;
        if (next == sum)
            break;
        sum = next;
    }
    return sum;
}

double one_minus_sinc(double z)
{
    return z_minus_sin(z) / z;
}

double sinc_deficit_ratio(double z)
{
    if (z == 0)
        return 1.0 / 6;
    return z_minus_sin(z) / (z * z * z);
}

double fold_half_turn(double angle)
{
    double r = std::remainder(angle, std::numbers::pi);
    if (r <= -std::numbers::pi / 2)
        r += std::numbers::pi;
    return r;
}

}  // namespace zrp
