#include "zrp/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "zrp/angular_basis.hpp"
#include "zrp/errors.hpp"
#include "zrp/numerics.hpp"
#include "zrp/phase_solver.hpp"

namespace zrp
{
namespace
{
using namespace std::complex_literals;
constexpr double pi = std::numbers::pi;
//! Successive node doublings must agree to this relative change
constexpr double quadrature_tolerance = 1e-10;

void require_positive_k(double k, char const* op)
{
    if (!(k > 0) || !std::isfinite(k))
    {
        throw DomainError(std::string(op)
                          + ": momentum must be positive, got k = "
                          + std::to_string(k));
    }
}

//! Diagonal g_j = k cot d_j - ik and coupling a = exp(ikR)/R
struct BoundaryMatrix
{
    complex g1;
    complex g2;
    complex a;
};

BoundaryMatrix boundary_matrix(TwoCenterTarget const& t, double k)
{
    return {complex(kcot_delta(t.center1, k), -k),
            complex(kcot_delta(t.center2, k), -k),
            std::exp(1i * (k * t.R)) / t.R};
}

complex unit_phasor(double angle)
{
    return {std::cos(angle), std::sin(angle)};
}

//! (2 pi / ik)(exp(2i eta) - 1) = (4 pi / k) exp(i eta) sin(eta)
complex partial_weight(double k, double eta)
{
    return (4 * pi / k) * std::sin(eta) * unit_phasor(eta);
}

}  // namespace

ChannelMeta channel_meta(int lambda)
{
    if (lambda != 0 && lambda != 1)
        throw DomainError("channel index must be 0 or 1");
    return {lambda, lambda};
}

//---------------------------------------------------------------------------//
OracleSolution
oracle_solve(TwoCenterTarget const& t, double k, Direction incident)
{
    require_positive_k(k, "oracle_solve");
    auto const m = boundary_matrix(t, k);
    double const half_phase = 0.5 * k * t.R * incident.cos_polar;
    complex const b1 = std::exp(1i * half_phase);
    complex const b2 = std::exp(-1i * half_phase);

    complex const det = m.g1 * m.g2 - m.a * m.a;
    double const det_scale = std::abs(m.g1 * m.g2) + std::norm(m.a);
    if (std::abs(det) <= 1e-14 * det_scale)
    {
        throw NumericalError("oracle system is singular (resonance) at k = "
                             + std::to_string(k));
    }

    OracleSolution sol{};
    sol.k = k;
    sol.R = t.R;
    sol.incident = incident;
    sol.D1 = (m.g2 * b1 + m.a * b2) / det;
    sol.D2 = (m.a * b1 + m.g1 * b2) / det;

    complex const r1 = m.g1 * sol.D1 - m.a * sol.D2 - b1;
    complex const r2 = -m.a * sol.D1 + m.g2 * sol.D2 - b2;
    double const scale
        = std::max({1.0,
                    std::abs(m.g1 * sol.D1),
                    std::abs(m.g2 * sol.D2),
                    std::abs(m.a * sol.D1),
                    std::abs(m.a * sol.D2)});
    sol.residual = std::max(std::abs(r1), std::abs(r2)) / scale;
    return sol;
}

Amplitude oracle_amplitude(OracleSolution const& sol, Direction outgoing)
{
    double const half_phase = 0.5 * sol.k * sol.R * outgoing.cos_polar;
    complex const value = sol.D1 * std::exp(-1i * half_phase)
                          + sol.D2 * std::exp(1i * half_phase);
    return {value, sol.k, sol.incident, outgoing};
}

//---------------------------------------------------------------------------//
Amplitude partial_amplitude_paper(TwoCenterTarget const& t,
                                  double k,
                                  Direction incident,
                                  Direction outgoing)
{
    require_positive_k(k, "partial_amplitude_paper");
    auto const phases = solve_phases(t, k);
    auto const basis = make_angular_basis(k, t.R);
    double const u = incident.cos_polar;
    double const v = outgoing.cos_polar;

    complex value = partial_weight(k, phases.eta0) * eval_Z(0, basis, u)
                    * eval_Z(0, basis, v);
    value += partial_weight(k, phases.eta1) * eval_Z(1, basis, u)
             * eval_Z(1, basis, v);
    return {value, k, incident, outgoing};
}

EigenchannelDecomposition eigenchannels(TwoCenterTarget const& t, double k)
{
    require_positive_k(k, "eigenchannels");
    auto const m = boundary_matrix(t, k);
    auto const basis = make_angular_basis(k, t.R);

    // Boundary matrix in the even/odd combinations (1, +-1)/sqrt 2
    complex const mean = 0.5 * (m.g1 + m.g2);
    std::array<std::array<complex, 2>, 2> n{};
    n[0][0] = mean - m.a;
    n[1][1] = mean + m.a;
    n[0][1] = n[1][0] = 0.5 * (m.g1 - m.g2);

    // Plane-wave projections: even part sqrt(S+) Z0, odd part +-i sqrt(S-) Z1
    std::array<complex, 2> const p{std::sqrt(basis.s_plus),
                                   1i * std::sqrt(basis.s_minus)};
    std::array<complex, 2> const q{std::sqrt(basis.s_plus),
                                   -1i * std::sqrt(basis.s_minus)};
    std::array<complex, 2> const d{1.0, -1i};

    EigenchannelDecomposition out{};
    out.k = k;
    double max_abs = 1;
    for (int i = 0; i < 2; ++i)
    {
        for (int j = 0; j < 2; ++j)
        {
            complex const w = n[i][j] / (p[i] * q[j]);
            complex kij = w * d[j] / d[i];
            if (i == j)
                kij += 1i * k;
            out.k_matrix[i][j] = kij.real();
            out.imaginary_residual
                = std::max(out.imaginary_residual, std::abs(kij.imag()));
            max_abs = std::max(max_abs, std::abs(kij.real()));
        }
    }
    out.imaginary_residual /= max_abs;

    auto const& km = out.k_matrix;
    double const diff = km[0][0] - km[1][1];
    double const off = 0.5 * (km[0][1] + km[1][0]);
    // Rotation angle in [-pi/4, pi/4] keeps channel 0 Z0-dominant
    double theta = 0;
    if (diff != 0)
        theta = 0.5 * std::atan(2 * off / diff);
    else if (off != 0)
        theta = std::copysign(pi / 4, off);
    double const c = std::cos(theta);
    double const s = std::sin(theta);
    out.mixing = {{{c, -s}, {s, c}}};

    double const kappa0 = km[0][0] * c * c + 2 * off * s * c + km[1][1] * s * s;
    double const kappa1 = km[0][0] * s * s - 2 * off * s * c + km[1][1] * c * c;
    out.eigenphases = {fold_half_turn(std::atan2(k, kappa0)),
                       fold_half_turn(std::atan2(k, kappa1))};
    out.degenerate
        = std::abs(std::sin(out.eigenphases[0] - out.eigenphases[1])) < 1e-10;
    return out;
}

Amplitude partial_amplitude_exact(TwoCenterTarget const& t,
                                  double k,
                                  Direction incident,
                                  Direction outgoing)
{
    auto const ec = eigenchannels(t, k);
    auto const basis = make_angular_basis(k, t.R);
    double const z0_in = eval_Z(0, basis, incident.cos_polar);
    double const z1_in = eval_Z(1, basis, incident.cos_polar);
    double const z0_out = eval_Z(0, basis, outgoing.cos_polar);
    double const z1_out = eval_Z(1, basis, outgoing.cos_polar);

    complex value = 0;
    for (int lam = 0; lam < 2; ++lam)
    {
        double const o0 = ec.mixing[0][lam];
        double const o1 = ec.mixing[1][lam];
        complex const in = o0 * z0_in + 1i * o1 * z1_in;
        complex const out = o0 * z0_out - 1i * o1 * z1_out;
        value += partial_weight(k, ec.eigenphases[lam]) * in * out;
    }
    return {value, k, incident, outgoing};
}

//---------------------------------------------------------------------------//
CrossSectionRow sigma_bar(TwoCenterTarget const& t, double k)
{
    auto const phases = solve_phases(t, k);
    double const ceiling = 4 * pi / (k * k);
    CrossSectionRow row{};
    row.k = k;
    row.sigma0 = ceiling * std::pow(std::sin(phases.eta0), 2);
    row.sigma1 = ceiling * std::pow(std::sin(phases.eta1), 2);
    row.sigma_total = row.sigma0 + row.sigma1;
    return row;
}

double forward_sigma(TwoCenterTarget const& t, double k, Direction incident)
{
    auto const sol = oracle_solve(t, k, incident);
    return 4 * pi / k * oracle_amplitude(sol, incident).value.imag();
}

double oracle_sigma_bar(TwoCenterTarget const& t, double k, int nodes)
{
    require_positive_k(k, "oracle_sigma_bar");
    if (nodes < 16)
        throw DomainError("oracle_sigma_bar needs at least 16 nodes");
    auto const integral = integrate_axial_converged(
        [&](double u) { return forward_sigma(t, k, {u, 0.0}); },
        nodes,
        quadrature_tolerance);
    return integral.value / (4 * pi);
}

double integrated_sigma(TwoCenterTarget const& t,
                        double k,
                        Direction incident,
                        int nodes)
{
    if (nodes < 16)
        throw DomainError("integrated_sigma needs at least 16 nodes");
    auto const sol = oracle_solve(t, k, incident);
    return integrate_axial_converged(
               [&](double v) {
                   return std::norm(oracle_amplitude(sol, {v, 0.0}).value);
               },
               nodes,
               quadrature_tolerance)
        .value;
}

double paper_amplitude_divergence(TwoCenterTarget const& t,
                                  double k,
                                  std::span<double const> cosines)
{
    double worst = 0;
    for (double u : cosines)
    {
        auto const sol = oracle_solve(t, k, {u, 0.0});
        for (double v : cosines)
        {
            auto const exact = oracle_amplitude(sol, {v, 0.0}).value;
            auto const fixed
                = partial_amplitude_paper(t, k, {u, 0.0}, {v, 0.0}).value;
            worst = std::max(worst, std::abs(fixed - exact));
        }
    }
    return worst;
}

//---------------------------------------------------------------------------//
complex asymptotic_radial(
    ChannelMeta meta, double k, double r, double eta, RadialPhase phase)
{
    double const quarter = 0.5 * pi * meta.omega;
    double const prefactor_phase
        = (phase == RadialPhase::displayed) ? eta - quarter : eta + quarter;
    return std::sin(k * r - quarter + eta) / (k * r)
           * unit_phasor(prefactor_phase);
}

complex asymptotic_psi(TwoCenterTarget const& t,
                       double k,
                       Direction incident,
                       double r,
                       Direction outgoing_point)
{
    auto const phases = solve_phases(t, k);
    auto const basis = make_angular_basis(k, t.R);
    std::array<double, 2> const etas{phases.eta0, phases.eta1};

    complex psi = 0;
    for (int lam = 0; lam < 2; ++lam)
    {
        psi += asymptotic_radial(
                   channel_meta(lam), k, r, etas[lam], RadialPhase::general)
               * eval_Z(lam, basis, outgoing_point.cos_polar)
               * eval_Z(lam, basis, incident.cos_polar);
    }
    return 4 * pi * psi;
}

}  // namespace zrp
