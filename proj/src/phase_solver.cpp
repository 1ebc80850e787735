#include "zrp/phase_solver.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "zrp/errors.hpp"
#include "zrp/numerics.hpp"

namespace zrp
{
namespace
{
constexpr double scaled_form_threshold = 1e-6;
constexpr double discriminant_clamp = 1e-12;
constexpr double degenerate_band = 1e-20;
constexpr double infinity = std::numeric_limits<double>::infinity();

void require_positive_k(double k, char const* op)
{
    if (!(k > 0) || !std::isfinite(k))
    {
        throw DomainError(std::string(op) + ": momentum must be positive, got k = "
                          + std::to_string(k));
    }
}

//! Polynomial phase part and the (-1)^offset sign of one center
struct CenterPhase
{
    double excess;
    double sign;

    double sin() const { return sign * std::sin(excess); }
    double cos() const { return sign * std::cos(excess); }
    //! sin(delta - eta), expanded so that eta ~ delta (mod pi) keeps its digits
    double sin_minus(double eta) const
    {
        return sign
               * (std::sin(excess) * std::cos(eta)
                  - std::cos(excess) * std::sin(eta));
    }
};

CenterPhase center_phase(SPhaseModel const& m, double k)
{
    return {phase_excess(m, k), (m.offset_half_turns % 2 == 0) ? 1.0 : -1.0};
}

/*!
 * Roots of alpha y^2 + b y + c = 0 with y = sin d1 sin d2 cot(eta):
 *   b = s sin 2z + z^2 sin(d1 + d2),  c = s (s cos^2 z - z^2 cos d1 cos d2)
 * where s = sin d1 sin d2. Every coefficient is finite and alpha < 0.
 */
struct ScaledRoots
{
    double z;
    double s;
    double b;
    double linear_cot;  //!< cot(eta) of the y = 0 root when s == 0
    double lo;
    double hi;
    bool degenerate;
};

ScaledRoots scaled_roots(CenterPhase const& p1,
                         CenterPhase const& p2,
                         double z)
{
    double const s1 = p1.sin();
    double const s2 = p2.sin();
    double const c1 = p1.cos();
    double const c2 = p2.cos();
    double const sz = std::sin(z);
    double const cz = std::cos(z);

    ScaledRoots r{};
    r.z = z;
    r.s = s1 * s2;
    double const alpha = -z_minus_sin(z) * (z + sz);
    r.b = r.s * 2 * sz * cz + z * z * (c1 * s2 + s1 * c2);
    double const c = r.s * (r.s * cz * cz - z * z * c1 * c2);

    double disc = r.b * r.b - 4 * alpha * c;
    double const scale = r.b * r.b + std::abs(4 * alpha * c);
    if (disc < 0)
    {
        if (disc < -discriminant_clamp * scale)
        {
            throw NumericalError(
                "negative discriminant " + std::to_string(disc)
                + " at z = " + std::to_string(z)
                + " (the eigenphase quadratic must have real roots)");
        }
        disc = 0;
    }
    r.degenerate = disc <= degenerate_band * scale;

    double const q = -0.5 * (r.b + std::copysign(std::sqrt(disc), r.b));
    double const y1 = q / alpha;
    double const y2 = (q != 0) ? c / q : y1;
    r.lo = std::fmin(y1, y2);
    r.hi = std::fmax(y1, y2);
    if (q == 0)
        r.degenerate = true;

    // s == 0: one center is transparent and the quadratic degenerates to
    // z^2 (cos d1 sin d2 + ...) x - z^2 cos d1 cos d2 = 0 for the y = 0 root
    r.linear_cot = (r.b != 0) ? z * z * c1 * c2 / r.b : 0.0;
    return r;
}

double cot_from_scaled(ScaledRoots const& r, double y)
{
    if (r.s != 0)
        return y / r.s;
    return (y == 0) ? r.linear_cot : infinity;
}

double eta_from_scaled(ScaledRoots const& r, double y)
{
    if (r.s == 0 && y == 0)
        return fold_half_turn(std::atan2(1.0, r.linear_cot));
    return fold_half_turn(std::atan2(r.s, y));
}

double eta_from_cot(double cot)
{
    return fold_half_turn(std::atan2(1.0, cot));
}

double relative_residual(CenterPhase const& p1,
                         CenterPhase const& p2,
                         double k,
                         double R,
                         double eta)
{
    // Rows of the homogeneous system multiplied by sin d_j:
    //   s * B1 B2 = k^2 sin(d1 - eta) sin(d2 - eta)
    double const s = p1.sin() * p2.sin();
    double const a = std::sin(k * R + eta) / R;
    double const bb = k * k * p1.sin_minus(eta) * p2.sin_minus(eta);
    double const num = std::abs(bb - s * a * a);
    double const den = std::fmax(std::abs(s), std::abs(bb));
    if (den == 0)
        return num;
    return num / den;
}

//! True if the lower y root is channel 0 (the eta ~ k branch).
bool lower_root_is_channel0(TwoCenterTarget const& t)
{
    // At z = 1e-5 the two |y| differ by ~1/z^2: the eta ~ k channel has
    // cot ~ 1/k and the eta ~ k^3 channel cot ~ 1/k^3.
    double const k_ref = 1e-5 / t.R;
    auto const r = scaled_roots(
        center_phase(t.center1, k_ref), center_phase(t.center2, k_ref), k_ref * t.R);
    return std::abs(r.lo) <= std::abs(r.hi);
}

MolecularPhases assemble(ScaledRoots const& r,
                         double y0,
                         double y1,
                         double k)
{
    MolecularPhases out{};
    out.k = k;
    out.eta0 = eta_from_scaled(r, y0);
    out.eta1 = eta_from_scaled(r, y1);
    out.cot_eta0 = cot_from_scaled(r, y0);
    out.cot_eta1 = cot_from_scaled(r, y1);
    double const x_lo = cot_from_scaled(r, r.lo);
    double const x_hi = cot_from_scaled(r, r.hi);
    // alpha < 0, so the minus-sqrt branch is the larger cotangent
    out.cot_branch_minus = std::fmax(x_lo, x_hi);
    out.cot_branch_plus = std::fmin(x_lo, x_hi);
    out.degenerate_pairing = r.degenerate;
    return out;
}

}  // namespace

//---------------------------------------------------------------------------//
QuadraticCoeffs quadratic_coeffs(TwoCenterTarget const& t, double k)
{
    require_positive_k(k, "quadratic_coeffs");
    auto const p1 = center_phase(t.center1, k);
    auto const p2 = center_phase(t.center2, k);
    double const z = k * t.R;
    double const sz = std::sin(z);
    double const cz = std::cos(z);

    QuadraticCoeffs q{};
    q.z = z;
    q.alpha = -z_minus_sin(z) * (z + sz);

    double const s1 = p1.sin();
    double const s2 = p2.sin();
    if (std::abs(s1) < scaled_form_threshold
        || std::abs(s2) < scaled_form_threshold)
    {
        double const s = s1 * s2;
        double const c1 = p1.cos();
        double const c2 = p2.cos();
        q.scaled = true;
        q.alpha *= s;
        q.beta = 2 * sz * cz * s + z * z * (c1 * s2 + s1 * c2);
        q.gamma = cz * cz * s - z * z * c1 * c2;
    }
    else
    {
        double const cot1 = p1.cos() / s1;
        double const cot2 = p2.cos() / s2;
        q.beta = 2 * sz * cz + z * z * (cot1 + cot2);
        q.gamma = cz * cz - z * z * cot1 * cot2;
    }
    return q;
}

MolecularPhases solve_phases(TwoCenterTarget const& t, double k)
{
    require_positive_k(k, "solve_phases");
    auto const p1 = center_phase(t.center1, k);
    auto const p2 = center_phase(t.center2, k);
    double const z = k * t.R;
    auto const r = scaled_roots(p1, p2, z);

    double y0 = r.lo;
    double y1 = r.hi;
    if (t.identical_centers())
    {
        // Even channel: y (z + sin z) = z t cos d - t^2 cos z,
        // odd channel:  y (z - sin z) = z t cos d + t^2 cos z, t = sin d.
        double const plus = z + std::sin(z);
        double const minus = z_minus_sin(z);
        double const shift = 2 * r.s * std::cos(z);
        double const lo_even
            = std::abs(r.lo * plus - r.hi * minus + shift);
        double const hi_even
            = std::abs(r.hi * plus - r.lo * minus + shift);
        if (hi_even < lo_even)
            std::swap(y0, y1);
    }
    else if (!lower_root_is_channel0(t))
    {
        std::swap(y0, y1);
    }

    auto out = assemble(r, y0, y1, k);
    out.residual0 = relative_residual(p1, p2, k, t.R, out.eta0);
    out.residual1 = relative_residual(p1, p2, k, t.R, out.eta1);
    return out;
}

MolecularPhases solve_phases_identical(double delta, double R, double k)
{
    require_positive_k(k, "solve_phases_identical");
    if (!(R > 0))
        throw DomainError("solve_phases_identical: R must be positive");

    // Reduction mod pi flips the sign of sin and cos together, which leaves
    // both the cotangent and the residual products unchanged.
    CenterPhase const p{std::remainder(delta, std::numbers::pi), 1.0};
    double const s = std::sin(p.excess);
    if (std::abs(s) < default_pole_floor)
    {
        throw PoleError("cot delta is singular for delta = "
                            + std::to_string(delta),
                        k);
    }
    double const z = k * R;
    double const zcot = z * std::cos(p.excess) / s;

    MolecularPhases out{};
    out.k = k;
    out.cot_eta0 = (zcot - std::cos(z)) / (z + std::sin(z));
    out.cot_eta1 = (zcot + std::cos(z)) / z_minus_sin(z);
    out.eta0 = eta_from_cot(out.cot_eta0);
    out.eta1 = eta_from_cot(out.cot_eta1);
    out.cot_branch_minus = std::fmax(out.cot_eta0, out.cot_eta1);
    out.cot_branch_plus = std::fmin(out.cot_eta0, out.cot_eta1);
    out.residual0 = relative_residual(p, p, k, R, out.eta0);
    out.residual1 = relative_residual(p, p, k, R, out.eta1);
    return out;
}

MolecularPhases
solve_phases_identical(SPhaseModel const& model, double R, double k)
{
    require_positive_k(k, "solve_phases_identical");
    if (!(R > 0))
        throw DomainError("solve_phases_identical: R must be positive");

    double const z = k * R;
    double const zcot = R * kcot_delta(model, k);
    auto const p = center_phase(model, k);

    MolecularPhases out{};
    out.k = k;
    out.cot_eta0 = (zcot - std::cos(z)) / (z + std::sin(z));
    out.cot_eta1 = (zcot + std::cos(z)) / z_minus_sin(z);
    out.eta0 = eta_from_cot(out.cot_eta0);
    out.eta1 = eta_from_cot(out.cot_eta1);
    out.cot_branch_minus = std::fmax(out.cot_eta0, out.cot_eta1);
    out.cot_branch_plus = std::fmin(out.cot_eta0, out.cot_eta1);
    out.residual0 = relative_residual(p, p, k, R, out.eta0);
    out.residual1 = relative_residual(p, p, k, R, out.eta1);
    return out;
}

//---------------------------------------------------------------------------//
double determinant_residual(TwoCenterTarget const& t, double k, double eta)
{
    require_positive_k(k, "determinant_residual");
    double const a = std::sin(k * t.R + eta) / t.R;
    double const b1 = k * std::cos(eta) - std::sin(eta) * kcot_delta(t.center1, k);
    double const b2 = k * std::cos(eta) - std::sin(eta) * kcot_delta(t.center2, k);
    return b1 * b2 - a * a;
}

double relative_determinant_residual(TwoCenterTarget const& t,
                                     double k,
                                     double eta)
{
    require_positive_k(k, "relative_determinant_residual");
    return relative_residual(center_phase(t.center1, k),
                             center_phase(t.center2, k),
                             k,
                             t.R,
                             eta);
}

//---------------------------------------------------------------------------//
ScatteringLength scattering_length(TwoCenterTarget const& t)
{
    std::array<RichardsonSample, 3> samples;
    std::array<double, 3> const ks{1e-3, 1e-4, 1e-5};
    for (std::size_t i = 0; i < ks.size(); ++i)
    {
        samples[i] = {ks[i], -solve_phases(t, ks[i]).eta0 / ks[i]};
    }
    auto const extrapolated = richardson_limit(samples, 1e-4);

    ScatteringLength out{};
    out.value = extrapolated.limit;
    out.error_estimate = extrapolated.error;

    double const a1 = -t.center1.c1;
    double const a2 = -t.center2.c1;
    if (a1 != 0 && a2 != 0)
    {
        out.near_resonance = std::abs(1 - t.R * t.R / (a1 * a2)) < 1e-6;
    }
    return out;
}

}  // namespace zrp
