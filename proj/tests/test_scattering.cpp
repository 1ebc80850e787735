#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "zrp/angular_basis.hpp"
#include "zrp/csv.hpp"
#include "zrp/errors.hpp"
#include "zrp/model.hpp"
#include "zrp/numerics.hpp"
#include "zrp/phase_solver.hpp"
#include "zrp/scattering.hpp"
#include "oracles.hpp"

using namespace zrp;
namespace fz = oracle::frozen;
using std::numbers::pi;

namespace
{
TwoCenterTarget c2() { return preset("C2", fz::c2_R); }

std::vector<double> const cosines{-1.0, -0.6, 0.0, 0.35, 0.8, 1.0};
std::vector<double> const momenta{0.05, 0.3, 0.5, 1.0, 1.4, 2.0, 2.6};

double rel(complex a, complex b)
{
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}
}  // namespace

TEST_CASE("amplitude coefficients")
{
    auto const sol = oracle_solve(preset("CH"), 0.5, {1.0, 0.0});
    CHECK(sol.D1.real() == doctest::Approx(fz::ch_D1_re).epsilon(1e-13));
    CHECK(sol.D1.imag() == doctest::Approx(fz::ch_D1_im).epsilon(1e-13));
    CHECK(sol.D2.real() == doctest::Approx(fz::ch_D2_re).epsilon(1e-13));
    CHECK(sol.D2.imag() == doctest::Approx(fz::ch_D2_im).epsilon(1e-13));
    CHECK(sol.residual < 1e-13);
}

TEST_CASE("oracle amplitude against an independent long-double solve")
{
    for (auto const& t : {preset("CH"), c2()})
    {
        for (double k : momenta)
        {
            for (double u : cosines)
            {
                auto const sol = oracle_solve(t, k, {u, 0.0});
                for (double v : cosines)
                {
                    auto const ref = oracle::amplitude(t, k, u, v);
                    complex const r(double(ref.real()), double(ref.imag()));
                    CAPTURE(k);
                    CHECK(rel(oracle_amplitude(sol, {v, 0.0}).value, r) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("exact partial-wave amplitude equals the oracle")
{
    for (auto const& t : {preset("CH"), c2()})
    {
        for (double k : momenta)
        {
            for (double u : cosines)
            {
                auto const sol = oracle_solve(t, k, {u, 0.0});
                for (double v : cosines)
                {
                    auto const f = oracle_amplitude(sol, {v, 0.0}).value;
                    auto const e = partial_amplitude_exact(t, k, {u, 0.0}, {v, 0.0}).value;
                    CAPTURE(t.name);
                    CAPTURE(k);
                    CHECK(rel(e, f) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("fixed-basis amplitude: exact for identical centers only")
{
    auto const t = c2();
    for (double k : momenta)
    {
        for (double u : cosines)
        {
            for (double v : cosines)
            {
                auto const f = oracle_amplitude(oracle_solve(t, k, {u, 0.0}), {v, 0.0}).value;
                auto const p = partial_amplitude_paper(t, k, {u, 0.0}, {v, 0.0}).value;
                CHECK(rel(p, f) < 1e-9);
            }
        }
    }
    // with unequal centers the eigenchannels mix Z0 and Z1
    double const div = paper_amplitude_divergence(preset("CH"), 0.5, cosines);
    CHECK(div > 1e-3);
    CHECK(std::isfinite(div));
}

TEST_CASE("reciprocity and exchange symmetry")
{
    auto const ch = preset("CH");
    double swap_gap = 0;
    for (double k : momenta)
    {
        for (double u : cosines)
        {
            for (double v : cosines)
            {
                Direction const in{u, 0.0};
                Direction const out{v, 0.0};
                auto const f = oracle_amplitude(oracle_solve(ch, k, in), out).value;
                auto const g = oracle_amplitude(
                    oracle_solve(ch, k, out.reversed()), in.reversed()).value;
                CHECK(rel(f, g) < 1e-12);
                auto const h = oracle_amplitude(oracle_solve(ch, k, out), in).value;
                swap_gap = std::max(swap_gap, rel(f, h));

                auto const a = oracle_amplitude(oracle_solve(c2(), k, in), out).value;
                auto const b = oracle_amplitude(oracle_solve(c2(), k, out), in).value;
                CHECK(rel(a, b) < 1e-12);
            }
        }
    }
    // plain in/out exchange is not a symmetry of a heteronuclear target
    CHECK(swap_gap > 1e-3);
}

TEST_CASE("swapping the centers mirrors the geometry")
{
    auto const ch = preset("CH");
    auto const hc = ch.swapped();
    for (double k : {0.3, 1.2})
    {
        auto const a = solve_phases(ch, k);
        auto const b = solve_phases(hc, k);
        CHECK(a.eta0 == doctest::Approx(b.eta0).epsilon(1e-12));
        CHECK(a.eta1 == doctest::Approx(b.eta1).epsilon(1e-12));
        auto const f = oracle_amplitude(oracle_solve(ch, k, {0.4, 0.0}), {-0.2, 0.0}).value;
        auto const g = oracle_amplitude(oracle_solve(hc, k, {-0.4, 0.0}), {0.2, 0.0}).value;
        CHECK(rel(f, g) < 1e-12);
    }
}

TEST_CASE("optical theorem per direction")
{
    for (auto const& t : {preset("CH"), c2()})
    {
        for (double k : {0.1, 0.5, 1.0, 2.0})
        {
            for (double u : {-1.0, -0.5, 0.0, 0.5, 1.0})
            {
                double const integral = integrated_sigma(t, k, {u, 0.0}, 64);
                double const forward = forward_sigma(t, k, {u, 0.0});
                CAPTURE(t.name);
                CAPTURE(k);
                CHECK(std::abs(integral - forward) < 1e-8 * std::abs(forward));
            }
        }
    }
}

TEST_CASE("eigenchannel decomposition")
{
    for (auto const& t : {preset("CH"), c2()})
    {
        for (double k : {0.05, 0.3, 0.5, 0.9, 1.2, 2.0, 2.9})
        {
            auto const ec = eigenchannels(t, k);
            auto const p = solve_phases(t, k);
            CAPTURE(t.name);
            CAPTURE(k);
            CHECK(ec.imaginary_residual < 1e-12);
            CHECK(ec.k_matrix[0][1] == doctest::Approx(ec.k_matrix[1][0]).epsilon(1e-12));
            auto const& o = ec.mixing;
            CHECK(std::abs(o[0][0] * o[0][0] + o[1][0] * o[1][0] - 1) < 1e-14);
            CHECK(std::abs(o[0][0] * o[0][1] + o[1][0] * o[1][1]) < 1e-14);
            // same pair of phases as the determinant solver
            double const same = std::max(std::abs(fold_half_turn(ec.eigenphases[0] - p.eta0)),
                                         std::abs(fold_half_turn(ec.eigenphases[1] - p.eta1)));
            double const crossed = std::max(std::abs(fold_half_turn(ec.eigenphases[0] - p.eta1)),
                                            std::abs(fold_half_turn(ec.eigenphases[1] - p.eta0)));
            CHECK(std::min(same, crossed) < 1e-9);
            if (t.identical_centers())
            {
                CHECK(std::abs(o[0][1]) < 1e-12);
                CHECK(same < 1e-9);
            }
        }
    }
}

TEST_CASE("averaged cross section")
{
    for (auto const& t : {preset("CH"), c2()})
    {
        for (double k : linear_grid(0.01, 2, 40))
        {
            auto const row = sigma_bar(t, k);
            double const ceiling = 4 * pi / (k * k);
            CHECK(row.sigma0 <= ceiling * (1 + 1e-15));
            CHECK(row.sigma1 <= ceiling * (1 + 1e-15));
            CHECK(row.sigma_total == doctest::Approx(row.sigma0 + row.sigma1));
            double const oracle = oracle_sigma_bar(t, k, 64);
            CAPTURE(t.name);
            CAPTURE(k);
            CHECK(std::abs(oracle - row.sigma_total) < 1e-8 * row.sigma_total);
        }
    }
    auto const low = sigma_bar(preset("CH"), 1e-4);
    CHECK(low.sigma_total == doctest::Approx(fz::ch_zero_energy_sigma).epsilon(5e-3));
    CHECK_THROWS_AS(oracle_sigma_bar(preset("CH"), 0.5, 4), DomainError);
}

TEST_CASE("channel metadata and asymptotic radial factor")
{
    CHECK(channel_meta(0).omega == 0);
    CHECK(channel_meta(1).omega == 1);
    CHECK_THROWS_AS(channel_meta(2), DomainError);

    double const k = 0.7, r = 50, eta = 0.3;
    auto const r0 = asymptotic_radial(channel_meta(0), k, r, eta);
    CHECK(r0.real() == doctest::Approx(std::sin(k * r + eta) / (k * r) * std::cos(eta)));
    CHECK(r0.imag() == doctest::Approx(std::sin(k * r + eta) / (k * r) * std::sin(eta)));
    // the two conventions differ only by the sign of the p-like channel
    auto const a = asymptotic_radial(channel_meta(1), k, r, eta, RadialPhase::displayed);
    auto const b = asymptotic_radial(channel_meta(1), k, r, eta, RadialPhase::general);
    CHECK(a.real() == doctest::Approx(-b.real()));
    CHECK(a.imag() == doctest::Approx(-b.imag()));
}

TEST_CASE("asymptotic wave: scattered part carries the fixed-basis amplitude")
{
    // psi minus the same expansion with zero phases is F e^{ikr} / r
    for (auto const& t : {preset("CH"), c2()})
    {
        double const k = 0.6;
        auto const basis = make_angular_basis(k, t.R);
        for (double r : {10.0, 1e3})
        {
            for (double u : {-0.7, 0.3})
            {
                for (double v : {-0.5, 0.9})
                {
                    Direction const in{u, 0.0};
                    Direction const out{v, 0.0};
                    complex free = 0;
                    for (int l = 0; l < 2; ++l)
                    {
                        free += 4 * pi
                                * asymptotic_radial(channel_meta(l), k, r, 0.0,
                                                    RadialPhase::general)
                                * eval_Z(l, basis, u) * eval_Z(l, basis, v);
                    }
                    auto const psi = asymptotic_psi(t, k, in, r, out);
                    auto const f = partial_amplitude_paper(t, k, in, out).value;
                    complex const expected = f * std::exp(complex(0, k * r)) / r;
                    CHECK(std::abs(psi - free - expected)
                          < 1e-12 * std::max(std::abs(expected), 1.0 / r));
                }
            }
        }
    }
}

TEST_CASE("singular and invalid inputs")
{
    CHECK_THROWS_AS(oracle_solve(preset("CH"), -0.1, {}), DomainError);
    CHECK_THROWS_AS(eigenchannels(preset("CH"), 0.0), DomainError);
    CHECK_THROWS_AS(eigenchannels(preset("CH"), pi / 1.912), PoleError);
}
