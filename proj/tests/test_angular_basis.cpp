#include <cmath>
#include <numbers>

#include <doctest.h>

#include "zrp/angular_basis.hpp"
#include "zrp/csv.hpp"
#include "zrp/errors.hpp"
#include "oracles.hpp"

using namespace zrp;
using oracle::ld;
namespace fz = oracle::frozen;

TEST_CASE("S factors")
{
    auto const [sp, sm] = s_factors(2.0);
    CHECK(sp == doctest::Approx(fz::s_plus_z2).epsilon(1e-15));
    CHECK(sm == doctest::Approx(fz::s_minus_z2).epsilon(1e-15));
    for (double z : {1e-8, 1e-3, 0.5, 3.0, 20.0})
    {
        auto const [p, m] = s_factors(z);
        CHECK(p + m == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(m > 0);
        CHECK(m == doctest::Approx(double(1 - std::sin(ld(z)) / ld(z))).epsilon(z < 1e-3 ? 1e-3 : 1e-12));
    }
    // tiny z: S- ~ z^2 / 6 with full relative accuracy
    CHECK(s_factors(1e-6).second == doctest::Approx(1e-12 / 6).epsilon(1e-10));
    CHECK_THROWS_AS(s_factors(0.0), DomainError);
    CHECK_THROWS_AS(make_angular_basis(-1, 2), DomainError);
}

TEST_CASE("Z functions against the defining cos/sin form")
{
    for (double z : {0.01, 0.7, 2.0, 6.5})
    {
        auto const b = make_angular_basis(z / 2.0, 2.0);
        CHECK(b.z() == doctest::Approx(z));
        ld const sp = 1 + std::sin(ld(z)) / z;
        ld const sm = 1 - std::sin(ld(z)) / z;
        for (double u : linear_grid(-1, 1, 21))
        {
            ld const z0 = std::cos(z * u / 2) / std::sqrt(2 * oracle::pi_l * sp);
            ld const z1 = std::sin(z * u / 2) / std::sqrt(2 * oracle::pi_l * sm);
            CHECK(eval_Z(0, b, u) == doctest::Approx(double(z0)).epsilon(1e-13));
            CHECK(eval_Z(1, b, u) == doctest::Approx(double(z1)).epsilon(z < 0.1 ? 1e-9 : 1e-13));
        }
    }
    auto const b = make_angular_basis(1, 1);
    CHECK_THROWS_AS(eval_Z(2, b, 0.0), DomainError);
}

TEST_CASE("parity")
{
    for (double z : {1e-4, 0.9, 4.0})
    {
        auto const b = make_angular_basis(z, 1.0);
        for (double u : {0.0, 0.2, 0.75, 1.0})
        {
            CHECK(eval_Z(0, b, -u) == eval_Z(0, b, u));
            CHECK(eval_Z(1, b, -u) == -eval_Z(1, b, u));
        }
    }
}

TEST_CASE("orthonormality")
{
    for (double z : {0.1, 1.0, std::numbers::pi, 5.0, 8.0})
    {
        auto const g = orthonormality_matrix(make_angular_basis(z, 1.0), 64);
        CAPTURE(z);
        CHECK(std::abs(g[0][0] - 1) < 1e-12);
        CHECK(std::abs(g[1][1] - 1) < 1e-12);
        CHECK(std::abs(g[0][1]) < 1e-12);
        CHECK(std::abs(g[1][0]) < 1e-12);
    }
    CHECK_THROWS_AS(orthonormality_matrix(make_angular_basis(1, 1), 8), DomainError);
}

TEST_CASE("spherical-harmonic limit")
{
    CHECK(limit_Y(0, 0.3) == doctest::Approx(1 / std::sqrt(4 * std::numbers::pi)));
    CHECK(limit_Y(1, 0.3) == doctest::Approx(0.3 * std::sqrt(3 / (4 * std::numbers::pi))));
    auto const b = make_angular_basis(1e-4, 1.0);
    double worst = 0;
    for (double u : linear_grid(-1, 1, 201))
    {
        worst = std::max(worst, std::abs(eval_Z(0, b, u) - limit_Y(0, u)));
        worst = std::max(worst, std::abs(eval_Z(1, b, u) - limit_Y(1, u)));
    }
    CHECK(worst < 1e-6);

    // the limit error shrinks like z^2
    auto err = [](double z) {
        auto const bb = make_angular_basis(z, 1.0);
        return std::abs(eval_Z(1, bb, 1.0) - limit_Y(1, 1.0));
    };
    CHECK(err(1e-2) / err(1e-1) == doctest::Approx(1e-2).epsilon(0.05));
}

TEST_CASE("Z1 is smooth across the small-z branch")
{
    double const lo = make_angular_basis(1e-3 * (1 - 1e-12), 1.0).k;
    double const hi = make_angular_basis(1e-3 * (1 + 1e-12), 1.0).k;
    for (double u : {0.1, 0.5, 1.0})
    {
        double const a = eval_Z(1, make_angular_basis(lo, 1.0), u);
        double const b = eval_Z(1, make_angular_basis(hi, 1.0), u);
        CHECK(a == doctest::Approx(b).epsilon(1e-10));
    }
}
