#pragma once

#include <array>
#include <complex>
#include <span>

#include "zrp/model.hpp"

namespace zrp
{
using complex = std::complex<double>;

//---------------------------------------------------------------------------//
/*!
 * Closed-form scattered wave of two zero-range centers:
 *
 *   psi = exp(i k.r) + D1 exp(ik|r-R1|)/|r-R1| + D2 exp(ik|r-R2|)/|r-R2|
 *
 * The boundary conditions at the centers give the 2x2 system
 *
 *   (k cot d1 - ik) D1 - a D2 = exp(i k.R1)
 *   -a D1 + (k cot d2 - ik) D2 = exp(i k.R2),    a = exp(ikR)/R.
 */
struct OracleSolution
{
    double k;
    double R;
    Direction incident;
    complex D1;  //!< [bohr]
    complex D2;  //!< [bohr]
    //! max row residual / max(1, |rhs|) of the solved system
    double residual;
};

struct Amplitude
{
    complex value;  //!< [bohr]
    double k;
    Direction incident;
    Direction outgoing;
};

/*!
 * Eigenchannels of the real symmetric K-matrix.
 *
 * The K-matrix is expressed in the basis (Z0, -i Z1), where it is real:
 * S - 1 = 2ik D (K - ik)^-1 D^-1 with D = diag(1, -i). Column lambda of
 * `mixing` holds the (Z0, -i Z1) components of eigenchannel lambda; the
 * eigenphase satisfies k cot(eta) = kappa_lambda. Channel 0 is the
 * eigenvector with the larger Z0 weight.
 */
struct EigenchannelDecomposition
{
    double k;
    std::array<double, 2> eigenphases;
    std::array<std::array<double, 2>, 2> mixing;
    std::array<std::array<double, 2>, 2> k_matrix;
    //! Largest |Im| discarded when forming the real K-matrix
    double imaginary_residual;
    bool degenerate{false};
};

struct CrossSectionRow
{
    double k;
    double sigma0;       //!< [bohr^2]
    double sigma1;       //!< [bohr^2]
    double sigma_total;  //!< [bohr^2]
};

struct ChannelMeta
{
    int lambda;
    int omega;
};

ChannelMeta channel_meta(int lambda);

//! Phase factor of the asymptotic radial functions.
enum class RadialPhase
{
    //! exp(i eta) for lambda = 0 and exp(i (eta - pi/2)) for lambda = 1
    displayed,
    //! exp(i (eta + pi omega / 2)); matches the partial-wave amplitude
    general,
};

//---------------------------------------------------------------------------//
// Closed-form oracle
//---------------------------------------------------------------------------//

OracleSolution
oracle_solve(TwoCenterTarget const& target, double k, Direction incident);

//! D1 exp(-i k k'.R1) + D2 exp(-i k k'.R2)
Amplitude oracle_amplitude(OracleSolution const& sol, Direction outgoing);

//---------------------------------------------------------------------------//
// Partial-wave amplitudes
//---------------------------------------------------------------------------//

//! (2 pi / ik) sum_lambda (exp(2i eta) - 1) Z(incident) Z(outgoing)
Amplitude partial_amplitude_paper(TwoCenterTarget const& target,
                                  double k,
                                  Direction incident,
                                  Direction outgoing);

EigenchannelDecomposition eigenchannels(TwoCenterTarget const& target, double k);

//! Partial-wave sum over the mixed eigenchannel angular functions
Amplitude partial_amplitude_exact(TwoCenterTarget const& target,
                                  double k,
                                  Direction incident,
                                  Direction outgoing);

//---------------------------------------------------------------------------//
// Cross sections
//---------------------------------------------------------------------------//

//! (4 pi / k^2) sin^2 eta per channel
CrossSectionRow sigma_bar(TwoCenterTarget const& target, double k);

//! Orientation average of (4 pi / k) Im F(k, k) from the oracle
double oracle_sigma_bar(TwoCenterTarget const& target, double k, int nodes);

//! Integral of |F|^2 over outgoing directions for one incident direction
double integrated_sigma(TwoCenterTarget const& target,
                        double k,
                        Direction incident,
                        int nodes);

//! (4 pi / k) Im F(k, k) for one incident direction
double forward_sigma(TwoCenterTarget const& target, double k, Direction incident);

//! max |F_fixed - F_oracle| over all pairs of the given polar cosines
double paper_amplitude_divergence(TwoCenterTarget const& target,
                                  double k,
                                  std::span<double const> cosines);

//---------------------------------------------------------------------------//
// Asymptotic wave function
//---------------------------------------------------------------------------//

complex asymptotic_radial(ChannelMeta meta,
                          double k,
                          double r,
                          double eta,
                          RadialPhase phase = RadialPhase::displayed);

/*!
 * 4 pi sum_lambda R_lambda(r) Z_lambda(r_hat) Z_lambda(k_hat) at r >> R.
 *
 * Valid only far outside the target (r > 20 R is a safe choice); no cutoff
 * is enforced. Uses the general radial phase so that the outgoing part
 * reproduces exp(ikr)/r times partial_amplitude_paper.
 */
complex asymptotic_psi(TwoCenterTarget const& target,
                       double k,
                       Direction incident,
                       double r,
                       Direction outgoing_point);

}  // namespace zrp
