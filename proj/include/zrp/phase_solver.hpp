#pragma once

#include "zrp/model.hpp"

namespace zrp
{
//---------------------------------------------------------------------------//
/*!
 * Coefficients of alpha x^2 + beta x + gamma = 0 in x = cot(eta).
 *
 * Unscaled:
 *   alpha = sin^2 z - z^2
 *   beta  = sin 2z + z^2 (cot d1 + cot d2)
 *   gamma = cos^2 z - z^2 cot d1 cot d2
 * with z = kR. When a single-center phase is within 1e-6 of a pole the
 * whole quadratic is multiplied by sin d1 sin d2, which leaves the roots
 * unchanged and keeps every coefficient finite.
 */
struct QuadraticCoeffs
{
    double z;
    double alpha;
    double beta;
    double gamma;
    bool scaled{false};
};

//! Eigenphases of the two-center target at one momentum.
struct MolecularPhases
{
    double k;
    //! Principal values in (-pi/2, pi/2]; eta0 ~ k, eta1 ~ k^3 as k -> 0
    double eta0;
    double eta1;
    //! +-infinity when the corresponding eta is zero
    double cot_eta0;
    double cot_eta1;
    //! |B1 B2 - A^2| / max(1, |B1 B2|) at each eta
    double residual0;
    double residual1;
    //! Raw roots of the minus-sqrt and plus-sqrt branches before labeling
    double cot_branch_minus;
    double cot_branch_plus;
    //! Roots (nearly) coincide so the channel pairing is ambiguous
    bool degenerate_pairing{false};
};

QuadraticCoeffs quadratic_coeffs(TwoCenterTarget const& target, double k);

/*!
 * Both eigenphases from the stable quadratic solution.
 *
 * The quadratic is solved in y = sin d1 sin d2 cot(eta), whose coefficients
 * are finite everywhere and whose leading coefficient sin^2 z - z^2 is
 * strictly negative, so the two roots stay ordered and continuous in k.
 * Channel 0 is the root that behaves as eta ~ k at vanishing momentum. For
 * identical centers the labels follow the even/odd symmetry of the
 * eigenvectors instead.
 */
MolecularPhases solve_phases(TwoCenterTarget const& target, double k);

//! Closed form for identical centers with phase delta (radians) at k
MolecularPhases solve_phases_identical(double delta, double R, double k);

//! Same, with delta(k) taken from a model for full precision
MolecularPhases
solve_phases_identical(SPhaseModel const& model, double R, double k);

//! B1 B2 - A^2 of the homogeneous standing-wave system at trial phase eta
double determinant_residual(TwoCenterTarget const& target, double k, double eta);

//! |B1 B2 - A^2| / max(1, |B1 B2|), evaluated without cot(delta) poles
double relative_determinant_residual(TwoCenterTarget const& target,
                                     double k,
                                     double eta);

struct ScatteringLength
{
    double value;           //!< [bohr]
    double error_estimate;  //!< Richardson error estimate [bohr]
    bool near_resonance;    //!< 1 - R^2/(a1 a2) vanishes within 1e-6
};

/*!
 * Molecular scattering length -lim eta0(k)/k, extrapolated from
 * k in {1e-3, 1e-4, 1e-5}. Throws NumericalError if the estimate does not
 * settle to 1e-4 relative.
 */
ScatteringLength scattering_length(TwoCenterTarget const& target);

}  // namespace zrp
