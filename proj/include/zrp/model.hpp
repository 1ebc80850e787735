#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace zrp
{
//---------------------------------------------------------------------------//
/*!
 * Quadratic model of a single-center s-wave phase shift (radians):
 *
 *   delta(k) = offset_half_turns * pi + c1 * k + c2 * k^2
 *
 * The integer multiple of pi is stored separately so trigonometric
 * functions of the phase can be evaluated from the small polynomial part
 * alone, without large-argument roundoff.
 */
struct SPhaseModel
{
    int offset_half_turns{0};
    double c1{0};  //!< [rad * bohr]
    double c2{0};  //!< [rad * bohr^2]

    friend bool operator==(SPhaseModel const&, SPhaseModel const&) = default;
};

//! sin and cos of a phase evaluated without the offset roundoff.
struct PhaseTrig
{
    double sin;
    double cos;
};

//---------------------------------------------------------------------------//
/*!
 * Two zero-range centers on the symmetry axis.
 *
 * Center 1 sits at +R/2 and center 2 at -R/2 along the axis, so that for a
 * unit vector with polar cosine u the projection k_hat . R_j = +-(R/2) u.
 */
struct TwoCenterTarget
{
    std::string name;
    SPhaseModel center1;
    SPhaseModel center2;
    double R{0};  //!< internuclear distance [bohr]
    std::string provenance;

    //! Whether both centers carry the same phase model
    bool identical_centers() const { return center1 == center2; }

    //! Same target with the two centers exchanged
    TwoCenterTarget swapped() const;
};

//! Direction in the target frame: polar cosine to the axis and azimuth.
struct Direction
{
    double cos_polar{1};
    double azimuth{0};

    //! Inverted direction (-k_hat)
    Direction reversed() const;
};

//---------------------------------------------------------------------------//
// Phase models
//---------------------------------------------------------------------------//

//! delta(k) in radians
double eval_phase(SPhaseModel const& model, double k);

//! Polynomial part c1 k + c2 k^2 of the phase
double phase_excess(SPhaseModel const& model, double k);

//! sin and cos of delta(k) including the (-1)^offset sign
PhaseTrig phase_trig(SPhaseModel const& model, double k);

inline constexpr double default_pole_floor = 1e-14;

// k cot delta(k); throws PoleError when |sin delta| < pole_floor
double kcot_delta(SPhaseModel const& model,
                  double k,
                  double pole_floor = default_pole_floor);

//---------------------------------------------------------------------------//
// Presets and target files
//---------------------------------------------------------------------------//

//! Carbon atom: delta = 2 pi - 1.912 k
SPhaseModel carbon_model();
//! Hydrogen atom, singlet: delta = pi - 5.72682 k + 3.62932 k^2
SPhaseModel hydrogen_singlet_model();

inline constexpr double ch_bond_length = 2.116;

/*!
 * Resolve a target by preset name ("CH", "C2") or by path to a target JSON
 * file.
 *
 * "C2" has no built-in internuclear distance: the caller must supply one.
 * An explicit R overrides the distance of any source and is recorded in the
 * provenance string.
 */
TwoCenterTarget
preset(std::string_view name, std::optional<double> R = std::nullopt);

//! Throw DomainError if the target violates its invariants
void validate(TwoCenterTarget const& target);

TwoCenterTarget parse_target(std::string_view json_text);
std::string serialize_target(TwoCenterTarget const& target);
TwoCenterTarget load_target(std::string const& path);

}  // namespace zrp
