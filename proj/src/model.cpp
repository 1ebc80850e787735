#include "zrp/model.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "zrp/errors.hpp"

namespace zrp
{
namespace
{
using nlohmann::json;

json model_to_json(SPhaseModel const& m)
{
    return {{"offset_half_turns", m.offset_half_turns},
            {"c1", m.c1},
            {"c2", m.c2}};
}

SPhaseModel model_from_json(json const& j, char const* which)
{
    if (!j.is_object())
    {
        throw DomainError(std::string("target field '") + which
                          + "' must be an object");
    }
    SPhaseModel m;
    try
    {
        m.offset_half_turns = j.at("offset_half_turns").get<int>();
        m.c1 = j.at("c1").get<double>();
        m.c2 = j.value("c2", 0.0);
    }
    catch (json::exception const& e)
    {
        throw DomainError(std::string("bad phase model '") + which
                          + "': " + e.what());
    }
    return m;
}

std::string format_r(double R)
{
    std::ostringstream os;
    os.precision(17);
    os << R;
    return os.str();
}

}  // namespace

//---------------------------------------------------------------------------//
TwoCenterTarget TwoCenterTarget::swapped() const
{
    TwoCenterTarget result = *this;
    std::swap(result.center1, result.center2);
    return result;
}

Direction Direction::reversed() const
{
    double phi = azimuth + std::numbers::pi;
    if (phi >= 2 * std::numbers::pi)
        phi -= 2 * std::numbers::pi;
    return {-cos_polar, phi};
}

//---------------------------------------------------------------------------//
double eval_phase(SPhaseModel const& model, double k)
{
    return model.offset_half_turns * std::numbers::pi
           + phase_excess(model, k);
}

double phase_excess(SPhaseModel const& model, double k)
{
    return (model.c1 + model.c2 * k) * k;
}

PhaseTrig phase_trig(SPhaseModel const& model, double k)
{
    double const e = phase_excess(model, k);
    double const sign = (model.offset_half_turns % 2 == 0) ? 1.0 : -1.0;
    return {sign * std::sin(e), sign * std::cos(e)};
}

double kcot_delta(SPhaseModel const& model, double k, double pole_floor)
{
    // The (-1)^offset factor cancels in the cotangent
    double const e = phase_excess(model, k);
    double const s = std::sin(e);
    if (std::abs(s) < pole_floor)
    {
        throw PoleError("k cot delta is singular at k = " + format_r(k)
                            + " (|sin delta| = " + format_r(std::abs(s))
                            + ")",
                        k);
    }
    return k * std::cos(e) / s;
}

//---------------------------------------------------------------------------//
SPhaseModel carbon_model()
{
    return {2, -1.912, 0.0};
}

SPhaseModel hydrogen_singlet_model()
{
    return {1, -5.72682, 3.62932};
}

TwoCenterTarget preset(std::string_view name, std::optional<double> R)
{
    TwoCenterTarget t;
    if (name == "CH")
    {
        t.name = "CH";
        t.center1 = carbon_model();
        t.center2 = hydrogen_singlet_model();
        t.R = ch_bond_length;
        t.provenance = "preset CH, R = 2.116 bohr";
    }
    else if (name == "C2")
    {
        if (!R)
        {
            throw DomainError(
                "preset C2 has no built-in internuclear distance; supply R");
        }
        t.name = "C2";
        t.center1 = carbon_model();
        t.center2 = carbon_model();
        t.R = *R;
        t.provenance = "preset C2, user-supplied R";
    }
    else if (std::filesystem::is_regular_file(std::filesystem::path(name)))
    {
        t = load_target(std::string(name));
    }
    else
    {
        throw DomainError("unknown target '" + std::string(name)
                          + "' (expected CH, C2, or a target JSON file)");
    }

    if (R && name != "C2")
    {
        t.R = *R;
        t.provenance += "; R overridden to " + format_r(*R) + " bohr";
    }
    validate(t);
    return t;
}

void validate(TwoCenterTarget const& t)
{
    if (!(t.R > 0) || !std::isfinite(t.R))
    {
        throw DomainError("target '" + t.name
                          + "': internuclear distance R must be positive, got "
                          + format_r(t.R));
    }
    for (auto const* m : {&t.center1, &t.center2})
    {
        if (m->offset_half_turns < 0)
        {
            throw DomainError("target '" + t.name
                              + "': offset_half_turns must be >= 0");
        }
        if (!std::isfinite(m->c1) || !std::isfinite(m->c2))
        {
            throw DomainError("target '" + t.name
                              + "': phase coefficients must be finite");
        }
    }
}

//---------------------------------------------------------------------------//
TwoCenterTarget parse_target(std::string_view text)
{
    json j;
    try
    {
        j = json::parse(text);
    }
    catch (json::parse_error const& e)
    {
        throw ParseError("malformed target JSON at byte "
                             + std::to_string(e.byte) + ": " + e.what(),
                         e.byte);
    }
    if (!j.is_object())
        throw DomainError("target JSON must be an object");

    TwoCenterTarget t;
    try
    {
        t.name = j.value("name", std::string("custom"));
        t.R = j.at("R").get<double>();
        t.provenance = j.value("provenance", std::string("target file"));
    }
    catch (json::exception const& e)
    {
        throw DomainError(std::string("bad target JSON: ") + e.what());
    }
    if (!j.contains("center1") || !j.contains("center2"))
        throw DomainError("target JSON needs center1 and center2");
    t.center1 = model_from_json(j["center1"], "center1");
    t.center2 = model_from_json(j["center2"], "center2");
    validate(t);
    return t;
}

std::string serialize_target(TwoCenterTarget const& t)
{
    json j = {{"name", t.name},
              {"R", t.R},
              {"center1", model_to_json(t.center1)},
              {"center2", model_to_json(t.center2)}};
    if (!t.provenance.empty())
        j["provenance"] = t.provenance;
    return j.dump(2) + "\n";
}

TwoCenterTarget load_target(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot open target file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_target(buf.str());
}

}  // namespace zrp
