#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace zrp::cli
{
enum class Subcommand
{
    phases,
    xsec,
    angular,
    amplitude,
    figures,
    validate,
};

struct RunConfig
{
    Subcommand subcommand{Subcommand::phases};
    std::string target_source{"CH"};
    std::optional<double> R;
    double k_min{0.01};
    double k_max{2.0};
    int k_steps{200};
    int nodes{64};
    std::string out_path{"-"};
    double tolerance{1e-9};
    std::vector<double> z_values{0.001, 1.0, 2.0, 4.0};
    int theta_steps{181};
    int directions{5};
};

//! Internuclear distance used for C2 by `figures` and `validate` when none
//! is given on the command line (1.2425 angstrom, an external literature
//! value; it is not part of the model).
inline constexpr double default_c2_R = 2.348;

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation_failed = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numerical = 3;

//! Parse argv (without the program name) and run; returns the exit code
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

int run(int argc, char const* const* argv);

}  // namespace zrp::cli
