#include "zrp/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <functional>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "zrp/angular_basis.hpp"
#include "zrp/csv.hpp"
#include "zrp/errors.hpp"
#include "zrp/model.hpp"
#include "zrp/numerics.hpp"
#include "zrp/parallel.hpp"
#include "zrp/phase_solver.hpp"
#include "zrp/scattering.hpp"
#include "zrp/validation.hpp"

namespace zrp::cli
{
namespace
{
using Row = std::vector<double>;

//! Output stream that is either a file or the caller's stream
class Sink
{
  public:
    Sink(std::string const& path, std::ostream& fallback)
        : stream_(&fallback)
    {
        if (path != "-")
        {
            file_.open(path);
            if (!file_)
                throw DomainError("cannot open output file '" + path + "'");
            stream_ = &file_;
        }
    }

    std::ostream& get() { return *stream_; }

  private:
    std::ofstream file_;
    std::ostream* stream_;
};

void validate_config(RunConfig const& cfg)
{
    if (!(cfg.k_min > 0) || !(cfg.k_min <= cfg.k_max))
        throw DomainError("need 0 < k-min <= k-max");
    if (cfg.k_steps < 1)
        throw DomainError("k-steps must be >= 1");
    if (!(cfg.tolerance > 0))
        throw DomainError("tolerance must be positive");
    if (cfg.nodes < 16 || cfg.nodes > max_quadrature_nodes)
        throw DomainError("nodes must be in [16, 4096]");
    if (cfg.theta_steps < 2)
        throw DomainError("theta-steps must be >= 2");
    if (cfg.directions < 2)
        throw DomainError("dirs must be >= 2");
    for (double z : cfg.z_values)
    {
        if (!(z > 0))
            throw DomainError("z values must be positive");
    }
}

/*!
 * Evaluate one row per k in parallel, attaching the operation, target and
 * momentum to any numerical error.
 */
template<class F>
std::vector<Row> grid_rows(char const* op,
                           std::string const& target,
                           std::vector<double> const& ks,
                           F&& row)
{
    return parallel_map<Row>(ks.size(), [&](std::size_t i) {
        try
        {
            return row(ks[i]);
        }
        catch (DomainError const&)
        {
            throw;
        }
        catch (Error const& e)
        {
            throw NumericalError(std::string(op) + " failed for target "
                                 + target + " at k = " + format_real(ks[i])
                                 + ": " + e.what());
        }
    });
}

void write_rows(std::ostream& os, std::vector<Row> const& rows)
{
    for (auto const& r : rows)
        write_csv_row(os, r);
}

std::string z_label(double z)
{
    std::ostringstream os;
    os << z;
    return os.str();
}

//---------------------------------------------------------------------------//
void run_phases(RunConfig const& cfg, std::ostream& os)
{
    auto const target = preset(cfg.target_source, cfg.R);
    auto const ks = linear_grid(cfg.k_min, cfg.k_max, cfg.k_steps);
    auto const rows = grid_rows("phases", target.name, ks, [&](double k) {
        auto const p = solve_phases(target, k);
        return Row{k,
                   k * target.R,
                   p.eta0,
                   p.eta1,
                   p.cot_eta0,
                   p.cot_eta1,
                   p.residual0,
                   p.residual1};
    });
    write_csv_header(os,
                     {"k", "z", "eta0", "eta1", "cot_eta0", "cot_eta1",
                      "residual0", "residual1"});
    write_rows(os, rows);
}

void run_xsec(RunConfig const& cfg, std::ostream& os)
{
    auto const target = preset(cfg.target_source, cfg.R);
    auto const ks = linear_grid(cfg.k_min, cfg.k_max, cfg.k_steps);
    auto const rows = grid_rows("xsec", target.name, ks, [&](double k) {
        auto const s = sigma_bar(target, k);
        double const oracle = oracle_sigma_bar(target, k, cfg.nodes);
        return Row{k,
                   s.sigma0,
                   s.sigma1,
                   s.sigma_total,
                   oracle,
                   std::abs(s.sigma_total - oracle)};
    });
    write_csv_header(os,
                     {"k", "sigma0", "sigma1", "sigma_total", "oracle_sigma",
                      "abs_diff"});
    write_rows(os, rows);
}

std::vector<double> theta_grid(int steps)
{
    return linear_grid(0.0, 180.0, steps);
}

double cos_deg(double degrees)
{
    return std::cos(degrees * std::numbers::pi / 180);
}

void run_angular(RunConfig const& cfg, std::ostream& os)
{
    write_csv_header(os, {"z", "theta_deg", "Z0", "Z1", "Y00", "Y10"});
    for (double z : cfg.z_values)
    {
        // Z depends on k and R only through z = kR
        auto const basis = make_angular_basis(z, 1.0);
        for (double theta : theta_grid(cfg.theta_steps))
        {
            double const u = cos_deg(theta);
            write_csv_row(os,
                          {z,
                           theta,
                           eval_Z(0, basis, u),
                           eval_Z(1, basis, u),
                           limit_Y(0, u),
                           limit_Y(1, u)});
        }
    }
}

void run_amplitude(RunConfig const& cfg, std::ostream& os)
{
    auto const target = preset(cfg.target_source, cfg.R);
    auto const ks = linear_grid(cfg.k_min, cfg.k_max, cfg.k_steps);
    auto const cosines = linear_grid(-1.0, 1.0, cfg.directions);
    auto const blocks = grid_rows("amplitude", target.name, ks, [&](double k) {
        Row block;
        for (double u : cosines)
        {
            Direction const in{u, 0.0};
            auto const sol = oracle_solve(target, k, in);
            for (double v : cosines)
            {
                Direction const out{v, 0.0};
                auto const f = oracle_amplitude(sol, out).value;
                auto const e = partial_amplitude_exact(target, k, in, out).value;
                auto const p = partial_amplitude_paper(target, k, in, out).value;
                block.insert(block.end(),
                             {k, u, v, f.real(), f.imag(), e.real(), e.imag(),
                              p.real(), p.imag()});
            }
        }
        return block;
    });
    write_csv_header(os,
                     {"k", "cos_in", "cos_out", "re_oracle", "im_oracle",
                      "re_exact", "im_exact", "re_fixed", "im_fixed"});
    constexpr std::size_t width = 9;
    for (auto const& block : blocks)
    {
        for (std::size_t i = 0; i < block.size(); i += width)
            write_csv_row(os, Row(block.begin() + i, block.begin() + i + width));
    }
}

//---------------------------------------------------------------------------//
void write_file(std::filesystem::path const& path,
                std::function<void(std::ostream&)> const& body)
{
    std::ofstream file(path);
    if (!file)
        throw DomainError("cannot open output file '" + path.string() + "'");
    body(file);
}

void run_figures(RunConfig const& cfg, std::ostream& os)
{
    std::filesystem::path const dir = (cfg.out_path == "-") ? "." : cfg.out_path;
    std::filesystem::create_directories(dir);

    auto const ch = preset("CH");
    auto const c2 = preset("C2", cfg.R.value_or(default_c2_R));
    auto const ks = linear_grid(cfg.k_min, cfg.k_max, cfg.k_steps);

    auto const rows = grid_rows("figures", "CH/C2", ks, [&](double k) {
        auto const a = sigma_bar(ch, k);
        auto const b = sigma_bar(c2, k);
        auto const closed = solve_phases_identical(c2.center1, c2.R, k);
        double const ceiling = 4 * std::numbers::pi / (k * k);
        return Row{k,
                   a.sigma0,
                   a.sigma1,
                   a.sigma_total,
                   b.sigma0,
                   b.sigma1,
                   b.sigma_total,
                   ceiling * std::pow(std::sin(closed.eta0), 2),
                   ceiling * std::pow(std::sin(closed.eta1), 2)};
    });
    write_file(dir / "figure1.csv", [&](std::ostream& f) {
        write_csv_header(f,
                         {"k", "CH_sigma0", "CH_sigma1", "CH_sigma_total",
                          "C2_sigma0", "C2_sigma1", "C2_sigma_total",
                          "C2_closed_sigma0", "C2_closed_sigma1"});
        write_rows(f, rows);
    });

    for (int lam = 0; lam < 2; ++lam)
    {
        auto const name = "figure" + std::to_string(lam + 2) + ".csv";
        write_file(dir / name, [&](std::ostream& f) {
            std::vector<std::string> header{"theta_deg"};
            for (double z : cfg.z_values)
                header.push_back("Z" + std::to_string(lam) + "_z" + z_label(z));
            header.push_back(lam == 0 ? "Y00" : "Y10");
            write_csv_header(f, header);
            for (double theta : theta_grid(cfg.theta_steps))
            {
                double const u = cos_deg(theta);
                Row row{theta};
                for (double z : cfg.z_values)
                    row.push_back(eval_Z(lam, make_angular_basis(z, 1.0), u));
                row.push_back(limit_Y(lam, u));
                write_csv_row(f, row);
            }
        });
    }
    os << "wrote " << (dir / "figure1.csv").string() << ", "
       << (dir / "figure2.csv").string() << ", "
       << (dir / "figure3.csv").string() << " (C2 R = "
       << format_real(c2.R) << " bohr)\n";
}

int run_validate(RunConfig const& cfg, std::ostream& os)
{
    ValidationConfig vc;
    vc.tolerance = cfg.tolerance;
    vc.c2_R = cfg.R.value_or(default_c2_R);
    vc.nodes = cfg.nodes;
    auto const results = run_validation(vc);
    write_validation_table(os, results);
    return all_passed(results) ? exit_ok : exit_validation_failed;
}

//---------------------------------------------------------------------------//
void add_target_options(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--target", cfg.target_source,
                    "Preset name (CH, C2) or target JSON path")
        ->capture_default_str();
    sub->add_option("--R", cfg.R, "Internuclear distance [bohr]");
}

void add_grid_options(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--k-min", cfg.k_min, "Smallest momentum [1/bohr]")
        ->capture_default_str();
    sub->add_option("--k-max", cfg.k_max, "Largest momentum [1/bohr]")
        ->capture_default_str();
    sub->add_option("--k-steps", cfg.k_steps, "Number of k points")
        ->capture_default_str();
}

void add_out_option(CLI::App* sub, RunConfig& cfg, char const* help)
{
    sub->add_option("--out", cfg.out_path, help)->capture_default_str();
}

}  // namespace

//---------------------------------------------------------------------------//
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Two-center zero-range potential scattering", "zrp"};
    app.require_subcommand(1);

    auto* phases = app.add_subcommand("phases", "Eigenphases over a k-grid");
    add_target_options(phases, cfg);
    add_grid_options(phases, cfg);
    add_out_option(phases, cfg, "Output CSV path ('-' for stdout)");

    auto* xsec = app.add_subcommand(
        "xsec", "Averaged cross sections with the optical-theorem check");
    add_target_options(xsec, cfg);
    add_grid_options(xsec, cfg);
    xsec->add_option("--nodes", cfg.nodes, "Gauss-Legendre nodes")
        ->capture_default_str();
    add_out_option(xsec, cfg, "Output CSV path ('-' for stdout)");

    auto* angular = app.add_subcommand("angular", "Angular functions Z0, Z1");
    angular->add_option("--z", cfg.z_values, "Values of z = kR")
        ->capture_default_str();
    angular->add_option("--theta-steps", cfg.theta_steps, "Angles in [0, 180]")
        ->capture_default_str();
    add_out_option(angular, cfg, "Output CSV path ('-' for stdout)");

    auto* amplitude = app.add_subcommand(
        "amplitude", "Oracle, exact and fixed-basis amplitudes");
    add_target_options(amplitude, cfg);
    add_grid_options(amplitude, cfg);
    amplitude->add_option("--dirs", cfg.directions, "Polar cosines per axis")
        ->capture_default_str();
    add_out_option(amplitude, cfg, "Output CSV path ('-' for stdout)");

    auto* figures
        = app.add_subcommand("figures", "Write figure1.csv .. figure3.csv");
    figures->add_option("--R", cfg.R, "C2 internuclear distance [bohr]");
    add_grid_options(figures, cfg);
    figures->add_option("--z", cfg.z_values, "Values of z = kR")
        ->capture_default_str();
    figures->add_option("--theta-steps", cfg.theta_steps, "Angles in [0, 180]")
        ->capture_default_str();
    add_out_option(figures, cfg, "Output directory");

    auto* validate = app.add_subcommand("validate", "Run the invariant suite");
    validate->add_option("--tol", cfg.tolerance,
                         "Tolerance of the oracle cross-validation checks")
        ->capture_default_str();
    validate->add_option("--R", cfg.R, "C2 internuclear distance [bohr]");
    validate->add_option("--nodes", cfg.nodes, "Gauss-Legendre nodes")
        ->capture_default_str();
    add_out_option(validate, cfg, "Output CSV path ('-' for stdout)");

    // Figure 1 spans k in [0.01, 2] on 400 points unless overridden
    figures->preparse_callback([&](std::size_t) { cfg.k_steps = 400; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (CLI::CallForHelp const&)
    {
        out << app.help();
        return exit_ok;
    }
    catch (CLI::ParseError const& e)
    {
        err << "zrp: " << e.what() << "\n" << app.help();
        return exit_usage;
    }

    try
    {
        validate_config(cfg);
        if (phases->parsed())
        {
            Sink sink(cfg.out_path, out);
            run_phases(cfg, sink.get());
        }
        else if (xsec->parsed())
        {
            Sink sink(cfg.out_path, out);
            run_xsec(cfg, sink.get());
        }
        else if (angular->parsed())
        {
            Sink sink(cfg.out_path, out);
            run_angular(cfg, sink.get());
        }
        else if (amplitude->parsed())
        {
            Sink sink(cfg.out_path, out);
            run_amplitude(cfg, sink.get());
        }
        else if (figures->parsed())
        {
            run_figures(cfg, out);
        }
        else if (validate->parsed())
        {
            Sink sink(cfg.out_path, out);
            return run_validate(cfg, sink.get());
        }
    }
    catch (DomainError const& e)
    {
        err << "zrp: " << e.what() << "\n";
        return exit_usage;
    }
    catch (Error const& e)
    {
        err << "zrp: numerical error: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_ok;
}

int run(int argc, char const* const* argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace zrp::cli
