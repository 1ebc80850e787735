#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "zrp/cli.hpp"
#include "zrp/model.hpp"
#include "zrp/parallel.hpp"
#include "zrp/phase_solver.hpp"

using namespace zrp;
namespace fs = std::filesystem;

namespace
{
struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> const& args)
{
    std::ostringstream out;
    std::ostringstream err;
    int const code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(std::string const& text)
{
    std::vector<std::string> result;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);)
        result.push_back(line);
    return result;
}

std::vector<double> fields(std::string const& line)
{
    std::vector<double> result;
    std::istringstream is(line);
    for (std::string cell; std::getline(is, cell, ',');)
        result.push_back(std::stod(cell));
    return result;
}

fs::path scratch(std::string const& name)
{
    auto const dir = fs::temp_directory_path() / ("zrp_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}
}  // namespace

TEST_CASE("phases")
{
    auto const r = run({"phases", "--k-min", "0.1", "--k-max", "1", "--k-steps", "10"});
    REQUIRE(r.code == 0);
    auto const ls = lines(r.out);
    REQUIRE(ls.size() == 11);
    CHECK(ls[0] == "k,z,eta0,eta1,cot_eta0,cot_eta1,residual0,residual1");
    auto const ch = preset("CH");
    for (std::size_t i = 1; i < ls.size(); ++i)
    {
        auto const f = fields(ls[i]);
        REQUIRE(f.size() == 8);
        auto const p = solve_phases(ch, f[0]);
        CHECK(f[1] == doctest::Approx(f[0] * ch.R));
        CHECK(f[2] == p.eta0);
        CHECK(f[3] == p.eta1);
    }
    CHECK(fields(ls[1])[0] == 0.1);
    CHECK(fields(ls.back())[0] == 1.0);
}

TEST_CASE("C2 needs an internuclear distance")
{
    auto const bad = run({"phases", "--target", "C2"});
    CHECK(bad.code == cli::exit_usage);
    CHECK(bad.err.find("R") != std::string::npos);
    auto const good = run({"phases", "--target", "C2", "--R", "2.348", "--k-steps", "3"});
    CHECK(good.code == 0);
    CHECK(lines(good.out).size() == 4);
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == cli::exit_usage);
    CHECK(run({"nonsense"}).code == cli::exit_usage);
    CHECK(run({"phases", "--k-min", "-1"}).code == cli::exit_usage);
    CHECK(run({"phases", "--k-min", "2", "--k-max", "1"}).code == cli::exit_usage);
    CHECK(run({"phases", "--k-steps", "abc"}).code == cli::exit_usage);
    CHECK(run({"xsec", "--nodes", "4"}).code == cli::exit_usage);
    CHECK(run({"phases", "--target", "/nonexistent/target.json"}).code == cli::exit_usage);
    auto const help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("validate") != std::string::npos);
}

TEST_CASE("numerical errors name the operation, target and momentum")
{
    // k exactly on the carbon pole, where k cot delta is singular
    auto const r = run({"xsec", "--k-min", "1.643092392044871", "--k-max",
                        "1.643092392044871", "--k-steps", "1"});
    CHECK(r.code == cli::exit_numerical);
    CHECK(r.err.find("xsec") != std::string::npos);
    CHECK(r.err.find("CH") != std::string::npos);
    CHECK(r.err.find("1.643092392044871") != std::string::npos);
}

TEST_CASE("xsec agrees with the optical-theorem average")
{
    auto const r = run({"xsec", "--target", "C2", "--R", "2.348", "--k-steps", "25"});
    REQUIRE(r.code == 0);
    auto const ls = lines(r.out);
    REQUIRE(ls.size() == 26);
    CHECK(ls[0] == "k,sigma0,sigma1,sigma_total,oracle_sigma,abs_diff");
    for (std::size_t i = 1; i < ls.size(); ++i)
    {
        auto const f = fields(ls[i]);
        CHECK(f[5] < 1e-8 * f[3]);
    }
}

TEST_CASE("angular and amplitude tables")
{
    auto const a = run({"angular", "--theta-steps", "19"});
    REQUIRE(a.code == 0);
    auto const al = lines(a.out);
    CHECK(al[0] == "z,theta_deg,Z0,Z1,Y00,Y10");
    CHECK(al.size() == 1 + 4 * 19);
    auto const custom = run({"angular", "--z", "0.5", "3", "--theta-steps", "5"});
    CHECK(lines(custom.out).size() == 1 + 2 * 5);

    auto const f = run({"amplitude", "--k-steps", "3", "--dirs", "3"});
    REQUIRE(f.code == 0);
    auto const fl = lines(f.out);
    CHECK(fl.size() == 1 + 3 * 3 * 3);
    for (std::size_t i = 1; i < fl.size(); ++i)
    {
        auto const v = fields(fl[i]);
        REQUIRE(v.size() == 9);
        CHECK(std::abs(v[3] - v[5]) < 1e-9 * std::max(1.0, std::abs(v[3])));
        CHECK(std::abs(v[4] - v[6]) < 1e-9 * std::max(1.0, std::abs(v[4])));
    }
}

TEST_CASE("output to file and custom target file")
{
    auto const dir = scratch("out");
    auto const target = dir / "ch.json";
    {
        std::ofstream os(target);
        os << serialize_target(preset("CH"));
    }
    auto const csv = dir / "phases.csv";
    auto const r = run({"phases", "--target", target.string(), "--k-steps", "4",
                        "--out", csv.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream is(csv);
    std::stringstream buf;
    buf << is.rdbuf();
    CHECK(lines(buf.str()).size() == 5);

    auto const ref = run({"phases", "--k-steps", "4"});
    CHECK(ref.out == buf.str());

    {
        std::ofstream os(target);
        os << "{\"R\": 2.0, ";
    }
    auto const broken = run({"phases", "--target", target.string()});
    CHECK(broken.code == cli::exit_usage);
    CHECK(broken.err.find("byte") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("figures")
{
    auto const dir = scratch("figures");
    auto const r = run({"figures", "--out", dir.string()});
    REQUIRE(r.code == 0);
    for (char const* name : {"figure1.csv", "figure2.csv", "figure3.csv"})
        CHECK(fs::exists(dir / name));
    std::ifstream is(dir / "figure1.csv");
    std::stringstream buf;
    buf << is.rdbuf();
    auto const ls = lines(buf.str());
    CHECK(ls.size() == 401);
    CHECK(ls[0]
          == "k,CH_sigma0,CH_sigma1,CH_sigma_total,C2_sigma0,C2_sigma1,"
             "C2_sigma_total,C2_closed_sigma0,C2_closed_sigma1");
    fs::remove_all(dir);
}

TEST_CASE("validate")
{
    auto const ok = run({"validate", "--tol", "1e-9"});
    CHECK(ok.code == 0);
    CHECK(lines(ok.out)[0] == "check,target,k,residual,tolerance,status");
    CHECK(ok.out.find(",FAIL") == std::string::npos);
    CHECK(ok.out.find("fixed_basis_divergence,CH") != std::string::npos);

    // an unattainable tolerance must make the oracle cross-checks fail
    auto const strict = run({"validate", "--tol", "1e-30"});
    CHECK(strict.code == cli::exit_validation_failed);
    CHECK(strict.out.find(",FAIL") != std::string::npos);
}

TEST_CASE("output does not depend on the thread count")
{
    std::vector<std::string> const args{"xsec", "--k-steps", "37"};
    ::setenv("ZRP_THREADS", "1", 1);
    auto const serial = run(args);
    ::setenv("ZRP_THREADS", "7", 1);
    auto const threaded = run(args);
    ::unsetenv("ZRP_THREADS");
    REQUIRE(serial.code == 0);
    CHECK(serial.out == threaded.out);
}

TEST_CASE("parallel map keeps order and reports the first failure")
{
    auto const squares = parallel_map<int>(1000, [](std::size_t i) { return int(i * i); });
    for (std::size_t i = 0; i < squares.size(); ++i)
        CHECK(squares[i] == int(i * i));
    try
    {
        parallel_map<int>(100, [](std::size_t i) -> int {
            if (i == 17 || i == 60)
                throw std::runtime_error(std::to_string(i));
            return 0;
        });
        FAIL("expected an exception");
    }
    catch (std::runtime_error const& e)
    {
        CHECK(std::string(e.what()) == "17");
    }
    CHECK(thread_count() >= 1);
}
