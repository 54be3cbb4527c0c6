#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef _WIN32
#include <sys/wait.h>
#endif

#include "fracstrip/domain.hpp"
#include "json.hpp"

namespace fs = fracstrip;
namespace stdfs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

const std::string& cli_path() {
    static const std::string path = FRACSTRIP_CLI_PATH;
    return path;
}

const stdfs::path& work_dir() {
    static const stdfs::path dir = [] {
        stdfs::path d = stdfs::temp_directory_path() / "fracstrip_cli_tests";
        stdfs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const stdfs::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int decode_status(int status) {
#ifdef _WIN32
    return status;
#else
    if (status == -1) return -1;
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    return -1;
#endif
}

RunResult run_cli(const std::string& args, const std::string& tag) {
    const stdfs::path out = work_dir() / (tag + ".out");
    const stdfs::path err = work_dir() / (tag + ".err");
    std::ostringstream cmd;
    cmd << '"' << cli_path() << '"';
    if (!args.empty()) cmd << ' ' << args;
    cmd << " > \"" << out.string() << "\" 2> \"" << err.string() << '"';
    RunResult r;
    r.exit_code = decode_status(std::system(cmd.str().c_str()));
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

json parse_out(const RunResult& r) {
    INFO("stdout: " << r.out);
    INFO("stderr: " << r.err);
    return json::parse(r.out);
}

}  // namespace

TEST_CASE("catalog subcommand lists every entry") {
    const RunResult r = run_cli("catalog", "catalog");
    REQUIRE(r.exit_code == 0);
    const json j = parse_out(r);
    REQUIRE(j.at("command") == "catalog");

    const auto& boundary = j.at("boundary");
    REQUIRE(boundary.size() == 8);
    std::vector<std::string> names;
    for (const auto& e : boundary) names.push_back(e.at("name").get<std::string>());
    for (const char* want : {"constant", "affine", "gaussian", "bump", "heaviside",
                             "powerlaw_clamp", "sine_packet", "bump2"}) {
        CAPTURE(want);
        REQUIRE(std::count(names.begin(), names.end(), want) == 1);
    }

    const auto& bulk = j.at("bulk");
    REQUIRE(bulk.size() == 6);
    std::vector<std::string> bulk_names = bulk.get<std::vector<std::string>>();
    REQUIRE(std::count(bulk_names.begin(), bulk_names.end(), "vertical") == 1);
    REQUIRE(std::count(bulk_names.begin(), bulk_names.end(), "tilted") == 1);
}

TEST_CASE("usage errors exit with code 64") {
    REQUIRE(run_cli("", "usage_none").exit_code == 64);
    REQUIRE(run_cli("verify nope", "usage_suite").exit_code == 64);
    const RunResult no_b = run_cli("extend --fn-minus gaussian", "usage_no_b");
    REQUIRE(no_b.exit_code == 64);
    REQUIRE(no_b.err.find("--b") != std::string::npos);
    REQUIRE(run_cli("seminorm --kind bogus --fn constant", "usage_kind").exit_code == 64);
    REQUIRE(run_cli("seminorm --kind close --fn heaviside", "usage_screen").exit_code == 64);
}

TEST_CASE("constant boundary data reports a zero seminorm") {
    const RunResult r = run_cli("seminorm --kind gagliardo --fn constant --s 0.75", "zero");
    REQUIRE(r.exit_code == 0);
    const json j = parse_out(r);
    REQUIRE(j.at("command") == "seminorm");
    REQUIRE(j.at("config").at("fn") == "constant");
    REQUIRE(j.at("result").at("value_p").get<double>() == 0.0);
    REQUIRE(j.at("result").at("converged").get<bool>());
}

TEST_CASE("close-screened jump matches the closed form, byte-stable across runs") {
    const std::string args =
        "seminorm --kind close --fn heaviside --s 0.75 --screen 1 "
        "--lo -2 --hi 2 --outer-cells 192 --rel-tol 0.5";
    const RunResult r1 = run_cli(args, "close_run1");
    const RunResult r2 = run_cli(args, "close_run2");
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    REQUIRE(r1.out == r2.out);  // deterministic output, byte for byte

    const json j = parse_out(r1);
    REQUIRE(j.at("result").at("kind") == "close_screened");
    const double value = j.at("result").at("value_p").get<double>();
    REQUIRE(value == Catch::Approx(4.0).epsilon(0.02));
}

TEST_CASE("gagliardo of the affine function over the unit interval") {
    const RunResult r = run_cli(
        "seminorm --kind gagliardo --fn affine --s 0.5 --lo 0 --hi 1 --outer-cells 128",
        "affine");
    REQUIRE(r.exit_code == 0);
    const json j = parse_out(r);
    const double value = j.at("result").at("value_p").get<double>();
    REQUIRE(value == Catch::Approx(1.0).epsilon(0.01));
}

TEST_CASE("slice, difference-trace, and weighted-lp kinds evaluate exactly") {
    const RunResult sv = run_cli(
        "seminorm --kind slice-vertical --bulk vertical --b 1 --s 0.5 --lo -2 --hi 2",
        "slice_vertical");
    REQUIRE(sv.exit_code == 0);
    REQUIRE(parse_out(sv).at("result").at("value_p").get<double>() ==
            Catch::Approx(4.0).epsilon(0.01));

    const RunResult dt = run_cli(
        "seminorm --kind difference-trace --fn-plus constant --fn-minus constant:0 "
        "--b 1 --s 0.75 --lo -2 --hi 2",
        "difference_trace");
    REQUIRE(dt.exit_code == 0);
    REQUIRE(parse_out(dt).at("result").at("value_p").get<double>() ==
            Catch::Approx(4.0).epsilon(1e-9));

    const RunResult wl = run_cli(
        "seminorm --kind weighted-lp --fn constant --screen 2 --r 1 --lo -2 --hi 2",
        "weighted_lp");
    REQUIRE(wl.exit_code == 0);
    REQUIRE(parse_out(wl).at("result").at("value_p").get<double>() ==
            Catch::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("grid CSV boundary data flows through the seminorm command") {
    fs::GridFunction g = fs::GridFunction::sample(
        1, {65, 1, 1}, {-4.0, 0.0, 0.0}, {0.125, 1.0, 1.0},
        [](const fs::Vec&) { return 1.0; });
    const stdfs::path csv = work_dir() / "constant_grid.csv";
    g.write_csv_file(csv.string());

    const RunResult r = run_cli(
        "seminorm --kind gagliardo --grid \"" + csv.string() + "\" --s 0.75 --lo -4 --hi 4",
        "grid");
    REQUIRE(r.exit_code == 0);
    const json j = parse_out(r);
    REQUIRE(j.at("config").at("grid") == csv.string());
    REQUIRE(j.at("result").at("value_p").get<double>() == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("flat one-sided extend reports trace decay and writes the grid artifact") {
    const stdfs::path out_dir = work_dir() / "extend_artifacts";
    const RunResult r = run_cli(
        "extend --fn-minus gaussian --s 0.75 --b 1 --delta 0.02 --lo -4 --hi 4 "
        "--nx 33 --nz 17 --out \"" + out_dir.string() + "\"",
        "extend_flat");
    REQUIRE(r.exit_code == 0);
    const json j = parse_out(r);
    REQUIRE(j.at("result").at("variant") == "flat one-sided");
    const double order = j.at("result").at("trace_bottom").at("order").get<double>();
    REQUIRE(order > 1.0);
    REQUIRE(order < 3.0);

    const std::string csv = j.at("result").at("grid_csv").get<std::string>();
    REQUIRE(stdfs::exists(csv));
    const fs::GridFunction grid = fs::GridFunction::read_csv_file(csv);
    REQUIRE(grid.dim == 2);
    REQUIRE(grid.dims[0] == 33);
    REQUIRE(grid.dims[1] == 17);
}

TEST_CASE("two-sided and graph-domain extends hit both boundary data sets") {
    const RunResult two = run_cli(
        "extend --fn-minus bump --fn-plus gaussian --s 0.75 --b 1 --delta 0.02 --lo -4 --hi 4",
        "extend_two");
    REQUIRE(two.exit_code == 0);
    const json jt = parse_out(two);
    REQUIRE(jt.at("result").at("variant") == "flat two-sided");
    // the top trace of the two-sided construction carries a sharp first-order
    // term, so the observed rate at finite delta may dip slightly below one
    REQUIRE(jt.at("result").at("trace_bottom").at("order").get<double>() > 0.9);
    REQUIRE(jt.at("result").at("trace_top").at("order").get<double>() > 0.9);

    const RunResult gen = run_cli(
        "extend --fn-minus gaussian --s 0.75 --eta-base 1 --eta-amp 0.2 --eta-freq 0.25 "
        "--delta 0.02 --lo -4 --hi 4",
        "extend_general");
    REQUIRE(gen.exit_code == 0);
    const json jg = parse_out(gen);
    REQUIRE(jg.at("result").at("variant") == "general");
    REQUIRE(jg.at("result").at("trace_bottom").at("order").get<double>() > 0.9);
}

TEST_CASE("rates finds the unscreened truncation growth exponent") {
    const RunResult r = run_cli(
        "rates --fn heaviside --form unscreened --radii 4,8,16,32 --s 0.75", "rates");
    REQUIRE(r.exit_code == 0);
    const json j = parse_out(r);
    REQUIRE(j.at("result").at("divergent").get<bool>());
    REQUIRE(j.at("result").at("slope").get<double>() == Catch::Approx(0.5).margin(0.05));
    const auto values = j.at("result").at("values").get<std::vector<double>>();
    REQUIRE(values.size() == 4);
    REQUIRE(std::is_sorted(values.begin(), values.end()));
}

TEST_CASE("spectral command reproduces the fourier-side value") {
    const RunResult r = run_cli("spectral --fn gaussian --s 0.75", "spectral");
    REQUIRE(r.exit_code == 0);
    const json j = parse_out(r);
    const double fourier = j.at("result").at("fourier_value").get<double>();
    REQUIRE(fourier == Catch::Approx(0.077556000997).epsilon(0.02));
    REQUIRE_FALSE(j.at("result").at("window_warning").get<bool>());
    const double ratio = j.at("result").at("ratio").get<double>();
    REQUIRE(ratio > 0.0);
    REQUIRE(std::isfinite(ratio));
}

TEST_CASE("verify containment reports five passing verdicts") {
    const RunResult r = run_cli("verify containment", "verify_containment");
    REQUIRE(r.exit_code == 0);
    const json j = parse_out(r);
    REQUIRE(j.at("command") == "verify");
    REQUIRE(j.at("checks").size() == 5);
    REQUIRE(j.at("all_pass").get<bool>());
    for (const auto& row : j.at("checks")) {
        CAPTURE(row.dump());
        REQUIRE(row.at("pass").get<bool>());
    }
}

TEST_CASE("config file supplies subcommand options") {
    const stdfs::path cfg = work_dir() / "seminorm.ini";
    {
        std::ofstream out(cfg);
        out << "[seminorm]\n"
            << "kind=gagliardo\n"
            << "fn=constant\n"
            << "s=0.75\n";
    }
    const RunResult r = run_cli("--config \"" + cfg.string() + "\" seminorm", "config_file");
    REQUIRE(r.exit_code == 0);
    const json j = parse_out(r);
    REQUIRE(j.at("config").at("fn") == "constant");
    REQUIRE(j.at("config").at("s").get<double>() == Catch::Approx(0.75));
    REQUIRE(j.at("result").at("value_p").get<double>() == 0.0);
}

TEST_CASE("unconverged refinement surfaces as exit code 2") {
    const RunResult r = run_cli(
        "seminorm --kind gagliardo --fn affine --s 0.75 --lo 0 --hi 1 "
        "--rel-tol 1e-14 --levels 2",
        "warn");
    const json j = parse_out(r);
    const bool converged = j.at("result").at("converged").get<bool>();
    REQUIRE((r.exit_code == 0 || r.exit_code == 2));
    REQUIRE(r.exit_code == (converged ? 0 : 2));
}
