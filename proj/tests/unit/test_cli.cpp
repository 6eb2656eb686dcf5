// Command-line layer: configuration parsing with exhaustive error reporting,
// content hashing, CSV/JSON/SVG emission, and the simulate/rates/plot
// subcommands run end to end against a miniature problem. File-format checks
// read the bytes back rather than trusting the writer's intent: the CSV
// contract (comma-separated, one header row, LF endings, round-trippable
// doubles) is what downstream tooling depends on.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"
#include "io.hpp"
#include "json.hpp"
#include "nlfront/errors.hpp"

using nlohmann::json;
using namespace nlfront;
using namespace nlfront::cli;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test case; recreated so reruns start clean.
fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "nlfront_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void spit(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
}

bool is_hex16(const std::string& s) {
    if (s.size() != 16) return false;
    for (char c : s)
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    return true;
}

json tiny_run_config() {
    json j;
    j["model"] = {{"h0", 1.0}};
    j["kernels"] = {{"J1", {{"family", "triangle"}, {"a", 1.0}}},
                    {"K", {{"family", "triangle"}, {"a", 1.0}}},
                    {"J2", {{"family", "triangle"}, {"a", 1.0}}}};
    j["sim"] = {{"dx", 0.25}, {"dt", 0.02}, {"T", 2.0}};
    j["output"] = {{"prefix", "t"}};
    return j;
}

}  // namespace

TEST_CASE("minimal config: a kernels block alone yields the documented defaults") {
    const RunConfig cfg = config_from_json(json{{"kernels", json::object()}});

    CHECK(cfg.params.d1 == 1.0);
    CHECK(cfg.params.d2 == 1.0);
    CHECK(cfg.params.a11 == 1.0);
    CHECK(cfg.params.a12 == 1.0);
    CHECK(cfg.params.a22 == 1.0);
    CHECK(cfg.params.mu == 1.0);
    CHECK(cfg.params.rho_flux == 1.0);
    CHECK(cfg.params.h0 == 1.0);

    CHECK(cfg.G.family() == model::GFamily::monod);
    CHECK(cfg.G.prime0() == doctest::Approx(2.0));  // R0 = 2 out of the box

    // Unspecified kernels fall back to the power law with exponent 2.
    REQUIRE(cfg.J1.has_value());
    REQUIRE(cfg.K.has_value());
    REQUIRE(cfg.J2.has_value());
    CHECK_FALSE(cfg.J1->compact_support());
    CHECK(cfg.J1->operator()(0.0) == doctest::Approx(1.0 / M_PI));

    CHECK(cfg.sim.dx == 0.25);
    CHECK(cfg.sim.dt == 0.02);
    CHECK(cfg.sim.T == 2000.0);
    CHECK_FALSE(cfg.sim.stop_on_spread);

    CHECK(cfg.out_dir == "out");
    CHECK(cfg.prefix == "run");
    CHECK(cfg.snapshot_every == 0);
    CHECK(is_hex16(cfg.hash));
}

TEST_CASE("config hash: canonical, deterministic and content-sensitive") {
    // nlohmann::json objects iterate in sorted key order, so two documents
    // with the same content hash identically regardless of insertion order.
    json a;
    a["kernels"] = json::object();
    a["model"] = {{"d1", 2.0}};
    json b;
    b["model"] = {{"d1", 2.0}};
    b["kernels"] = json::object();
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a) == bytes_hash(a.dump()));
    CHECK(is_hex16(config_hash(a)));

    json c = a;
    c["model"]["d1"] = 3.0;
    CHECK(config_hash(c) != config_hash(a));

    // The loaded config carries the same hash the report stamping uses.
    const RunConfig cfg = config_from_json(a);
    CHECK(cfg.hash == config_hash(a));
}

TEST_CASE("config validation reports every violation with its key path") {
    json j;
    j["kernels"] = {{"J1", {{"family", "power_law"}, {"alpha", 0.5}}}};
    j["sim"] = {{"dt", 0.9}};            // violates dt*(d1 + a11) < 1
    j["G"] = {{"family", "logistic"}};   // not a known response family

    try {
        config_from_json(j);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.issues().size() >= 3);
        std::string all;
        for (const auto& issue : e.issues()) all += issue + "\n";
        CHECK(all.find("kernels.J1") != std::string::npos);
        CHECK(all.find("sim.dt") != std::string::npos);
        CHECK(all.find("G.family") != std::string::npos);
    }
}

TEST_CASE("missing kernels block is the one hard requirement") {
    CHECK_THROWS_AS(config_from_json(json::object()), ValidationError);
    try {
        config_from_json(json::object());
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("kernels") != std::string::npos);
    }
}

TEST_CASE("load_config rejects missing files and broken JSON with context") {
    const fs::path dir = scratch("load_config");
    CHECK_THROWS_AS(load_config((dir / "absent.json").string()), ValidationError);

    const fs::path bad = dir / "bad.json";
    spit(bad, "{ \"kernels\": ");
    try {
        load_config(bad.string());
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find(bad.string()) != std::string::npos);
    }
}

TEST_CASE("CSV writer round-trips doubles exactly and keeps the format contract") {
    const fs::path dir = scratch("csv_roundtrip");
    const fs::path path = dir / "traj.csv";

    sim::Trajectory traj;
    traj.times = {0.0, 0.1 + 0.2, std::sqrt(2.0), 1.0 / 3.0};
    traj.g_series = {-1.0, -1.25, -M_PI, -7.0e-3};
    traj.h_series = {1.0, 1.25, M_PI, 7.0e-3};
    traj.u_center = {0.5, 0.25, 1e-300, 0.125};
    traj.v_center = {0.5, 0.75, 2e-17, 0.375};
    write_trajectory_csv(path.string(), traj);

    const TrajectoryData td = read_trajectory_csv(path.string());
    REQUIRE(td.t.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        // %.17g guarantees bit-exact recovery through strtod.
        CHECK(td.t[i] == traj.times[i]);
        CHECK(td.g[i] == traj.g_series[i]);
        CHECK(td.h[i] == traj.h_series[i]);
        CHECK(td.u_center[i] == traj.u_center[i]);
        CHECK(td.v_center[i] == traj.v_center[i]);
    }

    const std::string bytes = slurp(path.string());
    CHECK(bytes.find('\r') == std::string::npos);            // LF only
    CHECK(bytes.substr(0, bytes.find('\n')) == "t,g,h,u_center,v_center");
    CHECK(bytes.back() == '\n');
}

TEST_CASE("malformed CSV rows are rejected with the offending line number") {
    const fs::path dir = scratch("csv_malformed");

    const fs::path ragged = dir / "ragged.csv";
    spit(ragged, "t,h\n0,1\n0.5\n1,2\n");  // line 3 has too few fields
    try {
        read_trajectory_csv(ragged.string());
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }

    const fs::path garbage = dir / "garbage.csv";
    spit(garbage, "t,h\n0,1\n1,abc\n");
    try {
        read_trajectory_csv(garbage.string());
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }

    const fs::path headerless = dir / "empty.csv";
    spit(headerless, "");
    CHECK_THROWS_AS(read_trajectory_csv(headerless.string()), ValidationError);

    const fs::path no_h = dir / "no_h.csv";
    spit(no_h, "t,foo\n0,1\n");
    CHECK_THROWS_AS(read_trajectory_csv(no_h.string()), ValidationError);
}

TEST_CASE("json_number maps non-finite values to null instead of invalid JSON") {
    CHECK(json_number(1.5) == json(1.5));
    CHECK(json_number(0.0) == json(0.0));
    CHECK(json_number(std::numeric_limits<double>::infinity()).is_null());
    CHECK(json_number(-std::numeric_limits<double>::infinity()).is_null());
    CHECK(json_number(std::nan("")).is_null());

    // The composed report must serialize without throwing.
    json rep;
    rep["finite"] = json_number(2.0);
    rep["infinite"] = json_number(std::numeric_limits<double>::infinity());
    CHECK_NOTHROW((void)rep.dump());
}

TEST_CASE("SVG plots contain the document skeleton and one polyline per curve") {
    const fs::path dir = scratch("svg");
    const fs::path path = dir / "plot.svg";

    std::vector<Curve> curves;
    curves.push_back({"h(t)", {0, 1, 2, 3}, {1, 2, 4, 8}});
    curves.push_back({"-g(t)", {0, 1, 2, 3}, {1, 2, 4, 8}});
    write_svg_plot(path.string(), "front position", "t", "front", curves);

    const std::string bytes = slurp(path.string());
    CHECK(bytes.find("<svg") != std::string::npos);
    CHECK(bytes.find("</svg>") != std::string::npos);
    CHECK(bytes.find("front position") != std::string::npos);

    std::size_t polylines = 0;
    for (std::size_t at = bytes.find("<polyline"); at != std::string::npos;
         at = bytes.find("<polyline", at + 1))
        ++polylines;
    CHECK(polylines >= 2);  // the two data curves (legend strokes may add more)

    CHECK_THROWS_AS(write_svg_plot((dir / "none.svg").string(), "x", "t", "y",
                                   {Curve{"empty", {}, {}}}),
                    ValidationError);
}

TEST_CASE("simulate subcommand: files, report fields and byte-identical reruns") {
    const fs::path dir = scratch("simulate");
    const fs::path cfg_path = dir / "run.json";
    spit(cfg_path, tiny_run_config().dump(2) + "\n");

    const fs::path out1 = dir / "a";
    const fs::path out2 = dir / "b";
    CHECK(cmd_simulate(cfg_path.string(), out1.string(), false) == 0);
    CHECK(cmd_simulate(cfg_path.string(), out2.string(), false) == 0);

    REQUIRE(fs::exists(out1 / "t_trajectory.csv"));
    REQUIRE(fs::exists(out1 / "t_final_state.csv"));
    REQUIRE(fs::exists(out1 / "t_report.json"));

    // Same configuration, same bytes: no timestamps, no hidden state.
    CHECK(slurp((out1 / "t_trajectory.csv").string()) ==
          slurp((out2 / "t_trajectory.csv").string()));
    CHECK(slurp((out1 / "t_final_state.csv").string()) ==
          slurp((out2 / "t_final_state.csv").string()));

    const json rep = json::parse(slurp((out1 / "t_report.json").string()));
    CHECK(rep.at("schema_version") == 1);
    CHECK(rep.at("command") == "simulate");
    CHECK(is_hex16(rep.at("config_hash").get<std::string>()));
    CHECK(rep.at("config_hash").get<std::string>() ==
          config_hash(json::parse(slurp(cfg_path.string()))));
    // Two time units on a unit interval decide nothing, and say so.
    CHECK(rep.at("verdict").at("kind") == "undecided");
    CHECK(rep.at("stop_reason") == "horizon");
    CHECK(rep.at("t_end").get<double>() == doctest::Approx(2.0));
    CHECK(rep.at("h_end").get<double>() > 1.0);
    CHECK(rep.at("R0").get<double>() == doctest::Approx(2.0));

    const TrajectoryData td = read_trajectory_csv((out1 / "t_trajectory.csv").string());
    CHECK(td.t.size() == 101);  // every step recorded: T/dt + initial row
    CHECK(td.t.front() == 0.0);
    CHECK(td.t.back() == doctest::Approx(2.0));
}

TEST_CASE("rates subcommand fits the trajectory it is pointed at") {
    const fs::path dir = scratch("rates");
    const fs::path cfg_path = dir / "run.json";
    spit(cfg_path, tiny_run_config().dump(2) + "\n");
    REQUIRE(cmd_simulate(cfg_path.string(), dir.string(), false) == 0);

    const fs::path csv = dir / "t_trajectory.csv";
    const fs::path report = dir / "rates.json";
    CHECK(cmd_rates(csv.string(), 1.0, 2.0, "auto", report.string()) == 0);

    const json rep = json::parse(slurp(report.string()));
    CHECK(rep.at("command") == "rates");
    CHECK(rep.at("data_hash").get<std::string>() == bytes_hash(slurp(csv.string())));
    CHECK(rep.contains("best_law"));
    CHECK(rep.at("fits").contains(rep.at("best_law").get<std::string>()));
    // t_lo = 1 < e rules the t*ln(t) law out of an automatic fit.
    CHECK_FALSE(rep.at("fits").contains("tlnt"));

    CHECK_THROWS_AS(cmd_rates(csv.string(), 1.0, 2.0, "cubic", report.string()),
                    ValidationError);
}

TEST_CASE("plot subcommand derives its output name from the CSV") {
    const fs::path dir = scratch("plot");
    const fs::path csv = dir / "traj.csv";

    sim::Trajectory traj;
    for (int i = 0; i <= 40; ++i) {
        const double t = 0.25 * i;
        traj.times.push_back(t);
        traj.g_series.push_back(-(1.0 + t));
        traj.h_series.push_back(1.0 + t);
        traj.u_center.push_back(0.5);
        traj.v_center.push_back(0.5);
    }
    write_trajectory_csv(csv.string(), traj);

    CHECK(cmd_plot(csv.string(), "none", "") == 0);
    REQUIRE(fs::exists(dir / "traj.svg"));
    CHECK(slurp((dir / "traj.svg").string()).find("<svg") != std::string::npos);

    const fs::path named = dir / "named.svg";
    CHECK(cmd_plot(csv.string(), "linear", named.string()) == 0);
    CHECK(slurp(named.string()).find("fit") != std::string::npos);

    CHECK_THROWS_AS(cmd_plot(csv.string(), "cubic", ""), ValidationError);
}
