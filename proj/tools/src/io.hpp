// File emission and ingestion for the command-line tool: CSV tables
// (comma-separated, one header row, LF line endings, full double precision),
// JSON reports and static SVG plots. Everything written here is a pure
// function of its inputs — no timestamps, no environment — so identical runs
// produce byte-identical files.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nlfront/simulator.hpp"

namespace nlfront::cli {

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<const std::vector<double>*>& columns);

void write_trajectory_csv(const std::string& path, const sim::Trajectory& traj);
void write_snapshot_csv(const std::string& path, const sim::Snapshot& snap);
void write_state_csv(const std::string& path, const sim::FieldState& state);

struct TrajectoryData {
    std::vector<double> t, g, h;
    std::vector<double> u_center, v_center;  // empty when the CSV lacks them
};

// Parses a trajectory CSV; malformed input is rejected with the offending
// line number in the message.
TrajectoryData read_trajectory_csv(const std::string& path);

// Reads a whole file (for content hashing); throws ValidationError if absent.
std::string slurp(const std::string& path);

void write_report(const std::string& path, const nlohmann::json& report);

// JSON has no representation for non-finite numbers; reports store them as
// null rather than silently dropping the key.
nlohmann::json json_number(double value);

struct Curve {
    std::string label;
    std::vector<double> x, y;
};

// Static line plot with axes, tick labels and a legend.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<Curve>& curves);

}  // namespace nlfront::cli
