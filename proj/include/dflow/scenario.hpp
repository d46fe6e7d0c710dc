#pragma once

// Config-driven runs behind the command-line tool.
//
//   [grid]          s0, s1, h, start (node of the initial condition)
//   [curve]         type = circle | line | samples
//                   circle: radius, center; line: origin, direction;
//                   samples: points = "x, y; ..." or file = CSV (row = n)
//   [polygon]       type = ngon | vertices; ngon: sides, radius, phase;
//                   vertices: points = "x, y; ..."
//   [polarization]  m = expression in s; mu = number | list | arclength
//   [darboux]       initial_point = x, y | offset_angle = angle
//   [flow]          n0
//   [motion]        w0 = expression in s; n0
//   [figure]        mu, initial_point, m2
//   [output]        csv, svg, theta (file names, relative to --out)

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dflow/config.hpp"
#include "dflow/geometry.hpp"

namespace dflow {

enum class Command { Darboux, Flow, Motion, Verify, Figure1 };

std::optional<Command> parse_command(std::string_view name);
std::string_view command_name(Command command);

enum ExitCode : int {
    kExitSuccess = 0,
    kExitValidation = 1,
    kExitNumerical = 2,
    kExitVerification = 3,
};

struct RunOptions {
    Command command = Command::Verify;
    std::optional<std::filesystem::path> config;
    std::filesystem::path out_dir = ".";
    std::optional<double> h;
    std::optional<double> tol;
};

/// Loads the config, dispatches, writes outputs and returns the exit code.
/// Reports go to out, diagnostics to err.
int run(const RunOptions& options, std::ostream& out, std::ostream& err);

/// Scenario pieces, exposed for tests. h overrides grid.h.
SGrid scenario_grid(const Config& config, std::optional<double> h);
Polarization scenario_polarization(const Config& config);
/// Sample files carry their own grid; the other curve types use [grid].
/// base_dir resolves relative file names.
PolarizedCurve scenario_curve(const Config& config, std::optional<double> h, const Polarization& m,
    const std::filesystem::path& base_dir);
std::vector<PlanePoint> scenario_polygon(const Config& config);
/// Per-edge mu: a constant, an explicit list, or "arclength".
std::vector<double> scenario_edge_mu(const Config& config, std::span<const PlanePoint> vertices);

} // namespace dflow
