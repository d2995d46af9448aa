#pragma once
#include "dpend/core.hpp"
#include "dpend/energy.hpp"
#include "dpend/fit.hpp"
#include "dpend/integrator.hpp"
#include "dpend/sweep.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace dpend::io {

using nlohmann::json;

/// Physical parameters + drive + simulation config for one run.
struct RunConfig {
    PendulumParams params;
    DriveSchedule drive;
    SimConfig sim;
};

/// Physical parameters + sweep grid specification.
struct SweepConfig {
    PendulumParams params;
    SweepSpec spec;
};

/// Parse a flat JSON run config: m, l, r, C, g, stages[{A0, omega, t_end}],
/// theta0, thetadot0 and optional h, T, collisions, restitution, model,
/// event_tol. Throws ValidationError on malformed or invalid input. A
/// manifest document (with a top-level "config" object) is accepted too.
RunConfig parse_run_config(const json& doc);
SweepConfig parse_sweep_config(const json& doc);
json to_json(const RunConfig& rc);
json to_json(const SweepConfig& sc);

/// Load and parse a JSON file; ValidationError on I/O or syntax failure.
json load_json(const std::string& path);

// CSV emission; headers always present, fields written at full precision
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
void write_events_csv(const std::string& path, const Trajectory& traj);
void write_energy_csv(const std::string& path, const EnergyTrace& et);
/// long format: A0,ratio,criterion,value,label
void write_map_csv(const std::string& path, const StabilityMap& map);

json trajectory_to_json(const Trajectory& traj);
json energy_to_json(const EnergyTrace& et);
json map_to_json(const StabilityMap& map);
json fit_to_json(const DecayFit& fit, double damping);

void write_text(const std::string& path, const std::string& content);

/// Parse a `t,theta` CSV (header row required); ValidationError on
/// malformed rows.
std::pair<std::vector<double>, std::vector<double>>
read_theta_csv(const std::string& path);

} // namespace dpend::io
