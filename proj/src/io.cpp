#include "dpend/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dpend::io {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double get_num(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
        throw ValidationError("config key '" + key + "' must be a number");
    return j[key].get<double>();
}

double require_num(const json& j, const std::string& key) {
    if (!j.contains(key))
        throw ValidationError("config is missing required key '" + key + "'");
    if (!j[key].is_number())
        throw ValidationError("config key '" + key + "' must be a number");
    return j[key].get<double>();
}

const json& unwrap(const json& doc) {
    // manifests embed the original config under "config"
    if (doc.is_object() && doc.contains("config") && doc["config"].is_object())
        return doc["config"];
    return doc;
}

PendulumParams parse_params(const json& j) {
    PendulumParams p;
    p.m = require_num(j, "m");
    p.l = require_num(j, "l");
    p.r = get_num(j, "r", 0.0);
    p.C = get_num(j, "C", 0.0);
    p.g = get_num(j, "g", 9.8);
    p.validate();
    return p;
}

DriveSchedule parse_stages(const json& j) {
    if (!j.contains("stages") || !j["stages"].is_array() || j["stages"].empty())
        throw ValidationError("config needs a non-empty 'stages' array");
    std::vector<DriveStage> stages;
    for (const auto& s : j["stages"]) {
        DriveStage st;
        st.amplitude = require_num(s, "A0");
        st.omega = require_num(s, "omega");
        st.t_end = get_num(s, "t_end",
                           std::numeric_limits<double>::infinity());
        stages.push_back(st);
    }
    return DriveSchedule::make(std::move(stages));
}

Model parse_model(const json& j) {
    const std::string name = j.value("model", "full");
    if (name == "full") return Model::full;
    if (name == "small-angle") return Model::small_angle;
    throw ValidationError("model must be 'full' or 'small-angle'");
}

std::string model_name(Model m) {
    return m == Model::full ? "full" : "small-angle";
}

Criterion parse_criterion(const json& j) {
    const std::string name = j.value("criterion", "both");
    if (name == "mean-energy") return Criterion::mean_energy;
    if (name == "crossing-count") return Criterion::crossing_count;
    if (name == "both") return Criterion::both;
    throw ValidationError(
        "criterion must be 'mean-energy', 'crossing-count' or 'both'");
}

std::string criterion_name(Criterion c) {
    switch (c) {
        case Criterion::mean_energy: return "mean-energy";
        case Criterion::crossing_count: return "crossing-count";
        default: return "both";
    }
}

json params_to_json(const PendulumParams& p) {
    return {{"m", p.m}, {"l", p.l}, {"r", p.r}, {"C", p.C}, {"g", p.g}};
}

json stages_to_json(const DriveSchedule& d) {
    json arr = json::array();
    for (const auto& st : d.stages) {
        json s = {{"A0", st.amplitude}, {"omega", st.omega}};
        if (std::isfinite(st.t_end)) s["t_end"] = st.t_end;
        arr.push_back(s);
    }
    return arr;
}

} // namespace

RunConfig parse_run_config(const json& raw) {
    const json& j = unwrap(raw);
    RunConfig rc;
    rc.params = parse_params(j);
    rc.drive = parse_stages(j);
    rc.sim.h = get_num(j, "h", 1e-3);
    rc.sim.T = get_num(j, "T", 10.0);
    rc.sim.theta0 = get_num(j, "theta0", 0.0);
    rc.sim.theta_dot0 = get_num(j, "thetadot0", 0.0);
    rc.sim.collisions = j.value("collisions", false);
    rc.sim.restitution = get_num(j, "restitution", 1.0);
    rc.sim.model = parse_model(j);
    rc.sim.event_tol = get_num(j, "event_tol", 1e-10);
    rc.sim.validate(rc.params);
    return rc;
}

SweepConfig parse_sweep_config(const json& raw) {
    const json& j = unwrap(raw);
    SweepConfig sc;
    sc.params = parse_params(j);
    sc.spec.a0_max = get_num(j, "a0_max", 0.5 * sc.params.l);
    sc.spec.n_a0 = static_cast<int>(get_num(j, "n_a0", 128));
    sc.spec.ratio_max = get_num(j, "ratio_max", 5.0);
    sc.spec.n_ratio = static_cast<int>(get_num(j, "n_ratio", 128));
    sc.spec.base.h = get_num(j, "h", 2e-3);
    sc.spec.base.T = get_num(j, "T", 300.0);
    sc.spec.base.restitution = get_num(j, "restitution", 1.0);
    sc.spec.collisions = j.value("collisions", false);
    sc.spec.criterion = parse_criterion(j);
    sc.spec.crossing_angle = get_num(j, "crossing_angle", 2.0);
    sc.spec.crossing_count_threshold =
        get_num(j, "crossing_count_threshold", 0.0);
    if (j.contains("energy_threshold"))
        sc.spec.energy_threshold = require_num(j, "energy_threshold");
    sc.spec.jobs = static_cast<int>(get_num(j, "jobs", 1));
    sc.spec.validate();
    return sc;
}

json to_json(const RunConfig& rc) {
    json j = params_to_json(rc.params);
    j["stages"] = stages_to_json(rc.drive);
    j["theta0"] = rc.sim.theta0;
    j["thetadot0"] = rc.sim.theta_dot0;
    j["h"] = rc.sim.h;
    j["T"] = rc.sim.T;
    j["collisions"] = rc.sim.collisions;
    j["restitution"] = rc.sim.restitution;
    j["model"] = model_name(rc.sim.model);
    j["event_tol"] = rc.sim.event_tol;
    return j;
}

json to_json(const SweepConfig& sc) {
    json j = params_to_json(sc.params);
    j["a0_max"] = sc.spec.a0_max;
    j["n_a0"] = sc.spec.n_a0;
    j["ratio_max"] = sc.spec.ratio_max;
    j["n_ratio"] = sc.spec.n_ratio;
    j["h"] = sc.spec.base.h;
    j["T"] = sc.spec.base.T;
    j["restitution"] = sc.spec.base.restitution;
    j["collisions"] = sc.spec.collisions;
    j["criterion"] = criterion_name(sc.spec.criterion);
    j["crossing_angle"] = sc.spec.crossing_angle;
    j["crossing_count_threshold"] = sc.spec.crossing_count_threshold;
    if (sc.spec.energy_threshold)
        j["energy_threshold"] = *sc.spec.energy_threshold;
    j["jobs"] = sc.spec.jobs;
    return j;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded())
        throw ValidationError("malformed JSON in " + path);
    return doc;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << content;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ostringstream os;
    os << "t,theta,theta_dot\n";
    for (std::size_t i = 0; i < traj.size(); ++i)
        os << fmt(traj.t[i]) << ',' << fmt(traj.theta[i]) << ','
           << fmt(traj.theta_dot[i]) << '\n';
    write_text(path, os.str());
}

void write_events_csv(const std::string& path, const Trajectory& traj) {
    std::ostringstream os;
    os << "t,boundary,v_pre,v_post\n";
    for (const auto& ev : traj.events)
        os << fmt(ev.t) << ',' << fmt(ev.boundary) << ',' << fmt(ev.v_pre)
           << ',' << fmt(ev.v_post) << '\n';
    write_text(path, os.str());
}

void write_energy_csv(const std::string& path, const EnergyTrace& et) {
    std::ostringstream os;
    os << "t,T,U,E,P_in,P_diss\n";
    for (std::size_t i = 0; i < et.t.size(); ++i)
        os << fmt(et.t[i]) << ',' << fmt(et.kinetic[i]) << ','
           << fmt(et.potential[i]) << ',' << fmt(et.total[i]) << ','
           << fmt(et.p_in[i]) << ',' << fmt(et.p_diss[i]) << '\n';
    write_text(path, os.str());
}

void write_map_csv(const std::string& path, const StabilityMap& map) {
    std::ostringstream os;
    os << "A0,ratio,criterion,value,label\n";
    const bool energy = map.criterion != Criterion::crossing_count;
    const bool crossing = map.criterion != Criterion::mean_energy;
    for (std::size_t ia = 0; ia < map.a0_values.size(); ++ia)
        for (std::size_t ir = 0; ir < map.ratio_values.size(); ++ir) {
            const SweepCell& c = map.at(ia, ir);
            const std::string prefix =
                fmt(map.a0_values[ia]) + ',' + fmt(map.ratio_values[ir]) + ',';
            if (!c.error.empty()) {
                os << prefix << "error,nan,error\n";
                continue;
            }
            if (energy)
                os << prefix << "mean-energy," << fmt(c.mean_energy) << ','
                   << (c.unstable_energy ? "unstable" : "stable") << '\n';
            if (crossing)
                os << prefix << "crossing-count," << c.crossings << ','
                   << (c.unstable_crossing ? "unstable" : "stable") << '\n';
        }
    write_text(path, os.str());
}

json trajectory_to_json(const Trajectory& traj) {
    json events = json::array();
    for (const auto& ev : traj.events)
        events.push_back({{"t", ev.t},
                          {"boundary", ev.boundary},
                          {"v_pre", ev.v_pre},
                          {"v_post", ev.v_post}});
    return {{"t", traj.t},
            {"theta", traj.theta},
            {"theta_dot", traj.theta_dot},
            {"events", events}};
}

json energy_to_json(const EnergyTrace& et) {
    return {{"t", et.t},          {"T", et.kinetic}, {"U", et.potential},
            {"E", et.total},      {"P_in", et.p_in}, {"P_diss", et.p_diss}};
}

json map_to_json(const StabilityMap& map) {
    json cells = json::array();
    for (std::size_t ia = 0; ia < map.a0_values.size(); ++ia)
        for (std::size_t ir = 0; ir < map.ratio_values.size(); ++ir) {
            const SweepCell& c = map.at(ia, ir);
            json cell = {{"A0", map.a0_values[ia]},
                         {"ratio", map.ratio_values[ir]}};
            if (!c.error.empty()) {
                cell["error"] = c.error;
            } else {
                cell["mean_energy"] = c.mean_energy;
                cell["crossings"] = c.crossings;
                cell["unstable_energy"] = c.unstable_energy;
                cell["unstable_crossing"] = c.unstable_crossing;
            }
            cells.push_back(std::move(cell));
        }
    return {{"a0_values", map.a0_values},
            {"ratio_values", map.ratio_values},
            {"energy_threshold", map.energy_threshold},
            {"crossing_angle", map.crossing_angle},
            {"crossing_count_threshold", map.crossing_count_threshold},
            {"collisions", map.collisions},
            {"cells", cells}};
}

json fit_to_json(const DecayFit& fit, double damping) {
    return {{"amplitude", fit.amplitude},
            {"k", fit.k},
            {"C", damping},
            {"rms", fit.rms},
            {"n_peaks", fit.n_peaks}};
}

std::pair<std::vector<double>, std::vector<double>>
read_theta_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("empty CSV: " + path);
    std::vector<double> t, theta;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ValidationError("malformed CSV row " + std::to_string(lineno) +
                                  " in " + path);
        try {
            std::size_t pos = 0;
            t.push_back(std::stod(line.substr(0, comma), &pos));
            theta.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw ValidationError("malformed CSV row " + std::to_string(lineno) +
                                  " in " + path);
        }
    }
    return {std::move(t), std::move(theta)};
}

} // namespace dpend::io
