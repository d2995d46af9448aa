// Command-line front end: simulate / sweep / energy / fit / resonance-freqs.
// Emits CSV/JSON data files plus a manifest.json sufficient to reproduce
// every run (a manifest can be passed back as --config).
#include "dpend/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using dpend::io::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Clock {
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start)
            .count();
    }
};

void write_manifest(const fs::path& dir, const std::string& command,
                    const json& config, double duration) {
    json manifest = {{"command", command},
                     {"version", kVersion},
                     {"duration_s", duration},
                     {"config", config}};
    dpend::io::write_text((dir / "manifest.json").string(),
                          manifest.dump(2) + "\n");
}

void apply_override(json& cfg, const std::string& key, const json& value,
                    bool set) {
    if (set) cfg[key] = value;
}

int run_simulate(const std::string& config_path, const std::string& out_dir,
                 const std::string& format, const std::string& model,
                 bool with_energy) {
    Clock clock;
    json doc = dpend::io::load_json(config_path);
    json& cfg = doc.contains("config") ? doc["config"] : doc;
    apply_override(cfg, "model", model, !model.empty());
    const auto rc = dpend::io::parse_run_config(cfg);

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    const auto traj = dpend::simulate(rc.params, rc.drive, rc.sim);

    const bool csv = format != "json";
    const bool js = format != "csv";
    if (csv) {
        dpend::io::write_trajectory_csv((dir / "trajectory.csv").string(), traj);
        dpend::io::write_events_csv((dir / "events.csv").string(), traj);
    }
    if (js)
        dpend::io::write_text((dir / "trajectory.json").string(),
                              dpend::io::trajectory_to_json(traj).dump() + "\n");
    if (with_energy) {
        const auto et = dpend::energy_trace(traj, rc.params, rc.drive);
        if (csv) dpend::io::write_energy_csv((dir / "energy.csv").string(), et);
        if (js)
            dpend::io::write_text((dir / "energy.json").string(),
                                  dpend::io::energy_to_json(et).dump() + "\n");
    }
    write_manifest(dir, "simulate", dpend::io::to_json(rc), clock.seconds());
    return 0;
}

int run_energy(const std::string& config_path, const std::string& out_dir,
               const std::string& format) {
    Clock clock;
    const auto rc = dpend::io::parse_run_config(dpend::io::load_json(config_path));
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    const auto traj = dpend::simulate(rc.params, rc.drive, rc.sim);
    const auto et = dpend::energy_trace(traj, rc.params, rc.drive);
    if (format != "json")
        dpend::io::write_energy_csv((dir / "energy.csv").string(), et);
    if (format != "csv")
        dpend::io::write_text((dir / "energy.json").string(),
                              dpend::io::energy_to_json(et).dump() + "\n");
    write_manifest(dir, "energy", dpend::io::to_json(rc), clock.seconds());
    return 0;
}

int run_sweep(const std::string& config_path, const std::string& out_dir,
              const std::string& format, int jobs, int collisions,
              const std::string& criterion) {
    Clock clock;
    json doc = dpend::io::load_json(config_path);
    json& cfg = doc.contains("config") ? doc["config"] : doc;
    apply_override(cfg, "jobs", jobs, jobs > 0);
    apply_override(cfg, "collisions", collisions != 0, collisions >= 0);
    apply_override(cfg, "criterion", criterion, !criterion.empty());
    const auto sc = dpend::io::parse_sweep_config(cfg);

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    const auto map = dpend::run_sweep(sc.spec, sc.params);
    if (format != "json")
        dpend::io::write_map_csv((dir / "stability_map.csv").string(), map);
    if (format != "csv")
        dpend::io::write_text((dir / "stability_map.json").string(),
                              dpend::io::map_to_json(map).dump() + "\n");
    write_manifest(dir, "sweep", dpend::io::to_json(sc), clock.seconds());
    return 0;
}

int run_fit(const std::string& input, double m, double l,
            const std::string& out) {
    const auto [t, theta] = dpend::io::read_theta_csv(input);
    const auto peaks = dpend::extract_peaks(t, theta);
    const auto fit = dpend::fit_envelope(peaks);
    const double C = dpend::damping_from_decay(fit.k, m, l);
    const std::string report = dpend::io::fit_to_json(fit, C).dump(2) + "\n";
    if (out.empty())
        std::cout << report;
    else
        dpend::io::write_text(out, report);
    return 0;
}

int run_resonance(const std::string& config_path, double omega0, int n_max) {
    if (!config_path.empty()) {
        const json doc = dpend::io::load_json(config_path);
        const json& j =
            doc.contains("config") ? doc.at("config") : doc;
        dpend::PendulumParams p;
        p.m = j.value("m", 1.0);
        p.l = j.at("l").get<double>();
        p.g = j.value("g", 9.8);
        omega0 = dpend::natural_frequency(p);
    }
    if (!(omega0 > 0.0))
        throw dpend::ValidationError("need --omega0 > 0 or a config with l, g");
    const auto freqs = dpend::mathieu_resonance_frequencies(omega0, n_max);
    std::cout << json({{"omega0", omega0}, {"frequencies", freqs}}).dump(2)
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vertically driven collision-coupled pendulum toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config, out_dir = ".", format = "csv", model, criterion;
    std::string fit_input, fit_out;
    double fit_m = 0.0, fit_l = 0.0, omega0 = 0.0;
    int jobs = 0, n_max = 5;
    int collisions = -1;  // -1: keep config value
    bool with_energy = false;

    auto* sim = app.add_subcommand("simulate", "integrate one trajectory");
    sim->add_option("--config", config)->required();
    sim->add_option("--out-dir", out_dir);
    sim->add_option("--format", format)
        ->check(CLI::IsMember({"csv", "json", "both"}));
    sim->add_option("--model", model)
        ->check(CLI::IsMember({"full", "small-angle"}));
    sim->add_flag("--energy", with_energy, "also emit the energy trace");

    auto* en = app.add_subcommand("energy", "simulate and emit the energy trace");
    en->add_option("--config", config)->required();
    en->add_option("--out-dir", out_dir);
    en->add_option("--format", format)
        ->check(CLI::IsMember({"csv", "json", "both"}));

    auto* sw = app.add_subcommand("sweep", "stability map over (A0, omega/omega0)");
    sw->add_option("--config", config)->required();
    sw->add_option("--out-dir", out_dir);
    sw->add_option("--format", format)
        ->check(CLI::IsMember({"csv", "json", "both"}));
    sw->add_option("--jobs", jobs);
    bool col_on = false, col_off = false;
    sw->add_flag("--collisions", col_on);
    sw->add_flag("--no-collisions", col_off);
    sw->add_option("--criterion", criterion)
        ->check(CLI::IsMember({"mean-energy", "crossing-count", "both"}));

    auto* ft = app.add_subcommand("fit", "damping fit from a t,theta CSV");
    ft->add_option("--input", fit_input)->required();
    ft->add_option("--m", fit_m)->required();
    ft->add_option("--l", fit_l)->required();
    ft->add_option("--out", fit_out);

    auto* rf = app.add_subcommand("resonance-freqs",
                                  "Mathieu resonance frequencies 2*omega0/n");
    rf->add_option("--config", config);
    rf->add_option("--omega0", omega0);
    rf->add_option("--n-max", n_max);

    // all runs are deterministic; reserved for interface stability
    bool seedless = false;
    app.add_flag("--seedless", seedless);

    CLI11_PARSE(app, argc, argv);
    if (col_on) collisions = 1;
    if (col_off) collisions = 0;

    try {
        if (sim->parsed())
            return run_simulate(config, out_dir, format, model, with_energy);
        if (en->parsed()) return run_energy(config, out_dir, format);
        if (sw->parsed())
            return run_sweep(config, out_dir, format, jobs, collisions,
                             criterion);
        if (ft->parsed()) return run_fit(fit_input, fit_m, fit_l, fit_out);
        if (rf->parsed()) return run_resonance(config, omega0, n_max);
    } catch (const dpend::ValidationError& e) {
        std::cerr << json({{"error", e.what()}, {"kind", "validation"}}).dump()
                  << "\n";
        return 2;
    } catch (const dpend::NumericalError& e) {
        std::cerr << json({{"error", e.what()}, {"kind", "numerical"}}).dump()
                  << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << json({{"error", e.what()}, {"kind", "internal"}}).dump()
                  << "\n";
        return 1;
    }
    return 1;
}
