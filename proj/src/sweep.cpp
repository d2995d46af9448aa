#include "dpend/sweep.hpp"

#include "dpend/energy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace dpend {

void SweepSpec::validate() const {
    if (n_a0 < 2 || n_ratio < 2)
        throw ValidationError("sweep grid needs at least 2 samples per axis");
    if (!(a0_max > 0.0) || !(ratio_max > 0.0))
        throw ValidationError("sweep ranges must be non-degenerate");
    if (jobs < 1) throw ValidationError("jobs must be >= 1");
}

double criterion_mean_energy(const Trajectory& traj, const PendulumParams& p) {
    const std::size_t n = traj.size();
    if (n < 2) return pivot_frame_energy(traj.theta[0], traj.theta_dot[0], p);
    double integral = 0.0;
    double e_prev = pivot_frame_energy(traj.theta[0], traj.theta_dot[0], p);
    for (std::size_t i = 1; i < n; ++i) {
        const double e = pivot_frame_energy(traj.theta[i], traj.theta_dot[i], p);
        integral += 0.5 * (e + e_prev) * (traj.t[i] - traj.t[i - 1]);
        e_prev = e;
    }
    return integral / (traj.t.back() - traj.t.front());
}

int criterion_crossing_count(const Trajectory& traj, double threshold) {
    if (!(threshold > 0.0))
        throw ValidationError("crossing threshold must be positive");
    int count = 0;
    double prev = std::abs(traj.theta.empty() ? 0.0 : traj.theta[0]) - threshold;
    for (std::size_t i = 1; i < traj.size(); ++i) {
        const double cur = std::abs(traj.theta[i]) - threshold;
        if (prev * cur < 0.0) ++count;
        if (cur != 0.0) prev = cur;
    }
    return count;
}

StabilityMap run_sweep(const SweepSpec& spec, const PendulumParams& p) {
    spec.validate();
    p.validate();

    const double omega0 = natural_frequency(p);
    const double theta_min =
        spec.collisions ? critical_angles(p).theta_min : 0.0;
    const double energy_threshold = spec.energy_threshold.value_or(
        pivot_frame_energy(spec.crossing_angle, 0.0, p));

    StabilityMap map;
    map.energy_threshold = energy_threshold;
    map.crossing_angle = spec.crossing_angle;
    map.crossing_count_threshold = spec.crossing_count_threshold;
    map.criterion = spec.criterion;
    map.collisions = spec.collisions;
    map.a0_values.resize(spec.n_a0);
    map.ratio_values.resize(spec.n_ratio);
    // Amplitude axis includes its endpoints: the A0 = 0 row is the physical
    // zero-drive control. The frequency axis is sampled at cell midpoints
    // instead, because its ratio = 0 column would be degenerate (omega = 0
    // means no drive for every A0, duplicating the A0 = 0 row).
    for (int i = 0; i < spec.n_a0; ++i)
        map.a0_values[i] = spec.a0_max * i / (spec.n_a0 - 1);
    for (int j = 0; j < spec.n_ratio; ++j)
        map.ratio_values[j] = spec.ratio_max * (j + 0.5) / spec.n_ratio;

    const std::size_t n_cells =
        static_cast<std::size_t>(spec.n_a0) * spec.n_ratio;
    map.cells.resize(n_cells);

    auto eval_cell = [&](std::size_t idx) {
        const std::size_t ia = idx / spec.n_ratio;
        const std::size_t ir = idx % spec.n_ratio;
        SweepCell& cell = map.cells[idx];
        try {
            SimConfig cfg = spec.base;
            cfg.collisions = spec.collisions;
            cfg.theta0 = spec.collisions ? theta_min : 0.001;
            cfg.theta_dot0 = 0.0;
            const DriveSchedule d = DriveSchedule::single(
                map.a0_values[ia], map.ratio_values[ir] * omega0);
            const Trajectory traj = simulate(p, d, cfg);
            cell.mean_energy = criterion_mean_energy(traj, p);
            cell.crossings = criterion_crossing_count(traj, spec.crossing_angle);
            cell.unstable_energy =
                classify_unstable(cell.mean_energy, energy_threshold);
            cell.unstable_crossing = classify_unstable(
                static_cast<double>(cell.crossings),
                spec.crossing_count_threshold);
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    };

    if (spec.jobs == 1) {
        for (std::size_t idx = 0; idx < n_cells; ++idx) eval_cell(idx);
    } else {
        // write-once result grid indexed by cell; order-independent
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(spec.jobs);
        for (int w = 0; w < spec.jobs; ++w)
            workers.emplace_back([&] {
                for (std::size_t idx = next.fetch_add(1); idx < n_cells;
                     idx = next.fetch_add(1))
                    eval_cell(idx);
            });
        for (auto& th : workers) th.join();
    }
    return map;
}

} // namespace dpend
