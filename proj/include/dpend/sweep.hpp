#pragma once
#include "dpend/core.hpp"
#include "dpend/integrator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dpend {

enum class Criterion { mean_energy, crossing_count, both };

/// Grid sweep over driving amplitude A0 and frequency ratio omega/omega0.
struct SweepSpec {
    double a0_max = 0.5;       ///< A0 axis upper bound [m]; lower bound 0
    int n_a0 = 128;
    double ratio_max = 5.0;    ///< omega/omega0 axis upper bound; axis is
                               ///< sampled at cell midpoints of [0, max]
    int n_ratio = 128;
    SimConfig base{2e-3, 300.0};  ///< per-cell config; initial state is
                                  ///< overridden per the collision flag
    Criterion criterion = Criterion::both;
    bool collisions = false;
    double crossing_angle = 2.0;          ///< |theta| level counted [rad]
    double crossing_count_threshold = 0;  ///< unstable iff count > this
    /// unstable iff mean E_piv > this; default (unset) is the pivot-frame
    /// energy of a free pendulum released at the crossing angle, -mgl cos(2)
    std::optional<double> energy_threshold;
    int jobs = 1;  ///< parallel cell evaluation; results are order-independent

    void validate() const;
};

struct SweepCell {
    double mean_energy = 0.0;  ///< time-averaged pivot-frame energy [J]
    int crossings = 0;
    bool unstable_energy = false;
    bool unstable_crossing = false;
    std::string error;  ///< non-empty if the cell's simulation failed
};

/// Stability classification over the (A0, omega/omega0) grid, row-major in
/// A0 (cell index = ia0 * n_ratio + iratio).
struct StabilityMap {
    std::vector<double> a0_values;
    std::vector<double> ratio_values;
    std::vector<SweepCell> cells;
    double energy_threshold = 0.0;
    double crossing_angle = 2.0;
    double crossing_count_threshold = 0.0;
    Criterion criterion = Criterion::both;
    bool collisions = false;

    const SweepCell& at(std::size_t ia0, std::size_t iratio) const {
        return cells[ia0 * ratio_values.size() + iratio];
    }
};

/// Time-average of the pivot-frame energy over the trajectory (trapezoidal).
double criterion_mean_energy(const Trajectory& traj, const PendulumParams& p);

/// Number of sign changes of |theta(t)| - threshold over the sample sequence.
int criterion_crossing_count(const Trajectory& traj, double threshold);

/// unstable iff value > threshold; ties classify as stable.
inline bool classify_unstable(double value, double threshold) {
    return value > threshold;
}

/// One simulation plus criteria evaluation per cell. Initial conditions:
/// theta0 = 0.001 rad (collisions off) or theta_min (collisions on),
/// theta_dot0 = 0. Per-cell failures are recorded in the cell, not fatal.
StabilityMap run_sweep(const SweepSpec& spec, const PendulumParams& p);

} // namespace dpend
