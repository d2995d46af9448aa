#pragma once
#include "dpend/core.hpp"
#include "dpend/integrator.hpp"

#include <vector>

namespace dpend {

/// Per-sample energy bookkeeping along a trajectory. Kinetic/potential/total
/// are ground-frame (zero potential at the pivot's mean height); powers are
/// the drive-input and damping-dissipation terms of the pivot-frame balance.
struct EnergyTrace {
    std::vector<double> t;
    std::vector<double> kinetic;     ///< T [J], ground frame
    std::vector<double> potential;   ///< U [J], ground frame
    std::vector<double> total;       ///< E = T + U [J]
    std::vector<double> p_in;        ///< input power [W]
    std::vector<double> p_diss;      ///< dissipated power [W]
};

/// Ground-frame kinetic and potential energy of the ball:
/// T = m/2 (l^2 th'^2 + y0'^2 + 2 y0' l th' sin th), U = m g (y0 - l cos th).
struct GroundEnergies {
    double kinetic = 0.0;
    double potential = 0.0;
};
GroundEnergies ground_frame_energies(const State& s, const PendulumParams& p,
                                     const DriveSchedule& d);

/// Drive input power: inertial force times the ball's pivot-frame vertical
/// velocity, P_in = -m y0'' l sin(th) th'.
double input_power(const State& s, const PendulumParams& p,
                   const DriveSchedule& d);

/// Damping dissipation P_diss = C l th'^2 (>= 0).
double dissipated_power(const State& s, const PendulumParams& p);

/// Pivot-frame energy E_piv = m l^2 th'^2 / 2 - m g l cos th, whose exact
/// rate of change between collisions equals P_in - P_diss.
double pivot_frame_energy(double theta, double theta_dot,
                          const PendulumParams& p);

/// Pointwise energies and powers over a trajectory. Throws ValidationError
/// if the trajectory was produced with different parameters or drive.
EnergyTrace energy_trace(const Trajectory& traj, const PendulumParams& p,
                         const DriveSchedule& d);

} // namespace dpend
