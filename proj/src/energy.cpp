#include "dpend/energy.hpp"

#include <cmath>

namespace dpend {

GroundEnergies ground_frame_energies(const State& s, const PendulumParams& p,
                                     const DriveSchedule& d) {
    const DriveKinematics k = drive_kinematics(s.t, d);
    const double lt = p.l * s.theta_dot;
    const double kinetic =
        0.5 * p.m *
        (lt * lt + k.ydot * k.ydot + 2.0 * k.ydot * lt * std::sin(s.theta));
    const double potential = p.m * p.g * (k.y - p.l * std::cos(s.theta));
    return {kinetic, potential};
}

double input_power(const State& s, const PendulumParams& p,
                   const DriveSchedule& d) {
    const DriveKinematics k = drive_kinematics(s.t, d);
    return -p.m * k.yddot * p.l * std::sin(s.theta) * s.theta_dot;
}

double dissipated_power(const State& s, const PendulumParams& p) {
    return p.C * p.l * s.theta_dot * s.theta_dot;
}

double pivot_frame_energy(double theta, double theta_dot,
                          const PendulumParams& p) {
    return 0.5 * p.m * p.l * p.l * theta_dot * theta_dot -
           p.m * p.g * p.l * std::cos(theta);
}

EnergyTrace energy_trace(const Trajectory& traj, const PendulumParams& p,
                         const DriveSchedule& d) {
    if (!(traj.params == p) || !(traj.drive == d))
        throw ValidationError(
            "mismatched parameters: trajectory was produced with different inputs");
    EnergyTrace et;
    const std::size_t n = traj.size();
    et.t.reserve(n);
    et.kinetic.reserve(n);
    et.potential.reserve(n);
    et.total.reserve(n);
    et.p_in.reserve(n);
    et.p_diss.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const State s{traj.theta[i], traj.theta_dot[i], traj.t[i]};
        const GroundEnergies ge = ground_frame_energies(s, p, d);
        et.t.push_back(s.t);
        et.kinetic.push_back(ge.kinetic);
        et.potential.push_back(ge.potential);
        et.total.push_back(ge.kinetic + ge.potential);
        et.p_in.push_back(input_power(s, p, d));
        et.p_diss.push_back(dissipated_power(s, p));
    }
    return et;
}

} // namespace dpend
