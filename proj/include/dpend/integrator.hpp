#pragma once
#include "dpend/core.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace dpend {

enum class Model { full, small_angle };

/// Fixed-step simulation configuration.
struct SimConfig {
    double h = 1e-3;          ///< time step [s]
    double T = 10.0;          ///< total simulated time [s]
    double theta0 = 0.0;      ///< initial angle [rad]
    double theta_dot0 = 0.0;  ///< initial angular velocity [rad/s]
    bool collisions = false;
    double restitution = 1.0; ///< e in (0, 1]
    Model model = Model::full;
    double event_tol = 1e-10; ///< collision localization tolerance [rad]

    /// Throws ValidationError on h,T <= 0, e outside (0,1], or (with
    /// collisions on) theta0 outside [theta_min, theta_max].
    void validate(const PendulumParams& p) const;

    bool operator==(const SimConfig&) const = default;
};

/// One collision at a critical angle: zero-duration velocity reflection.
struct CollisionEvent {
    double t = 0.0;
    double boundary = 0.0;  ///< theta_min or theta_max [rad]
    double v_pre = 0.0;     ///< angular velocity just before contact [rad/s]
    double v_post = 0.0;    ///< angular velocity just after [rad/s]
};

/// Time series of (t, theta, theta_dot) plus the collision event log.
/// Carries copies of the inputs that produced it so downstream consumers
/// can verify they post-process with matching parameters.
struct Trajectory {
    std::vector<double> t;
    std::vector<double> theta;
    std::vector<double> theta_dot;
    std::vector<CollisionEvent> events;

    PendulumParams params;
    DriveSchedule drive;
    SimConfig config;

    std::size_t size() const { return t.size(); }
    double max_abs_theta() const;
};

/// Classical RK4 update of (theta, theta_dot); t advances by h.
/// Throws NumericalError if any stage evaluates non-finite.
template <class Rhs>
State rk4_step(const State& s, double h, Rhs&& rhs) {
    const Deriv k1 = rhs(s);
    const Deriv k2 = rhs(State{s.theta + 0.5 * h * k1.dtheta,
                               s.theta_dot + 0.5 * h * k1.dtheta_dot,
                               s.t + 0.5 * h});
    const Deriv k3 = rhs(State{s.theta + 0.5 * h * k2.dtheta,
                               s.theta_dot + 0.5 * h * k2.dtheta_dot,
                               s.t + 0.5 * h});
    const Deriv k4 = rhs(State{s.theta + h * k3.dtheta,
                               s.theta_dot + h * k3.dtheta_dot, s.t + h});
    State out{s.theta + h / 6.0 *
                  (k1.dtheta + 2.0 * k2.dtheta + 2.0 * k3.dtheta + k4.dtheta),
              s.theta_dot + h / 6.0 *
                  (k1.dtheta_dot + 2.0 * k2.dtheta_dot + 2.0 * k3.dtheta_dot +
                   k4.dtheta_dot),
              s.t + h};
    if (!out.finite())
        throw NumericalError("non-finite state at t = " + std::to_string(s.t));
    return out;
}

/// Velocity map of a symmetry-reduced elastic collision: equal masses with
/// mirror-symmetric partner exchange velocities, i.e. reflection scaled by
/// the restitution coefficient.
inline double collide(double theta_dot_pre, double restitution) {
    return -restitution * theta_dot_pre;
}

/// Bisection on RK4 sub-steps from s_before until |theta - boundary| < tol.
/// Preconditions: s_after = rk4_step(s_before, h) and (theta_before -
/// boundary), (theta_after - boundary) have opposite signs. Throws
/// NumericalError after 64 iterations without convergence.
template <class Rhs>
State locate_event(const State& s_before, const State& s_after,
                   double boundary, double tol, Rhs&& rhs) {
    const double f0 = s_before.theta - boundary;
    double lo = 0.0, hi = s_after.t - s_before.t;
    State best = s_after;
    for (int it = 0; it < 64; ++it) {
        const double mid = 0.5 * (lo + hi);
        const State sm = rk4_step(s_before, mid, rhs);
        const double fm = sm.theta - boundary;
        if (std::abs(fm) < tol) return sm;
        if ((fm > 0.0) == (f0 > 0.0))
            lo = mid;
        else
            hi = mid;
        best = sm;
    }
    if (std::abs(best.theta - boundary) < tol) return best;
    throw NumericalError("collision localization failed to converge at t = " +
                         std::to_string(s_before.t));
}

/// Integrate the chosen equation of motion over [0, T]. With collisions
/// enabled every crossing of a critical angle is replaced by event
/// localization plus the collision velocity map; one sample is recorded at
/// every accepted step and at every event sub-step.
Trajectory simulate(const PendulumParams& p, const DriveSchedule& d,
                    const SimConfig& cfg);

} // namespace dpend
