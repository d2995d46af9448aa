#include "dpend/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace dpend {

void SimConfig::validate(const PendulumParams& p) const {
    p.validate();
    if (!(h > 0.0)) throw ValidationError("time step h must be positive");
    if (!(T > 0.0)) throw ValidationError("total time T must be positive");
    if (!(restitution > 0.0 && restitution <= 1.0))
        throw ValidationError("restitution e must be in (0, 1]");
    if (!std::isfinite(theta0) || !std::isfinite(theta_dot0))
        throw ValidationError("initial state must be finite");
    if (collisions) {
        const CriticalAngles ca = critical_angles(p);
        if (theta0 < ca.theta_min - event_tol || theta0 > ca.theta_max + event_tol)
            throw ValidationError(
                "initial angle must lie in [theta_min, theta_max] when collisions are on");
    }
}

double Trajectory::max_abs_theta() const {
    double m = 0.0;
    for (double th : theta) m = std::max(m, std::abs(th));
    return m;
}

namespace {

struct Stepper {
    const PendulumParams& p;
    const DriveSchedule& d;
    Model model;

    Deriv operator()(const State& s) const {
        return model == Model::full ? eom_full(s, p, d)
                                    : eom_small_angle(s, p, d);
    }
};

} // namespace

Trajectory simulate(const PendulumParams& p, const DriveSchedule& d,
                    const SimConfig& cfg) {
    cfg.validate(p);

    Trajectory traj;
    traj.params = p;
    traj.drive = d;
    traj.config = cfg;

    const Stepper rhs{p, d, cfg.model};
    const CriticalAngles ca =
        cfg.collisions ? critical_angles(p) : CriticalAngles{};
    const double snap = cfg.event_tol;
    constexpr int kMaxEventsPerStep = 64;

    const std::size_t n_full =
        static_cast<std::size_t>(std::floor(cfg.T / cfg.h + 1e-9));
    const double remainder = cfg.T - static_cast<double>(n_full) * cfg.h;

    State s{cfg.theta0, cfg.theta_dot0, 0.0};
    const std::size_t n_samples_hint = n_full + 2;
    traj.t.reserve(n_samples_hint);
    traj.theta.reserve(n_samples_hint);
    traj.theta_dot.reserve(n_samples_hint);

    auto record = [&traj](const State& st) {
        traj.t.push_back(st.t);
        traj.theta.push_back(st.theta);
        traj.theta_dot.push_back(st.theta_dot);
    };
    record(s);

    // Advance one accepted step of length h_step ending at t_target,
    // replacing every critical-angle crossing by localization + reflection.
    auto step_with_events = [&](State st, double h_step,
                                double t_target) -> State {
        int n_events = 0;
        while (true) {
            State s1 = rk4_step(st, h_step, rhs);
            s1.t = t_target;
            if (!cfg.collisions) return s1;

            const bool cross_lo =
                st.theta >= ca.theta_min - snap && s1.theta < ca.theta_min;
            const bool cross_hi =
                st.theta <= ca.theta_max + snap && s1.theta > ca.theta_max;
            if (!cross_lo && !cross_hi) return s1;

            if (++n_events > kMaxEventsPerStep) {
                // chattering exhausted the event budget: resting contact
                const double b = cross_lo ? ca.theta_min : ca.theta_max;
                s1.theta = b;
                s1.theta_dot = 0.0;
                return s1;
            }

            const double b_lo = ca.theta_min, b_hi = ca.theta_max;
            double boundary;
            State contact;
            const bool start_on_lo = std::abs(st.theta - b_lo) <= snap;
            const bool start_on_hi = std::abs(st.theta - b_hi) <= snap;
            if ((cross_lo && start_on_lo) || (cross_hi && start_on_hi)) {
                // Pressed against the boundary (e.g. released from rest at
                // theta_min): the crossing starts at zero penetration speed
                // and cannot be bisected. Accept the step, then reflect the
                // accumulated penetration velocity at the wall.
                boundary = cross_lo ? b_lo : b_hi;
                const double v_pre = s1.theta_dot;
                const double v_mag = cfg.restitution * std::abs(v_pre);
                const double v_post = cross_lo ? v_mag : -v_mag;
                traj.events.push_back({s1.t, boundary, v_pre, v_post});
                s1.theta = boundary;
                s1.theta_dot = v_post;
                return s1;
            }

            if (cross_lo && cross_hi) {
                // both boundaries crossed in one step: take the earlier
                const State c_lo = locate_event(st, s1, b_lo, cfg.event_tol, rhs);
                const State c_hi = locate_event(st, s1, b_hi, cfg.event_tol, rhs);
                if (c_lo.t <= c_hi.t) {
                    boundary = b_lo;
                    contact = c_lo;
                } else {
                    boundary = b_hi;
                    contact = c_hi;
                }
            } else {
                boundary = cross_lo ? b_lo : b_hi;
                contact = locate_event(st, s1, boundary, cfg.event_tol, rhs);
            }

            const double v_pre = contact.theta_dot;
            const double v_post = collide(v_pre, cfg.restitution);
            traj.events.push_back({contact.t, boundary, v_pre, v_post});
            contact.theta = boundary;
            contact.theta_dot = v_post;

            const double h_rem = t_target - contact.t;
            if (h_rem <= 1e-14 * std::max(1.0, t_target)) {
                contact.t = t_target;
                return contact;
            }
            record(contact);
            st = contact;
            h_step = h_rem;
        }
    };

    for (std::size_t k = 1; k <= n_full; ++k) {
        const double t_target = static_cast<double>(k) * cfg.h;
        s = step_with_events(s, t_target - s.t, t_target);
        record(s);
    }
    if (remainder > 1e-12) {
        s = step_with_events(s, cfg.T - s.t, cfg.T);
        record(s);
    }
    return traj;
}

} // namespace dpend
