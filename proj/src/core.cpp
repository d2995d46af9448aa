#include "dpend/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dpend {

void PendulumParams::validate() const {
    if (!(m > 0.0)) throw ValidationError("mass m must be positive");
    if (!(l > 0.0)) throw ValidationError("rod length l must be positive");
    if (!(g > 0.0)) throw ValidationError("gravity g must be positive");
    if (!(C >= 0.0)) throw ValidationError("damping C must be non-negative");
    if (!(r >= 0.0)) throw ValidationError("ball radius r must be non-negative");
    if (!(r < l))
        throw ValidationError("degenerate geometry: ball radius r must be < rod length l");
}

bool State::finite() const {
    return std::isfinite(theta) && std::isfinite(theta_dot) && std::isfinite(t);
}

DriveSchedule DriveSchedule::single(double amplitude, double omega) {
    return make({DriveStage{amplitude, omega,
                            std::numeric_limits<double>::infinity()}});
}

DriveSchedule DriveSchedule::make(std::vector<DriveStage> stages) {
    if (stages.empty()) throw ValidationError("drive schedule needs at least one stage");
    double prev_end = 0.0;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const auto& st = stages[i];
        if (!(st.amplitude >= 0.0))
            throw ValidationError("drive amplitude must be non-negative");
        if (!(st.omega >= 0.0))
            throw ValidationError("drive frequency must be non-negative");
        const bool last = (i + 1 == stages.size());
        if (!last) {
            if (!(st.t_end > prev_end))
                throw ValidationError("stage end times must be strictly increasing");
            prev_end = st.t_end;
        }
    }
    stages.back().t_end = std::numeric_limits<double>::infinity();

    DriveSchedule d;
    d.stages = std::move(stages);
    d.phases.assign(d.stages.size(), 0.0);
    // Phase continuity: pick each stage's phase so y0 is continuous at the
    // switch; among the two acos branches, keep the one whose pivot velocity
    // matches the sign of the outgoing stage's velocity.
    for (std::size_t i = 1; i < d.stages.size(); ++i) {
        const double ts = d.stages[i - 1].t_end;
        const auto& prev = d.stages[i - 1];
        const double y_prev =
            prev.amplitude * std::cos(prev.omega * ts + d.phases[i - 1]);
        const double v_prev = -prev.amplitude * prev.omega *
                              std::sin(prev.omega * ts + d.phases[i - 1]);
        const auto& cur = d.stages[i];
        if (cur.amplitude <= 0.0) {
            d.phases[i] = 0.0;
            continue;
        }
        const double c = std::clamp(y_prev / cur.amplitude, -1.0, 1.0);
        const double base = std::acos(c);  // in [0, pi]
        // branch +base gives ydot < 0 at the switch, -base gives ydot > 0
        const double branch = (v_prev > 0.0) ? -base : base;
        d.phases[i] = branch - cur.omega * ts;
    }
    return d;
}

std::size_t DriveSchedule::stage_index(double t) const {
    for (std::size_t i = 0; i + 1 < stages.size(); ++i)
        if (t < stages[i].t_end) return i;
    return stages.size() - 1;
}

double natural_frequency(const PendulumParams& p) {
    p.validate();
    return std::sqrt(p.g / p.l);
}

CriticalAngles critical_angles(const PendulumParams& p) {
    p.validate();
    const double tmin = std::asin(p.r / p.l);
    return {tmin, M_PI - tmin};
}

DriveKinematics drive_kinematics(double t, const DriveSchedule& d) {
    const std::size_t i = d.stage_index(t);
    const auto& st = d.stages[i];
    if (st.amplitude == 0.0) return {0.0, 0.0, 0.0};
    const double ph = st.omega * t + d.phases[i];
    const double c = std::cos(ph), s = std::sin(ph);
    return {st.amplitude * c, -st.amplitude * st.omega * s,
            -st.amplitude * st.omega * st.omega * c};
}

Deriv eom_full(const State& s, const PendulumParams& p, const DriveSchedule& d) {
    const DriveKinematics k = drive_kinematics(s.t, d);
    const double acc = -(p.C / (p.m * p.l)) * s.theta_dot -
                       ((p.g + k.yddot) / p.l) * std::sin(s.theta);
    return {s.theta_dot, acc};
}

Deriv eom_small_angle(const State& s, const PendulumParams& p,
                      const DriveSchedule& d) {
    const DriveKinematics k = drive_kinematics(s.t, d);
    const double acc = -(p.C / (p.m * p.l)) * s.theta_dot -
                       ((p.g + k.yddot) / p.l) * s.theta;
    return {s.theta_dot, acc};
}

double decay_factor(const PendulumParams& p) { return p.C / (2.0 * p.m * p.l); }

double analytic_underdamped(double t, double theta0, const PendulumParams& p) {
    p.validate();
    const double k = decay_factor(p);
    const double wd2 = p.g / p.l - k * k;
    if (!(wd2 > 0.0))
        throw ValidationError("overdamped parameters: g/l <= (C/2ml)^2");
    const double wd = std::sqrt(wd2);
    const double q = k / wd;
    return theta0 * std::exp(-k * t) * std::sqrt(1.0 + q * q) *
           std::cos(wd * t - std::atan(q));
}

MathieuParams to_mathieu(const PendulumParams& p, const DriveStage& stage) {
    return {natural_frequency(p),
            stage.amplitude * stage.omega * stage.omega / (2.0 * p.g),
            stage.omega};
}

std::vector<double> mathieu_resonance_frequencies(double omega0, int n_max) {
    if (n_max < 1) throw ValidationError("n_max must be >= 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) out.push_back(2.0 * omega0 / n);
    return out;
}

} // namespace dpend
