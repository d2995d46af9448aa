#pragma once
#include <stdexcept>
#include <string>
#include <vector>

namespace dpend {

/// Input or configuration rejected by an invariant check (CLI exit code 2).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure during integration or fitting (CLI exit code 3).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Physical constants of one ball/rod system.
struct PendulumParams {
    double m = 1.0;   ///< ball mass [kg]
    double l = 1.0;   ///< rod length [m]
    double r = 0.0;   ///< ball radius [m]
    double C = 0.0;   ///< damping coefficient [kg m/s]
    double g = 9.8;   ///< gravitational acceleration [m/s^2]

    /// Throws ValidationError unless m,l,g > 0, C >= 0 and 0 <= r < l.
    void validate() const;

    bool operator==(const PendulumParams&) const = default;
};

/// One segment of the pivot drive: y0 = A0 cos(omega t + phase) until t_end.
struct DriveStage {
    double amplitude = 0.0;  ///< A0 [m]
    double omega = 0.0;      ///< drive angular frequency [rad/s]
    double t_end = 0.0;      ///< stage end time [s]; last stage is unbounded

    bool operator==(const DriveStage&) const = default;
};

/// Piecewise sinusoidal vertical pivot motion. Phase offsets are chosen so
/// that the pivot position y0(t) is continuous at stage switches (the pivot
/// velocity may jump). Build through make() or single(); treat as immutable.
struct DriveSchedule {
    std::vector<DriveStage> stages;
    std::vector<double> phases;  ///< per-stage phase offset [rad]

    /// Single unbounded stage, zero phase.
    static DriveSchedule single(double amplitude, double omega);

    /// Validates stages (A0 >= 0, omega >= 0, strictly increasing end
    /// times) and computes continuity phases.
    static DriveSchedule make(std::vector<DriveStage> stages);

    /// Index of the stage active at time t.
    std::size_t stage_index(double t) const;

    bool operator==(const DriveSchedule&) const = default;
};

/// Instantaneous state of the reduced one-ball system.
struct State {
    double theta = 0.0;      ///< angle from downward vertical [rad]
    double theta_dot = 0.0;  ///< angular velocity [rad/s]
    double t = 0.0;          ///< time [s]

    bool finite() const;
};

/// Right-hand side of the first-order system (dtheta/dt, dtheta_dot/dt).
struct Deriv {
    double dtheta = 0.0;
    double dtheta_dot = 0.0;
};

/// Pivot kinematics at one instant.
struct DriveKinematics {
    double y = 0.0;     ///< pivot position [m]
    double ydot = 0.0;  ///< pivot velocity [m/s]
    double yddot = 0.0; ///< pivot acceleration [m/s^2]
};

/// Parameters of the equivalent parametrically modulated linear oscillator
/// x'' + (omega0^2 - 2 gamma omega0^2 cos(omega t)) x = 0.
struct MathieuParams {
    double omega0 = 0.0;  ///< natural frequency [rad/s]
    double gamma = 0.0;   ///< excitation strength (dimensionless)
    double omega = 0.0;   ///< drive frequency [rad/s]
};

/// omega0 = sqrt(g/l).
double natural_frequency(const PendulumParams& p);

/// Contact angles of the two-ball geometry: theta_min = asin(r/l),
/// theta_max = pi - theta_min. Throws ValidationError when r >= l.
struct CriticalAngles {
    double theta_min = 0.0;
    double theta_max = 0.0;
};
CriticalAngles critical_angles(const PendulumParams& p);

/// Pivot position, velocity, acceleration at time t.
DriveKinematics drive_kinematics(double t, const DriveSchedule& d);

/// Full nonlinear equation of motion:
/// theta'' = -(C/ml) theta' - ((g + y0'')/l) sin(theta).
Deriv eom_full(const State& s, const PendulumParams& p, const DriveSchedule& d);

/// Small-angle variant: sin(theta) replaced by theta.
Deriv eom_small_angle(const State& s, const PendulumParams& p,
                      const DriveSchedule& d);

/// Closed-form underdamped solution of the static-pivot small-angle
/// equation, released from theta0 at rest. Throws ValidationError in the
/// overdamped regime g/l <= (C/2ml)^2.
double analytic_underdamped(double t, double theta0, const PendulumParams& p);

/// Decay factor k = C/(2 m l) of the underdamped envelope.
double decay_factor(const PendulumParams& p);

/// Map a drive stage onto Mathieu parameters: gamma = A0 omega^2 / (2 g).
MathieuParams to_mathieu(const PendulumParams& p, const DriveStage& stage);

/// Parametric resonance frequencies 2 omega0 / n for n = 1..n_max.
std::vector<double> mathieu_resonance_frequencies(double omega0, int n_max);

} // namespace dpend
