#pragma once
#include "dpend/core.hpp"

#include <vector>

namespace dpend {

/// Result of exponential-envelope fitting of a decaying angle series.
struct DecayFit {
    double amplitude = 0.0;   ///< envelope amplitude at t = 0 [rad]
    double k = 0.0;           ///< decay factor [1/s]
    double rms = 0.0;         ///< RMS of ln-peak residuals
    std::size_t n_peaks = 0;
};

struct Peak {
    double t = 0.0;
    double theta = 0.0;
};

/// Local maxima of theta(t) by 3-point comparison with parabolic sub-sample
/// refinement. Throws ValidationError when fewer than 3 maxima exist.
std::vector<Peak> extract_peaks(const std::vector<double>& t,
                                const std::vector<double>& theta);

/// Least-squares line fit of ln(theta_peak) vs t; k = -slope,
/// amplitude = exp(intercept). Throws ValidationError on fewer than 3 peaks
/// or any non-positive peak height.
DecayFit fit_envelope(const std::vector<Peak>& peaks);

/// C = 2 m l k, inverting the underdamped envelope exponent.
double damping_from_decay(double k, double m, double l);

} // namespace dpend
