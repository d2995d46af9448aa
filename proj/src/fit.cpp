#include "dpend/fit.hpp"

#include <cmath>

namespace dpend {

std::vector<Peak> extract_peaks(const std::vector<double>& t,
                                const std::vector<double>& theta) {
    if (t.size() != theta.size())
        throw ValidationError("t and theta series must have equal length");
    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < theta.size(); ++i) {
        if (!(theta[i] > theta[i - 1] && theta[i] > theta[i + 1])) continue;
        // parabolic refinement through the three samples around the maximum
        const double y0 = theta[i - 1], y1 = theta[i], y2 = theta[i + 1];
        const double denom = y0 - 2.0 * y1 + y2;
        double tp = t[i], yp = y1;
        if (denom < 0.0) {
            const double delta = 0.5 * (y0 - y2) / denom;  // in (-1, 1)
            const double dt = 0.5 * (t[i + 1] - t[i - 1]);
            tp = t[i] + delta * dt;
            yp = y1 - 0.25 * (y0 - y2) * delta;
        }
        peaks.push_back({tp, yp});
    }
    if (peaks.size() < 3)
        throw ValidationError("insufficient peaks: need at least 3 local maxima");
    return peaks;
}

DecayFit fit_envelope(const std::vector<Peak>& peaks) {
    if (peaks.size() < 3)
        throw ValidationError("insufficient peaks: need at least 3");
    const double n = static_cast<double>(peaks.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const Peak& pk : peaks) {
        if (!(pk.theta > 0.0))
            throw ValidationError("non-positive peak height: log-envelope undefined");
        const double y = std::log(pk.theta);
        sx += pk.t;
        sy += y;
        sxx += pk.t * pk.t;
        sxy += pk.t * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw ValidationError("degenerate peak times");
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    double ss = 0.0;
    for (const Peak& pk : peaks) {
        const double res = std::log(pk.theta) - (intercept + slope * pk.t);
        ss += res * res;
    }
    DecayFit fit;
    fit.k = -slope;
    fit.amplitude = std::exp(intercept);
    fit.rms = std::sqrt(ss / n);
    fit.n_peaks = peaks.size();
    return fit;
}

double damping_from_decay(double k, double m, double l) {
    if (k < 0.0) throw ValidationError("decay factor k must be non-negative");
    return 2.0 * m * l * k;
}

} // namespace dpend
