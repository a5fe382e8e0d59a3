#pragma once

#include <cmath>

#include "gravbell/errors.hpp"
#include "gravbell/quantum.hpp"
#include "gravbell/spacetime.hpp"
#include "gravbell/spectra.hpp"

namespace gravbell {

/// Tsirelson bound 2 sqrt(2).
inline const double tsirelson_bound = 2.0 * std::sqrt(2.0);

/// The four analyzer phases of a CHSH run.
struct PhaseSettings {
    double alpha = 0.0;
    double beta = 0.0;
    double alpha_p = 0.0;
    double beta_p = 0.0;

    /// Optimal set for a maximally entangled state: (pi/4, 0, -pi/4, -pi/2).
    static PhaseSettings canonical() {
        return {M_PI / 4.0, 0.0, -M_PI / 4.0, -M_PI / 2.0};
    }
};

struct ChshResult {
    double sigma = 0.0; // signed functional value
    double e_ab = 0.0;
    double e_apb = 0.0;
    double e_abp = 0.0;
    double e_apbp = 0.0;
    double visibility = 0.0; // fringe amplitude of E over the phase settings
    bool violated = false;   // |sigma| > 2, strict
};

/// Dichotomic expectation value E = p_pp + p_mm - p_pm - p_mp.
inline double correlation(const DetectionProbabilities& p) {
    return p.p_pp + p.p_mm - p.p_pm - p.p_mp;
}

/// CHSH functional from the four quadrature correlations:
/// sigma = E(a,b) + E(a',b) + E(a,b') - E(a',b').
inline ChshResult sigma_general(double delta_tau_12, double delta_tau_1p2p,
                                const JointSpectrum& spectrum, const PhaseSettings& settings,
                                const QuadratureOptions& options = {}) {
    const auto [c, s] = fringe_integrals(spectrum, delta_tau_12, delta_tau_1p2p, options);
    const auto expectation = [&](double alpha, double beta) {
        const double phi = alpha + beta;
        return correlation(detail::probabilities_from_fringe(c * std::cos(phi) -
                                                             s * std::sin(phi)));
    };
    ChshResult result;
    result.e_ab = expectation(settings.alpha, settings.beta);
    result.e_apb = expectation(settings.alpha_p, settings.beta);
    result.e_abp = expectation(settings.alpha, settings.beta_p);
    result.e_apbp = expectation(settings.alpha_p, settings.beta_p);
    result.sigma = result.e_ab + result.e_apb + result.e_abp - result.e_apbp;
    result.visibility = std::hypot(c, s);
    result.violated = std::abs(result.sigma) > 2.0;
    return result;
}

inline ChshResult sigma_general(const PathDelaySet& delays, const JointSpectrum& spectrum,
                                const PhaseSettings& settings,
                                const QuadratureOptions& options = {}) {
    return sigma_general(delays.dtau_g1_g2, delays.dtau_g1p_g2p, spectrum, settings, options);
}

/// Balanced Franson/Hugged array at the canonical settings:
/// sigma = 2 sqrt2 exp(-dt^2 (s1^2 + s2^2)/4) |cos(dt (w1 + w2))|.
inline double sigma_balanced(double delta_tau, double sigma1, double sigma2, double omega1,
                             double omega2) {
    const double v = visibility(delta_tau, delta_tau, sigma1, sigma2);
    return tsirelson_bound * v * std::abs(std::cos(delta_tau * (omega1 + omega2)));
}

/// Rotated balanced Hugged array: opposite-sign arm delays turn the harmonic
/// factor into |cos(dt (w1 - w2))|; equal frequencies leave the bare envelope.
inline double sigma_rotated_hugged(double delta_tau, double sigma1, double sigma2, double omega1,
                                   double omega2) {
    const double v = visibility(delta_tau, delta_tau, sigma1, sigma2);
    return tsirelson_bound * v * std::abs(std::cos(delta_tau * (omega1 - omega2)));
}

/// Local phases referenced to the per-arm delays at the mean frequencies:
/// the harmonic factor drops and only the dispersion envelope remains.
inline double sigma_phase_compensated(double delta_tau_12, double delta_tau_1p2p, double sigma1,
                                      double sigma2) {
    return tsirelson_bound * visibility(delta_tau_12, delta_tau_1p2p, sigma1, sigma2);
}

/// Classical-light counterpart: one quarter of the quantum functional, never
/// above sqrt2/2.
inline double sigma_classical(double delta_tau_12, double delta_tau_1p2p, double sigma1,
                              double sigma2, double omega1, double omega2) {
    const double v = visibility(delta_tau_12, delta_tau_1p2p, sigma1, sigma2);
    return 0.25 * tsirelson_bound * v *
           std::abs(std::cos(omega1 * delta_tau_12 + omega2 * delta_tau_1p2p));
}

/// Proper area above which the dispersion envelope alone pushes sigma below
/// 2: A* = sqrt(ln 4) c^3 / (g sqrt(s1^2 + s2^2)).
inline double critical_area(double sigma1, double sigma2, const GravityModel& model) {
    if (!(sigma1 > 0.0 && sigma2 > 0.0)) throw InvalidParameter("sigmas must be > 0");
    model.validate();
    if (model.g == 0.0) throw ZeroGravity("no finite critical area without gravity");
    return std::sqrt(std::log(4.0)) * model.c * model.c * model.c /
           (model.g * std::hypot(sigma1, sigma2));
}

} // namespace gravbell
