#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <utility>

#include "gravbell/arrays.hpp"
#include "gravbell/errors.hpp"
#include "gravbell/quadrature.hpp"
#include "gravbell/spectra.hpp"

namespace gravbell {

/// Local analyzer phases at the left/right beam splitters.
struct PhasePair {
    double alpha = 0.0;
    double beta = 0.0;
};

/// Joint detection probabilities over the post-selected ensemble, indexed by
/// the +- output ports of the two interferometers.
struct DetectionProbabilities {
    double p_pp = 0.0;
    double p_pm = 0.0;
    double p_mp = 0.0;
    double p_mm = 0.0;

    double sum() const { return p_pp + p_pm + p_mp + p_mm; }
};

/// Two-photon visibility under Gaussian dispersion:
/// V = exp(-(dt12^2 sigma1^2 + dt1p2p^2 sigma2^2) / 4).
inline double visibility(double delta_tau_12, double delta_tau_1p2p, double sigma1,
                         double sigma2) {
    if (!(sigma1 > 0.0 && sigma2 > 0.0)) throw InvalidParameter("sigmas must be > 0");
    const double a = delta_tau_12 * sigma1;
    const double b = delta_tau_1p2p * sigma2;
    return std::exp(-0.25 * (a * a + b * b));
}

namespace detail {

inline DetectionProbabilities probabilities_from_fringe(double fringe) {
    const double f = std::clamp(fringe, -1.0, 1.0);
    DetectionProbabilities p;
    p.p_pp = 0.25 * (1.0 + f);
    p.p_mm = p.p_pp;
    p.p_pm = 0.25 * (1.0 - f);
    p.p_mp = p.p_pm;
    return p;
}

} // namespace detail

/// Closed form for product-Gaussian marginals:
/// p_ij = 1/4 (1 - (-1)^{delta_ij} V cos(dt12 w1 + dt1p2p w2 + alpha + beta)).
inline DetectionProbabilities probability_gaussian(double delta_tau_12, double delta_tau_1p2p,
                                                   const GaussianSpectrum& left,
                                                   const GaussianSpectrum& right,
                                                   const PhasePair& phases) {
    left.validate();
    right.validate();
    const double v = visibility(delta_tau_12, delta_tau_1p2p, left.sigma, right.sigma);
    const double phase = delta_tau_12 * left.omega_bar + delta_tau_1p2p * right.omega_bar +
                         phases.alpha + phases.beta;
    return detail::probabilities_from_fringe(v * std::cos(phase));
}

struct QuadratureOptions {
    double tolerance = 1e-9;
    int min_order = 16;
    int max_order = 1024;
    double half_width_sigmas = 6.0; // integration box half-width per axis
};

/// Fringe integrals C = int |f|^2 cos(w1 a + w2 b), S = likewise with sin,
/// normalized against the joint density over the same domain. Every phase
/// setting then follows from C and S by angle addition.
inline std::pair<double, double> fringe_integrals(const JointSpectrum& spectrum, double a,
                                                  double b,
                                                  const QuadratureOptions& options = {}) {
    if (const auto* d = std::get_if<DeltaSpectrum>(&spectrum)) {
        const double phase = d->omega1 * a + d->omega2 * b;
        return {std::cos(phase), std::sin(phase)};
    }
    if (const auto* t = std::get_if<TabulatedSpectrum>(&spectrum)) {
        double c_sum = 0.0, s_sum = 0.0, mass = 0.0;
        for (std::size_t i = 0; i < t->n1(); ++i) {
            const double pa = t->omega1_axis[i] * a;
            for (std::size_t j = 0; j < t->n2(); ++j) {
                const double w = t->at(i, j) * t->weight1[i] * t->weight2[j];
                const double phase = pa + t->omega2_axis[j] * b;
                c_sum += w * std::cos(phase);
                s_sum += w * std::sin(phase);
                mass += w;
            }
        }
        if (!(mass > 0.0)) throw NormalizationError("tabulated spectrum has zero mass");
        return {c_sum / mass, s_sum / mass};
    }

    const auto& p = std::get<ProductSpectrum>(spectrum);
    p.left.validate();
    p.right.validate();
    const double lo1 = std::max(0.0, p.left.omega_bar - options.half_width_sigmas * p.left.sigma);
    const double hi1 = p.left.omega_bar + options.half_width_sigmas * p.left.sigma;
    const double lo2 =
        std::max(0.0, p.right.omega_bar - options.half_width_sigmas * p.right.sigma);
    const double hi2 = p.right.omega_bar + options.half_width_sigmas * p.right.sigma;

    // Tensor-product Gauss-Legendre, order-doubling until C and S settle.
    const auto evaluate = [&](int order) {
        const GaussLegendreRule& rule = gauss_legendre(order);
        const double mid1 = 0.5 * (lo1 + hi1), half1 = 0.5 * (hi1 - lo1);
        const double mid2 = 0.5 * (lo2 + hi2), half2 = 0.5 * (hi2 - lo2);
        double c_sum = 0.0, s_sum = 0.0, mass = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double w1 = mid1 + half1 * rule.nodes[i];
            const double rho1 = p.left.density(w1);
            const double pa = w1 * a;
            double row_c = 0.0, row_s = 0.0, row_m = 0.0;
            for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                const double w2 = mid2 + half2 * rule.nodes[j];
                const double w = rule.weights[j] * p.right.density(w2);
                const double phase = pa + w2 * b;
                row_c += w * std::cos(phase);
                row_s += w * std::sin(phase);
                row_m += w;
            }
            c_sum += rule.weights[i] * rho1 * row_c;
            s_sum += rule.weights[i] * rho1 * row_s;
            mass += rule.weights[i] * rho1 * row_m;
        }
        return std::array<double, 3>{c_sum, s_sum, mass};
    };

    std::array<double, 3> prev = evaluate(options.min_order);
    for (int order = 2 * options.min_order; order <= options.max_order; order *= 2) {
        const std::array<double, 3> cur = evaluate(order);
        const double dc = std::abs(cur[0] / cur[2] - prev[0] / prev[2]);
        const double ds = std::abs(cur[1] / cur[2] - prev[1] / prev[2]);
        if (dc < options.tolerance && ds < options.tolerance)
            return {cur[0] / cur[2], cur[1] / cur[2]};
        prev = cur;
    }
    throw QuadratureNotConverged("fringe integral did not settle within the order budget");
}

/// Detection probabilities by numerical integration of
/// p_ij = 1/4 (1 - (-1)^{delta_ij} int |f|^2 cos(w1 dt12 + w2 dt1p2p + a + b)).
inline DetectionProbabilities probability_quadrature(double delta_tau_12, double delta_tau_1p2p,
                                                     const JointSpectrum& spectrum,
                                                     const PhasePair& phases,
                                                     const QuadratureOptions& options = {}) {
    const auto [c, s] = fringe_integrals(spectrum, delta_tau_12, delta_tau_1p2p, options);
    const double phi = phases.alpha + phases.beta;
    return detail::probabilities_from_fringe(c * std::cos(phi) - s * std::sin(phi));
}

/// Amplitude-level computation on a discretized frequency grid: the two
/// equal-elapsed-time branches of the post-selected two-photon state are
/// carried per grid point, combined through the +- signs of the output beam
/// splitters, and the projector sums |amplitude|^2 normalized over the four
/// ports. The common per-frequency factor exp(-i(w1 (tau_g1p + dtau) +
/// w2 tau_g1p)) multiplies both branches and drops from every |amplitude|^2,
/// so only the inter-branch phase w1 dt12 + w2 dt1p2p enters.
///
/// Requires the indistinguishability condition dtau_g1_g1p = dtau_g2_g2p =
/// dtau; the post-selection offset is then a global phase and the result is
/// independent of it.
inline DetectionProbabilities probability_amplitude_oracle(const PathDelaySet& path_times,
                                                           double dtau, const PhasePair& phases,
                                                           const TabulatedSpectrum& grid) {
    constexpr double condition_tolerance = 1e-30;
    if (std::abs(path_times.dtau_g1_g1p - dtau) > condition_tolerance ||
        std::abs(path_times.dtau_g2_g2p - dtau) > condition_tolerance)
        throw IndistinguishabilityViolated(
            "path times do not satisfy dtau_g1_g1p = dtau_g2_g2p = dtau");

    // Spacing guard against under-resolved densities: the amplitude width
    // sigma is sqrt(2) times the discrete standard deviation of each marginal.
    const auto check_axis = [&](const std::vector<double>& axis, const std::vector<double>& w,
                                bool first_axis) {
        if (axis.size() < 2) return;
        double mass = 0.0, mean = 0.0;
        for (std::size_t i = 0; i < axis.size(); ++i) {
            double m = 0.0;
            for (std::size_t j = 0; j < (first_axis ? grid.n2() : grid.n1()); ++j)
                m += (first_axis ? grid.at(i, j) * grid.weight2[j]
                                 : grid.at(j, i) * grid.weight1[j]);
            m *= w[i];
            mass += m;
            mean += m * axis[i];
        }
        mean /= mass;
        double var = 0.0;
        for (std::size_t i = 0; i < axis.size(); ++i) {
            double m = 0.0;
            for (std::size_t j = 0; j < (first_axis ? grid.n2() : grid.n1()); ++j)
                m += (first_axis ? grid.at(i, j) * grid.weight2[j]
                                 : grid.at(j, i) * grid.weight1[j]);
            m *= w[i];
            var += m * (axis[i] - mean) * (axis[i] - mean);
        }
        var /= mass;
        const double sigma = std::sqrt(2.0 * var);
        double max_spacing = 0.0;
        for (std::size_t i = 1; i < axis.size(); ++i)
            max_spacing = std::max(max_spacing, axis[i] - axis[i - 1]);
        if (max_spacing > sigma / 20.0)
            throw GridTooCoarse("grid spacing exceeds sigma/20");
    };
    check_axis(grid.omega1_axis, grid.weight1, true);
    check_axis(grid.omega2_axis, grid.weight2, false);

    const double phi = phases.alpha + phases.beta;
    double same_port = 0.0;     // (+,+) and (-,-): branch signs +1, +1
    double opposite_port = 0.0; // (+,-) and (-,+): branch signs +1, -1
    for (std::size_t i = 0; i < grid.n1(); ++i) {
        const double pa = grid.omega1_axis[i] * path_times.dtau_g1_g2;
        for (std::size_t j = 0; j < grid.n2(); ++j) {
            const double weight = grid.at(i, j) * grid.weight1[i] * grid.weight2[j];
            if (weight == 0.0) continue;
            const double theta = pa + grid.omega2_axis[j] * path_times.dtau_g1p_g2p + phi;
            const std::complex<double> branch(std::cos(theta), std::sin(theta));
            same_port += weight * std::norm(1.0 + branch);
            opposite_port += weight * std::norm(1.0 - branch);
        }
    }
    const double total = 2.0 * (same_port + opposite_port);
    if (!(total > 0.0)) throw NormalizationError("post-selected state has zero norm");

    DetectionProbabilities p;
    p.p_pp = same_port / total;
    p.p_mm = p.p_pp;
    p.p_pm = opposite_port / total;
    p.p_mp = p.p_pm;
    return p;
}

} // namespace gravbell
