#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "gravbell/errors.hpp"
#include "gravbell/spacetime.hpp"

namespace gravbell {

/// Converts a wavelength band (lambda0, delta_lambda) into an angular
/// frequency width: sigma = 2 pi c (1/lambda_min - 1/lambda_max) with
/// lambda_min/max = lambda0 -+ delta_lambda/2.
inline double sigma_from_bandwidth(double lambda0, double delta_lambda, const GravityModel& model) {
    if (!(lambda0 > 0.0)) throw NonpositiveWavelength("central wavelength must be > 0");
    if (!(delta_lambda > 0.0)) throw InvalidParameter("bandwidth must be > 0");
    if (delta_lambda >= 2.0 * lambda0)
        throw BandwidthExceedsCarrier("bandwidth must be < 2 lambda0");
    const double lambda_min = lambda0 - 0.5 * delta_lambda;
    const double lambda_max = lambda0 + 0.5 * delta_lambda;
    return 2.0 * M_PI * model.c * (1.0 / lambda_min - 1.0 / lambda_max);
}

inline double omega_from_wavelength(double lambda, const GravityModel& model) {
    if (!(lambda > 0.0)) throw NonpositiveWavelength("wavelength must be > 0");
    return 2.0 * M_PI * model.c / lambda;
}

/// Gaussian marginal of one photon: amplitude width sigma around omega_bar.
/// The squared amplitude is treated as the probability density and is kept
/// normalized, so the density is a Gaussian of standard deviation sigma/sqrt2:
///   density(w) = exp(-(w - omega_bar)^2 / sigma^2) / (sigma sqrt(pi)).
struct GaussianSpectrum {
    double omega_bar = 0.0; // rad/s
    double sigma = 0.0;     // rad/s
    double lambda0 = 0.0;       // m, 0 when not built from a wavelength band
    double delta_lambda = 0.0;  // m

    GaussianSpectrum() = default;
    GaussianSpectrum(double omega_bar_, double sigma_) : omega_bar(omega_bar_), sigma(sigma_) {
        validate();
    }

    static GaussianSpectrum from_wavelength_band(double lambda0, double delta_lambda,
                                                 const GravityModel& model) {
        GaussianSpectrum s(omega_from_wavelength(lambda0, model),
                           sigma_from_bandwidth(lambda0, delta_lambda, model));
        s.lambda0 = lambda0;
        s.delta_lambda = delta_lambda;
        return s;
    }

    void validate() const {
        if (!(sigma > 0.0)) throw InvalidParameter("sigma must be > 0");
        if (!(omega_bar > 0.0)) throw InvalidParameter("omega_bar must be > 0");
    }

    /// Standard deviation of the density |f|^2.
    double density_stddev() const { return sigma / std::sqrt(2.0); }

    /// Normalized density over the whole real line.
    double density(double omega) const {
        const double u = (omega - omega_bar) / sigma;
        return std::exp(-u * u) / (sigma * std::sqrt(M_PI));
    }
};

/// Statistically independent marginals: |f(w1,w2)|^2 = |f1(w1)|^2 |f2(w2)|^2.
struct ProductSpectrum {
    GaussianSpectrum left;
    GaussianSpectrum right;
};

/// Dispersion-free source: a point mass at (omega1, omega2).
struct DeltaSpectrum {
    double omega1 = 0.0;
    double omega2 = 0.0;
};

/// Density tabulated on a rectangular grid, with trapezoid cell weights.
/// Outside the grid the density is zero.
struct TabulatedSpectrum {
    std::vector<double> omega1_axis;
    std::vector<double> omega2_axis;
    std::vector<double> density; // row-major: density[i1 * n2 + i2]
    std::vector<double> weight1; // trapezoid weights per axis point
    std::vector<double> weight2;

    std::size_t n1() const { return omega1_axis.size(); }
    std::size_t n2() const { return omega2_axis.size(); }

    double at(std::size_t i1, std::size_t i2) const { return density[i1 * n2() + i2]; }

    /// Total discrete mass sum_ij density_ij w1_i w2_j.
    double total_mass() const {
        double sum = 0.0;
        for (std::size_t i = 0; i < n1(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n2(); ++j) row += at(i, j) * weight2[j];
            sum += row * weight1[i];
        }
        return sum;
    }

    static std::vector<double> trapezoid_weights(const std::vector<double>& axis) {
        const std::size_t n = axis.size();
        std::vector<double> w(n, 1.0);
        if (n == 1) return w; // single point: unit weight, pure point mass
        for (std::size_t i = 0; i < n; ++i) {
            const double left = (i == 0) ? axis[0] : axis[i - 1];
            const double right = (i + 1 == n) ? axis[n - 1] : axis[i + 1];
            w[i] = 0.5 * (right - left);
        }
        return w;
    }

    /// Builds the spectrum from raw samples and normalizes the discrete mass
    /// to one; rejects grids whose mass is off by more than `tolerance`
    /// before the final renormalization.
    static TabulatedSpectrum from_samples(std::vector<double> omega1_axis,
                                          std::vector<double> omega2_axis,
                                          std::vector<double> density,
                                          double tolerance = 1e-6) {
        TabulatedSpectrum t;
        t.omega1_axis = std::move(omega1_axis);
        t.omega2_axis = std::move(omega2_axis);
        t.density = std::move(density);
        if (t.density.size() != t.n1() * t.n2())
            throw InvalidParameter("tabulated spectrum: grid size mismatch");
        if (t.n1() == 0 || t.n2() == 0)
            throw InvalidParameter("tabulated spectrum: empty grid");
        for (std::size_t i = 1; i < t.n1(); ++i)
            if (t.omega1_axis[i] <= t.omega1_axis[i - 1])
                throw InvalidParameter("tabulated spectrum: omega1 axis not increasing");
        for (std::size_t i = 1; i < t.n2(); ++i)
            if (t.omega2_axis[i] <= t.omega2_axis[i - 1])
                throw InvalidParameter("tabulated spectrum: omega2 axis not increasing");
        for (double d : t.density)
            if (d < 0.0) throw InvalidParameter("tabulated spectrum: negative density");
        t.weight1 = trapezoid_weights(t.omega1_axis);
        t.weight2 = trapezoid_weights(t.omega2_axis);
        const double mass = t.total_mass();
        if (!(mass > 0.0)) throw NormalizationError("tabulated spectrum: zero mass");
        if (tolerance >= 0.0 && std::abs(mass - 1.0) > tolerance)
            throw NormalizationError("tabulated spectrum: mass " + std::to_string(mass) +
                                     " deviates from 1 beyond tolerance");
        for (double& d : t.density) d /= mass;
        return t;
    }

    /// Reads the plain-text format: a header line `omega1 omega2 density`
    /// followed by whitespace-separated rows covering a full rectangular
    /// grid, SI units.
    static TabulatedSpectrum load(std::istream& in, double tolerance = 1e-6) {
        std::string header;
        if (!std::getline(in, header)) throw FileFormatError("spectrum file: empty input");
        std::istringstream hs(header);
        std::string h1, h2, h3;
        hs >> h1 >> h2 >> h3;
        if (h1 != "omega1" || h2 != "omega2" || h3 != "density")
            throw FileFormatError("spectrum file: header must be 'omega1 omega2 density'");

        std::vector<double> w1s, w2s, ds;
        double a = 0.0, b = 0.0, d = 0.0;
        while (in >> a >> b >> d) {
            w1s.push_back(a);
            w2s.push_back(b);
            ds.push_back(d);
        }
        if (!in.eof()) throw FileFormatError("spectrum file: malformed numeric row");
        if (ds.empty()) throw FileFormatError("spectrum file: no data rows");

        std::vector<double> axis1 = w1s, axis2 = w2s;
        std::sort(axis1.begin(), axis1.end());
        axis1.erase(std::unique(axis1.begin(), axis1.end()), axis1.end());
        std::sort(axis2.begin(), axis2.end());
        axis2.erase(std::unique(axis2.begin(), axis2.end()), axis2.end());
        if (axis1.size() * axis2.size() != ds.size())
            throw FileFormatError("spectrum file: rows do not cover a rectangular grid");

        std::vector<double> grid(ds.size(), -1.0);
        const auto index_of = [](const std::vector<double>& axis, double v) {
            return static_cast<std::size_t>(
                std::lower_bound(axis.begin(), axis.end(), v) - axis.begin());
        };
        for (std::size_t k = 0; k < ds.size(); ++k) {
            const std::size_t i = index_of(axis1, w1s[k]);
            const std::size_t j = index_of(axis2, w2s[k]);
            grid[i * axis2.size() + j] = ds[k];
        }
        for (double v : grid)
            if (v < 0.0) throw FileFormatError("spectrum file: duplicate or missing grid rows");
        return from_samples(std::move(axis1), std::move(axis2), std::move(grid), tolerance);
    }

    static TabulatedSpectrum load_file(const std::string& path, double tolerance = 1e-6) {
        std::ifstream in(path);
        if (!in) throw FileFormatError("cannot open spectrum file: " + path);
        return load(in, tolerance);
    }
};

using JointSpectrum = std::variant<ProductSpectrum, DeltaSpectrum, TabulatedSpectrum>;

/// Pointwise squared-amplitude density. For the delta variant the density is
/// singular: infinity on the atom, zero elsewhere. Tabulated spectra return
/// zero outside their grid support.
inline double joint_density(const JointSpectrum& spectrum, double omega1, double omega2) {
    if (const auto* p = std::get_if<ProductSpectrum>(&spectrum))
        return p->left.density(omega1) * p->right.density(omega2);
    if (const auto* d = std::get_if<DeltaSpectrum>(&spectrum))
        return (omega1 == d->omega1 && omega2 == d->omega2)
                   ? std::numeric_limits<double>::infinity()
                   : 0.0;
    const auto& t = std::get<TabulatedSpectrum>(spectrum);
    if (omega1 < t.omega1_axis.front() || omega1 > t.omega1_axis.back() ||
        omega2 < t.omega2_axis.front() || omega2 > t.omega2_axis.back())
        return 0.0;
    // nearest grid point; tabulated support is a discrete measure
    const auto nearest = [](const std::vector<double>& axis, double v) {
        auto it = std::lower_bound(axis.begin(), axis.end(), v);
        if (it == axis.end()) return axis.size() - 1;
        std::size_t i = static_cast<std::size_t>(it - axis.begin());
        if (i > 0 && v - axis[i - 1] < axis[i] - v) --i;
        return i;
    };
    return t.at(nearest(t.omega1_axis, omega1), nearest(t.omega2_axis, omega2));
}

/// Discretizes a product of Gaussian marginals onto a uniform rectangular
/// grid spanning +-`half_width` density standard deviations per axis,
/// truncated at omega = 0 and renormalized. Sources broader than
/// sigma > 0.9 omega_bar are rejected: their negative-frequency mass makes
/// the truncated grid a poor stand-in for the analytic density.
inline TabulatedSpectrum make_tabulated_gaussian(const GaussianSpectrum& left,
                                                 const GaussianSpectrum& right,
                                                 std::size_t points_per_axis = 201,
                                                 double half_width = 6.0) {
    left.validate();
    right.validate();
    if (points_per_axis < 2) throw InvalidParameter("grid needs at least 2 points per axis");
    for (const GaussianSpectrum* s : {&left, &right})
        if (s->sigma > 0.9 * s->omega_bar)
            throw InvalidParameter("sigma > 0.9 omega_bar: truncated grid unusable");

    const auto axis = [&](const GaussianSpectrum& s) {
        const double lo = std::max(0.0, s.omega_bar - half_width * s.density_stddev());
        const double hi = s.omega_bar + half_width * s.density_stddev();
        std::vector<double> a(points_per_axis);
        for (std::size_t i = 0; i < points_per_axis; ++i)
            a[i] = lo + (hi - lo) * static_cast<double>(i) /
                            static_cast<double>(points_per_axis - 1);
        return a;
    };
    std::vector<double> a1 = axis(left);
    std::vector<double> a2 = axis(right);
    std::vector<double> density(points_per_axis * points_per_axis);
    for (std::size_t i = 0; i < points_per_axis; ++i)
        for (std::size_t j = 0; j < points_per_axis; ++j)
            density[i * points_per_axis + j] = left.density(a1[i]) * right.density(a2[j]);
    return TabulatedSpectrum::from_samples(std::move(a1), std::move(a2), std::move(density),
                                           -1.0 /* renormalize without checking */);
}

} // namespace gravbell
