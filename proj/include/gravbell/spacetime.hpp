#pragma once

#include <cmath>
#include <string>

#include "gravbell/errors.hpp"

namespace gravbell {

/// Uniform weak-field model: Newtonian potential phi(z) = g (z - R), zero at
/// the reference height R. All first-order formulas below assume
/// |phi|/c^2 << 1; heights where g|z - R|/c^2 > 1e-3 are rejected outright.
struct GravityModel {
    double g = 9.81;                    // surface acceleration, m/s^2
    double c = 299792458.0;             // speed of light, m/s
    double reference_height = 0.0;      // R, m

    static constexpr double weak_field_limit = 1e-3;

    void validate() const {
        if (!(g >= 0.0)) throw InvalidParameter("GravityModel: g must be >= 0");
        if (!(c > 0.0)) throw InvalidParameter("GravityModel: c must be > 0");
    }

    /// phi(z)/c^2, dimensionless.
    double potential_over_c2(double z) const { return g * (z - reference_height) / (c * c); }

    void require_weak_field(double z) const {
        validate();
        const double x = std::abs(potential_over_c2(z));
        if (x > weak_field_limit)
            throw WeakFieldViolation("height z = " + std::to_string(z) +
                                     " m has |phi|/c^2 = " + std::to_string(x) +
                                     ", outside the weak-field regime");
    }
};

/// Newtonian potential phi(z) = g (z - R), m^2/s^2.
inline double potential(const GravityModel& model, double z) {
    model.require_weak_field(z);
    return model.g * (z - model.reference_height);
}

/// Proper length of a horizontal coordinate extent dx at height z:
/// L = (1 - phi(z)/c^2) dx, first order in phi/c^2.
inline double proper_length_horizontal(const GravityModel& model, double coordinate_extent,
                                       double z) {
    if (coordinate_extent < 0.0) throw NegativeExtent("horizontal extent must be >= 0");
    model.require_weak_field(z);
    return (1.0 - model.potential_over_c2(z)) * coordinate_extent;
}

/// Proper height of a vertical coordinate extent h starting at z_base:
/// H = (1 - phi(z_base)/c^2) h, first order in h.
inline double proper_height(const GravityModel& model, double coordinate_height, double z_base) {
    if (coordinate_height < 0.0) throw NegativeExtent("vertical extent must be >= 0");
    model.require_weak_field(z_base);
    return (1.0 - model.potential_over_c2(z_base)) * coordinate_height;
}

/// Coordinate time for a horizontal null segment of proper length L at height
/// z: dt = (L/c)(1 - phi(z)/c^2).
inline double coord_time_horizontal(const GravityModel& model, double proper_length, double z) {
    if (proper_length < 0.0) throw NegativeExtent("proper length must be >= 0");
    model.require_weak_field(z);
    return proper_length / model.c * (1.0 - model.potential_over_c2(z));
}

/// Coordinate time for a vertical null segment of coordinate height h above
/// z_base: dt = (h/c)(1 - 2 phi(z_base)/c^2), first order in h.
inline double coord_time_vertical(const GravityModel& model, double coordinate_height,
                                  double z_base) {
    if (coordinate_height < 0.0) throw NegativeExtent("vertical extent must be >= 0");
    model.require_weak_field(z_base);
    model.require_weak_field(z_base + coordinate_height);
    return coordinate_height / model.c * (1.0 - 2.0 * model.potential_over_c2(z_base));
}

/// Proper time elapsed on a static clock at z_observer over coordinate time
/// dt: dtau = (1 + phi(z_observer)/c^2) dt.
inline double proper_time_at_observer(const GravityModel& model, double coordinate_time,
                                      double z_observer) {
    model.require_weak_field(z_observer);
    return (1.0 + model.potential_over_c2(z_observer)) * coordinate_time;
}

} // namespace gravbell
