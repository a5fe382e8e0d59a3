#pragma once

#include <array>
#include <cmath>
#include <string>

#include "gravbell/errors.hpp"
#include "gravbell/spacetime.hpp"

namespace gravbell {

enum class ArrayKind {
    Franson,
    FransonRotatedBalanced,
    Hugged,
    HuggedRotatedBalanced,
};

inline bool is_rotated(ArrayKind kind) {
    return kind == ArrayKind::FransonRotatedBalanced || kind == ArrayKind::HuggedRotatedBalanced;
}

inline bool is_hugged_family(ArrayKind kind) {
    return kind == ArrayKind::Hugged || kind == ArrayKind::HuggedRotatedBalanced;
}

inline const char* to_string(ArrayKind kind) {
    switch (kind) {
        case ArrayKind::Franson: return "franson";
        case ArrayKind::FransonRotatedBalanced: return "franson-rotated";
        case ArrayKind::Hugged: return "hugged";
        case ArrayKind::HuggedRotatedBalanced: return "hugged-rotated";
    }
    return "?";
}

/// Proper lengths of the four paths plus the target inter-detection offset.
/// l1/l1p are the full source-level paths gamma_1/gamma'_1; l2/l2p are the
/// horizontal segments of gamma_2/gamma'_2, each closed by two vertical legs
/// of proper height `height`.
///
/// `exact_balance` records that the geometry came out of one of the balancing
/// constructors, whose delay set is then evaluated from the per-kind
/// closed-form expressions instead of differences of ~1e-5 s flight times
/// (those would carry ~1e-21 s of rounding noise, far above the delays).
struct ArrayGeometry {
    ArrayKind kind = ArrayKind::Franson;
    double l1 = 0.0;                    // m
    double l1p = 0.0;                   // m
    double l2 = 0.0;                    // m
    double l2p = 0.0;                   // m
    double height = 0.0;                // m
    double post_selection_offset = 0.0; // s
    bool exact_balance = false;

    void validate() const {
        if (l1 < 0.0 || l1p < 0.0 || l2 < 0.0 || l2p < 0.0 || height < 0.0)
            throw NegativeExtent("all proper lengths must be >= 0");
        if (post_selection_offset < 0.0)
            throw InvalidParameter("post-selection offset must be >= 0");
    }
};

/// Path combinations relevant to post-selection, in the fixed order used by
/// DistinguishabilityReport.
enum class PathPair { G1G1p = 0, G2G2p = 1, G1G2p = 2, G2G1p = 3 };

inline const char* to_string(PathPair p) {
    switch (p) {
        case PathPair::G1G1p: return "(g1,g1')";
        case PathPair::G2G2p: return "(g2,g2')";
        case PathPair::G1G2p: return "(g1,g2')";
        case PathPair::G2G1p: return "(g2,g1')";
    }
    return "?";
}

/// Per-path proper flight times and the six pairwise differences, all in
/// seconds, with the convention dtau_ab = tau_a - tau_b.
struct PathDelaySet {
    ArrayKind kind = ArrayKind::Franson;
    double tau_g1 = 0.0;
    double tau_g2 = 0.0;
    double tau_g1p = 0.0;
    double tau_g2p = 0.0;

    double dtau_g1_g1p = 0.0;
    double dtau_g2_g2p = 0.0;
    double dtau_g1_g2 = 0.0;
    double dtau_g1p_g2p = 0.0;
    double dtau_g1_g2p = 0.0;
    double dtau_g2_g1p = 0.0;

    /// Inter-detection signature of each PathPair combination.
    double signature(PathPair p) const {
        switch (p) {
            case PathPair::G1G1p: return dtau_g1_g1p;
            case PathPair::G2G2p: return dtau_g2_g2p;
            case PathPair::G1G2p: return dtau_g1_g2p;
            case PathPair::G2G1p: return dtau_g2_g1p;
        }
        return 0.0;
    }
};

/// First-order gravitational delay g H L'2 / c^3 shared by all balanced
/// arrangements. Every caller must evaluate it through this one expression so
/// that identical inputs give bit-identical delays.
inline double gravitational_delay(const GravityModel& model, double l2p, double height) {
    return model.g * height * l2p / (model.c * model.c * model.c);
}

namespace detail {

// gH/c^2, the only potential factor entering the path formulas; also runs the
// weak-field guard over the full vertical span of the array.
inline double potential_factor(const GravityModel& model, double height, ArrayKind kind) {
    model.validate();
    const double span = is_hugged_family(kind) ? 2.0 * height : height;
    model.require_weak_field(model.reference_height + span);
    return model.g * height / (model.c * model.c);
}

} // namespace detail

/// Proper flight times of the four paths as measured by clocks at the
/// detectors, plus all pairwise delays.
///
/// Times follow the first-order expressions for each family:
///   Franson family:  tau_g2  = (1 - gH/c^2) L2 /c + 2H/c
///   Hugged family:   tau_g2  = (1 + gH/c^2) L2 /c + 2H/c,
///                    tau_g2p = (1 - gH/c^2) L2p/c + 2H/c
/// with tau_g1 = L1/c and tau_g1p = L1p/c in both.
///
/// For raw geometries the six delays are evaluated from difference
/// expressions with the geometric cancellation (L1 - L2 - 2H etc.) done
/// before dividing by c, which keeps them exact whenever the length algebra
/// is; for balancing-constructor geometries the per-kind closed forms are
/// used directly.
inline PathDelaySet path_proper_times(const ArrayGeometry& geometry, const GravityModel& model) {
    geometry.validate();
    const double c = model.c;
    const double eps = detail::potential_factor(model, geometry.height, geometry.kind);
    const bool hugged = is_hugged_family(geometry.kind);

    PathDelaySet d;
    d.kind = geometry.kind;
    d.tau_g1 = geometry.l1 / c;
    d.tau_g1p = geometry.l1p / c;
    if (hugged) {
        d.tau_g2 = (1.0 + eps) * geometry.l2 / c + 2.0 * geometry.height / c;
        d.tau_g2p = (1.0 - eps) * geometry.l2p / c + 2.0 * geometry.height / c;
    } else {
        d.tau_g2 = (1.0 - eps) * geometry.l2 / c + 2.0 * geometry.height / c;
        d.tau_g2p = (1.0 - eps) * geometry.l2p / c + 2.0 * geometry.height / c;
    }

    if (geometry.exact_balance) {
        const double grav = gravitational_delay(model, geometry.l2p, geometry.height);
        if (geometry.kind == ArrayKind::HuggedRotatedBalanced) {
            d.dtau_g1_g1p = 0.0;
            d.dtau_g2_g2p = 2.0 * grav;
            d.dtau_g1_g2 = -grav;
            d.dtau_g1p_g2p = grav;
        } else {
            d.dtau_g1_g1p = geometry.post_selection_offset;
            d.dtau_g2_g2p = geometry.post_selection_offset;
            d.dtau_g1_g2 = grav;
            d.dtau_g1p_g2p = grav;
        }
    } else {
        const double h2 = 2.0 * geometry.height;
        d.dtau_g1_g1p = (geometry.l1 - geometry.l1p) / c;
        if (hugged) {
            d.dtau_g2_g2p =
                ((geometry.l2 - geometry.l2p) + eps * (geometry.l2 + geometry.l2p)) / c;
            d.dtau_g1_g2 = (geometry.l1 - geometry.l2 - h2) / c - eps * geometry.l2 / c;
            d.dtau_g1p_g2p = (geometry.l1p - geometry.l2p - h2) / c + eps * geometry.l2p / c;
        } else {
            d.dtau_g2_g2p = (1.0 - eps) * (geometry.l2 - geometry.l2p) / c;
            d.dtau_g1_g2 = (geometry.l1 - geometry.l2 - h2) / c + eps * geometry.l2 / c;
            d.dtau_g1p_g2p = (geometry.l1p - geometry.l2p - h2) / c + eps * geometry.l2p / c;
        }
    }
    d.dtau_g1_g2p = d.dtau_g1_g1p + d.dtau_g1p_g2p;
    d.dtau_g2_g1p = d.dtau_g2_g2p - d.dtau_g1p_g2p;
    return d;
}

/// Geometry of a balanced Franson or Hugged array with independent parameters
/// (L'2, H, dtau). The dependent lengths are fixed so that the recomputed
/// delay set satisfies dtau_g1_g1p = dtau_g2_g2p = dtau and
/// dtau_g1_g2 = dtau_g1p_g2p = g H L'2 / c^3.
inline ArrayGeometry balance_geometry(ArrayKind kind, double l2p, double height, double dtau,
                                      const GravityModel& model) {
    if (is_rotated(kind))
        throw UnsupportedKind("balance_geometry handles only the non-rotated kinds; "
                              "use rotated_balanced_geometry");
    if (l2p < 0.0 || height < 0.0) throw NegativeExtent("L'2 and H must be >= 0");
    if (dtau < 0.0) throw InvalidParameter("dtau must be >= 0");
    const double eps = detail::potential_factor(model, height, kind);

    ArrayGeometry geo;
    geo.kind = kind;
    geo.l2p = l2p;
    geo.height = height;
    geo.post_selection_offset = dtau;
    geo.l1p = l2p + 2.0 * height;
    geo.l1 = geo.l1p + model.c * dtau;
    if (kind == ArrayKind::Hugged) {
        geo.l2 = ((1.0 - eps) * l2p + model.c * dtau) / (1.0 + eps);
    } else {
        geo.l2 = l2p + model.c * dtau / (1.0 - eps);
    }
    geo.exact_balance = true;
    return geo;
}

/// Geometry of a rotated, balanced, geometrically identical array: both
/// interferometers internally balanced (L1 = L2 + 2H as proper lengths, same
/// primed) with equal horizontal segments, so dtau = 0 and only gravitational
/// delays survive. For the Franson variant the cross-pair delays become
/// +-gHL'2/c^3; for the Hugged variant the arm delays take opposite signs and
/// dtau_g2_g2p = 2 gHL'2/c^3.
inline ArrayGeometry rotated_balanced_geometry(ArrayKind kind, double l2p, double height,
                                               const GravityModel& model) {
    if (!is_rotated(kind))
        throw UnsupportedKind("rotated_balanced_geometry handles only the rotated kinds; "
                              "use balance_geometry");
    if (l2p < 0.0 || height < 0.0) throw NegativeExtent("L'2 and H must be >= 0");
    detail::potential_factor(model, height, kind);

    ArrayGeometry geo;
    geo.kind = kind;
    geo.l2 = l2p;
    geo.l2p = l2p;
    geo.height = height;
    geo.l1 = l2p + 2.0 * height;
    geo.l1p = geo.l1;
    geo.post_selection_offset = 0.0;
    geo.exact_balance = true;
    return geo;
}

/// Unconstrained geometry from explicit lengths, used to probe arrangements
/// that the balancing constructors can not produce.
inline ArrayGeometry raw_geometry(ArrayKind kind, double l1, double l1p, double l2, double l2p,
                                  double height, double dtau = 0.0) {
    ArrayGeometry geo;
    geo.kind = kind;
    geo.l1 = l1;
    geo.l1p = l1p;
    geo.l2 = l2;
    geo.l2p = l2p;
    geo.height = height;
    geo.post_selection_offset = dtau;
    geo.exact_balance = false;
    geo.validate();
    return geo;
}

/// Whether the detection-time signatures allow separating the path
/// combinations within a given coincidence window.
struct DistinguishabilityReport {
    double window = 0.0;
    std::array<double, 4> signatures{};            // indexed by PathPair
    std::array<std::array<bool, 4>, 4> distinct{}; // |sig_i - sig_j| > window

    bool kept_pairs_indistinguishable = false; // (g1,g1') vs (g2,g2')
    bool cross_pairs_separated = false;        // both cross pairs vs both kept pairs
    bool separable_by_delay = false;
    bool local_post_selection = false; // Hugged topology: same-interferometer
                                       // double detections are discarded locally,
                                       // independent of arrival-time signatures.
                                       // Assumed from the kind, not derived.
    bool feasible = false;
};

inline DistinguishabilityReport classify_post_selection(const PathDelaySet& delays,
                                                        double coincidence_window = 1e-18) {
    if (coincidence_window < 0.0) throw InvalidParameter("coincidence window must be >= 0");
    DistinguishabilityReport report;
    report.window = coincidence_window;
    for (int i = 0; i < 4; ++i)
        report.signatures[static_cast<std::size_t>(i)] =
            delays.signature(static_cast<PathPair>(i));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            report.distinct[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                std::abs(report.signatures[static_cast<std::size_t>(i)] -
                         report.signatures[static_cast<std::size_t>(j)]) > coincidence_window;

    report.kept_pairs_indistinguishable = !report.distinct[0][1];
    report.cross_pairs_separated = report.distinct[0][2] && report.distinct[0][3] &&
                                   report.distinct[1][2] && report.distinct[1][3];
    report.separable_by_delay =
        report.kept_pairs_indistinguishable && report.cross_pairs_separated;
    report.local_post_selection = is_hugged_family(delays.kind);
    report.feasible = report.separable_by_delay || report.local_post_selection;
    return report;
}

} // namespace gravbell
