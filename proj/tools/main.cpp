// Command-line front end: geometry/delay inspection, detection
// probabilities, figure-style parameter sweeps, and CSV emission.
//
// Exit codes: 0 success, 2 usage error, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gravbell/gravbell.hpp"

namespace {

using namespace gravbell;

std::string fmt(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw FileFormatError("cannot open output file: " + path);
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

ArrayKind parse_kind(const std::string& name) {
    if (name == "franson") return ArrayKind::Franson;
    if (name == "franson-rotated") return ArrayKind::FransonRotatedBalanced;
    if (name == "hugged") return ArrayKind::Hugged;
    if (name == "hugged-rotated") return ArrayKind::HuggedRotatedBalanced;
    throw CLI::ValidationError("--kind", "unknown array kind: " + name);
}

struct GeometryFlags {
    std::string kind = "franson";
    double l2p = 1e4;
    double height = 1e4;
    double dtau = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--kind", kind, "array kind")
            ->check(CLI::IsMember({"franson", "franson-rotated", "hugged", "hugged-rotated"}))
            ->capture_default_str();
        cmd->add_option("--l2p", l2p, "proper length L'2 of the primed horizontal segment, m")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        cmd->add_option("--height", height, "proper height H of the vertical segments, m")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        cmd->add_option("--dtau", dtau,
                        "post-selection offset between paired detections, s "
                        "(must stay 0 for rotated kinds)")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
    }

    ArrayGeometry build(const GravityModel& model) const {
        const ArrayKind k = parse_kind(kind);
        if (is_rotated(k)) {
            if (dtau != 0.0)
                throw CLI::ValidationError("--dtau", "rotated kinds fix dtau = 0");
            return rotated_balanced_geometry(k, l2p, height, model);
        }
        return balance_geometry(k, l2p, height, dtau, model);
    }
};

struct SpectrumFlags {
    double lambda1 = 806e-9;
    double dlambda1 = 644.8e-9;
    double lambda2 = 706e-9;
    double dlambda2 = 644.8e-9;

    void attach(CLI::App* cmd) {
        cmd->add_option("--lambda1", lambda1, "central wavelength of the left photon, m")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--dlambda1", dlambda1, "wavelength bandwidth of the left photon, m")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--lambda2", lambda2, "central wavelength of the right photon, m")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--dlambda2", dlambda2, "wavelength bandwidth of the right photon, m")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    }

    GaussianSpectrum left(const GravityModel& model) const {
        return GaussianSpectrum::from_wavelength_band(lambda1, dlambda1, model);
    }
    GaussianSpectrum right(const GravityModel& model) const {
        return GaussianSpectrum::from_wavelength_band(lambda2, dlambda2, model);
    }
};

// ---------------------------------------------------------------- delays --

int cmd_delays(const GravityModel& model, const GeometryFlags& gf, double window,
               const std::string& out_path) {
    const ArrayGeometry geo = gf.build(model);
    const PathDelaySet d = path_proper_times(geo, model);
    const DistinguishabilityReport report = classify_post_selection(d, window);

    std::cout << "kind              = " << to_string(geo.kind) << '\n'
              << "L1                = " << fmt(geo.l1) << " m\n"
              << "L1'               = " << fmt(geo.l1p) << " m\n"
              << "L2                = " << fmt(geo.l2) << " m\n"
              << "L2'               = " << fmt(geo.l2p) << " m\n"
              << "H                 = " << fmt(geo.height) << " m\n"
              << "dtau              = " << fmt(geo.post_selection_offset) << " s\n"
              << "tau_g1            = " << fmt(d.tau_g1) << " s\n"
              << "tau_g2            = " << fmt(d.tau_g2) << " s\n"
              << "tau_g1'           = " << fmt(d.tau_g1p) << " s\n"
              << "tau_g2'           = " << fmt(d.tau_g2p) << " s\n"
              << "dtau_g1_g1'       = " << fmt(d.dtau_g1_g1p) << " s\n"
              << "dtau_g2_g2'       = " << fmt(d.dtau_g2_g2p) << " s\n"
              << "dtau_g1_g2        = " << fmt(d.dtau_g1_g2) << " s\n"
              << "dtau_g1'_g2'      = " << fmt(d.dtau_g1p_g2p) << " s\n"
              << "dtau_g1_g2'       = " << fmt(d.dtau_g1_g2p) << " s\n"
              << "dtau_g2_g1'       = " << fmt(d.dtau_g2_g1p) << " s\n"
              << "window            = " << fmt(window) << " s\n"
              << "separable_by_delay   = " << (report.separable_by_delay ? "true" : "false")
              << '\n'
              << "local_post_selection = " << (report.local_post_selection ? "true" : "false")
              << '\n'
              << "post_selection_feasible = " << (report.feasible ? "true" : "false") << '\n';

    if (!out_path.empty()) {
        CsvWriter csv(out_path);
        csv.row({"kind", "l1_m", "l1p_m", "l2_m", "l2p_m", "height_m", "dtau_s", "tau_g1_s",
                 "tau_g2_s", "tau_g1p_s", "tau_g2p_s", "dtau_g1_g1p_s", "dtau_g2_g2p_s",
                 "dtau_g1_g2_s", "dtau_g1p_g2p_s", "dtau_g1_g2p_s", "dtau_g2_g1p_s", "window_s",
                 "separable_by_delay", "local_post_selection", "feasible"});
        csv.row({to_string(geo.kind), fmt(geo.l1), fmt(geo.l1p), fmt(geo.l2), fmt(geo.l2p),
                 fmt(geo.height), fmt(geo.post_selection_offset), fmt(d.tau_g1), fmt(d.tau_g2),
                 fmt(d.tau_g1p), fmt(d.tau_g2p), fmt(d.dtau_g1_g1p), fmt(d.dtau_g2_g2p),
                 fmt(d.dtau_g1_g2), fmt(d.dtau_g1p_g2p), fmt(d.dtau_g1_g2p), fmt(d.dtau_g2_g1p),
                 fmt(window), report.separable_by_delay ? "1" : "0",
                 report.local_post_selection ? "1" : "0", report.feasible ? "1" : "0"});
    }
    return 0;
}

// --------------------------------------------------------- probabilities --

int cmd_probabilities(const GravityModel& model, const GeometryFlags& gf,
                      const SpectrumFlags& sf, double alpha, double beta,
                      const std::string& method, const std::string& spectrum_file,
                      const std::string& out_path) {
    const ArrayGeometry geo = gf.build(model);
    const PathDelaySet d = path_proper_times(geo, model);
    const PhasePair phases{alpha, beta};

    DetectionProbabilities p;
    double vis = 0.0;
    if (!spectrum_file.empty()) {
        const JointSpectrum spectrum = TabulatedSpectrum::load_file(spectrum_file);
        p = probability_quadrature(d.dtau_g1_g2, d.dtau_g1p_g2p, spectrum, phases);
        const auto [c, s] = fringe_integrals(spectrum, d.dtau_g1_g2, d.dtau_g1p_g2p);
        vis = std::hypot(c, s);
    } else if (method == "quadrature") {
        const JointSpectrum spectrum = ProductSpectrum{sf.left(model), sf.right(model)};
        p = probability_quadrature(d.dtau_g1_g2, d.dtau_g1p_g2p, spectrum, phases);
        vis = visibility(d.dtau_g1_g2, d.dtau_g1p_g2p, sf.left(model).sigma,
                         sf.right(model).sigma);
    } else {
        const GaussianSpectrum left = sf.left(model);
        const GaussianSpectrum right = sf.right(model);
        p = probability_gaussian(d.dtau_g1_g2, d.dtau_g1p_g2p, left, right, phases);
        vis = visibility(d.dtau_g1_g2, d.dtau_g1p_g2p, left.sigma, right.sigma);
    }

    std::cout << "dtau_g1_g2   = " << fmt(d.dtau_g1_g2) << " s\n"
              << "dtau_g1'_g2' = " << fmt(d.dtau_g1p_g2p) << " s\n"
              << "visibility   = " << fmt(vis) << '\n'
              << "p_pp         = " << fmt(p.p_pp) << '\n'
              << "p_pm         = " << fmt(p.p_pm) << '\n'
              << "p_mp         = " << fmt(p.p_mp) << '\n'
              << "p_mm         = " << fmt(p.p_mm) << '\n'
              << "E            = " << fmt(correlation(p)) << '\n';

    if (!out_path.empty()) {
        CsvWriter csv(out_path);
        csv.row({"dtau_g1_g2_s", "dtau_g1p_g2p_s", "visibility", "p_pp", "p_pm", "p_mp", "p_mm",
                 "E"});
        csv.row({fmt(d.dtau_g1_g2), fmt(d.dtau_g1p_g2p), fmt(vis), fmt(p.p_pp), fmt(p.p_pm),
                 fmt(p.p_mp), fmt(p.p_mm), fmt(correlation(p))});
    }
    return 0;
}

// ---------------------------------------------------------------- figure --

double delay_from_area(const GravityModel& model, double area) {
    return gravitational_delay(model, area, 1.0);
}

void figure_probability_vs_area(const GravityModel& model, const std::string& out_path,
                                bool rotated_hugged) {
    const std::vector<double> widths = {161.2e-9, 322.4e-9, 644.8e-9};
    const std::vector<std::string> labels = {"dl161.2nm", "dl322.4nm", "dl644.8nm"};
    std::vector<GaussianSpectrum> left, right;
    for (double w : widths) {
        left.push_back(GaussianSpectrum::from_wavelength_band(806e-9, w, model));
        right.push_back(GaussianSpectrum::from_wavelength_band(706e-9, w, model));
    }

    CsvWriter csv(out_path);
    std::vector<std::string> header = {"index", "area_m2", "delta_tau_s"};
    for (const auto& label : labels) {
        header.push_back("p_pp_" + label);
        header.push_back("visibility_" + label);
    }
    csv.row(header);

    const int points = 501;
    const double area_max = 1e9;
    for (int i = 0; i < points; ++i) {
        const double area = area_max * static_cast<double>(i) / (points - 1);
        const double dt = delay_from_area(model, area);
        std::vector<std::string> row = {std::to_string(i), fmt(area), fmt(dt)};
        for (std::size_t k = 0; k < widths.size(); ++k) {
            const double dt12 = rotated_hugged ? -dt : dt;
            const DetectionProbabilities p =
                probability_gaussian(dt12, dt, left[k], right[k], PhasePair{0.0, 0.0});
            row.push_back(fmt(p.p_pp));
            row.push_back(fmt(visibility(dt12, dt, left[k].sigma, right[k].sigma)));
        }
        csv.row(row);
    }
}

void figure_sigma_vs_area_bandwidth(const GravityModel& model, const std::string& out_path) {
    CsvWriter csv(out_path);
    csv.row({"index", "area_m2", "delta_lambda_m", "delta_tau_s", "visibility", "sigma"});
    const int n_width = 60;
    const int n_area = 301;
    const double w_lo = 50e-9, w_hi = 650e-9;
    const double area_max = 1.5e9;
    int index = 0;
    for (int iw = 0; iw < n_width; ++iw) {
        const double w = w_lo + (w_hi - w_lo) * static_cast<double>(iw) / (n_width - 1);
        const double s1 = sigma_from_bandwidth(806e-9, w, model);
        const double s2 = sigma_from_bandwidth(706e-9, w, model);
        const double omega1 = omega_from_wavelength(806e-9, model);
        const double omega2 = omega_from_wavelength(706e-9, model);
        for (int ia = 0; ia < n_area; ++ia) {
            const double area = area_max * static_cast<double>(ia) / (n_area - 1);
            const double dt = delay_from_area(model, area);
            csv.row({std::to_string(index++), fmt(area), fmt(w), fmt(dt),
                     fmt(visibility(dt, dt, s1, s2)),
                     fmt(sigma_balanced(dt, s1, s2, omega1, omega2))});
        }
    }
}

void figure_sigma_vs_arms(const GravityModel& model, const std::string& out_path) {
    CsvWriter csv(out_path);
    csv.row({"index", "l2p_m", "height_m", "delta_tau_s", "visibility", "sigma"});
    const double s1 = sigma_from_bandwidth(806e-9, 644.8e-9, model);
    const double s2 = sigma_from_bandwidth(706e-9, 644.8e-9, model);
    const double omega1 = omega_from_wavelength(806e-9, model);
    const double omega2 = omega_from_wavelength(706e-9, model);
    const int n = 201;
    const double arm_max = 2e4;
    int index = 0;
    for (int il = 0; il < n; ++il) {
        const double l2p = arm_max * static_cast<double>(il) / (n - 1);
        for (int ih = 0; ih < n; ++ih) {
            const double h = arm_max * static_cast<double>(ih) / (n - 1);
            const double dt = gravitational_delay(model, l2p, h);
            csv.row({std::to_string(index++), fmt(l2p), fmt(h), fmt(dt),
                     fmt(visibility(dt, dt, s1, s2)),
                     fmt(sigma_balanced(dt, s1, s2, omega1, omega2))});
        }
    }
}

void figure_broadband_spdc(const GravityModel& model, const std::string& out_path,
                           bool sigma_figure) {
    const GaussianSpectrum left = GaussianSpectrum::from_wavelength_band(3300e-9, 370e-9, model);
    const GaussianSpectrum right = GaussianSpectrum::from_wavelength_band(995e-9, 34e-9, model);

    CsvWriter csv(out_path);
    if (sigma_figure)
        csv.row({"index", "area_m2", "delta_tau_s", "visibility", "sigma_balanced",
                 "sigma_rotated_hugged"});
    else
        csv.row({"index", "area_m2", "delta_tau_s", "visibility", "p_pp_balanced",
                 "p_pp_rotated_hugged"});

    const int points = 501;
    const double area_max = 6e10;
    for (int i = 0; i < points; ++i) {
        const double area = area_max * static_cast<double>(i) / (points - 1);
        const double dt = delay_from_area(model, area);
        const double vis = visibility(dt, dt, left.sigma, right.sigma);
        std::vector<std::string> row = {std::to_string(i), fmt(area), fmt(dt), fmt(vis)};
        if (sigma_figure) {
            row.push_back(
                fmt(sigma_balanced(dt, left.sigma, right.sigma, left.omega_bar, right.omega_bar)));
            row.push_back(fmt(
                sigma_rotated_hugged(dt, left.sigma, right.sigma, left.omega_bar,
                                     right.omega_bar)));
        } else {
            const PhasePair zero{0.0, 0.0};
            row.push_back(fmt(probability_gaussian(dt, dt, left, right, zero).p_pp));
            row.push_back(fmt(probability_gaussian(-dt, dt, left, right, zero).p_pp));
        }
        csv.row(row);
    }
}

int cmd_figure(const GravityModel& model, const std::string& name, const std::string& out_path) {
    if (name == "fig3a")
        figure_probability_vs_area(model, out_path, false);
    else if (name == "fig3b")
        figure_probability_vs_area(model, out_path, true);
    else if (name == "fig4")
        figure_sigma_vs_area_bandwidth(model, out_path);
    else if (name == "fig5")
        figure_sigma_vs_arms(model, out_path);
    else if (name == "fig6a")
        figure_broadband_spdc(model, out_path, false);
    else if (name == "fig6b")
        figure_broadband_spdc(model, out_path, true);
    else
        throw CLI::ValidationError("figure", "unknown figure name: " + name);
    return 0;
}

// ----------------------------------------------------------------- sweep --

struct SweepQuantities {
    bool probabilities = false;
    bool visibility = false;
    bool sigma = false;
    bool sigma_classical = false;
};

int cmd_sweep(const GravityModel& model, const GeometryFlags& gf, const SpectrumFlags& sf,
              const std::string& variable, double start, double stop, int points,
              const SweepQuantities& want, bool compensated, double alpha, double beta,
              const std::string& out_path) {
    if (!(start < stop)) throw CLI::ValidationError("--start", "start must be < stop");
    if (points < 2) throw CLI::ValidationError("--points", "at least 2 grid points");

    const ArrayKind kind = parse_kind(gf.kind);
    const double omega1 = omega_from_wavelength(sf.lambda1, model);
    const double omega2 = omega_from_wavelength(sf.lambda2, model);

    std::vector<std::string> header = {"index", variable == "area"        ? "area_m2"
                                                : variable == "height"    ? "height_m"
                                                : variable == "length"    ? "length_m"
                                                                          : "bandwidth_m",
                                       "delta_tau_s"};
    if (want.visibility) header.push_back("visibility");
    if (want.probabilities) {
        header.insert(header.end(), {"p_pp", "p_pm", "p_mp", "p_mm", "E"});
    }
    if (want.sigma) header.push_back("sigma");
    if (want.sigma_classical) header.push_back("sigma_classical");

    CsvWriter csv(out_path);
    csv.row(header);

    for (int i = 0; i < points; ++i) {
        const double x = start + (stop - start) * static_cast<double>(i) / (points - 1);

        double s1, s2;
        double grav; // gravitational delay magnitude at this grid point
        if (variable == "bandwidth") {
            s1 = sigma_from_bandwidth(sf.lambda1, x, model);
            s2 = sigma_from_bandwidth(sf.lambda2, x, model);
            grav = gravitational_delay(model, gf.l2p, gf.height);
        } else {
            s1 = sigma_from_bandwidth(sf.lambda1, sf.dlambda1, model);
            s2 = sigma_from_bandwidth(sf.lambda2, sf.dlambda2, model);
            if (variable == "area")
                grav = delay_from_area(model, x);
            else if (variable == "height")
                grav = gravitational_delay(model, gf.l2p, x);
            else // length
                grav = gravitational_delay(model, x, gf.height);
        }

        const bool hugged_rotated = kind == ArrayKind::HuggedRotatedBalanced;
        const double dt12 = hugged_rotated ? -grav : grav;
        const double dt1p2p = grav;

        std::vector<std::string> row = {std::to_string(i), fmt(x), fmt(dt12)};
        if (want.visibility) row.push_back(fmt(visibility(dt12, dt1p2p, s1, s2)));
        if (want.probabilities) {
            const GaussianSpectrum left(omega1, s1);
            const GaussianSpectrum right(omega2, s2);
            const DetectionProbabilities p =
                probability_gaussian(dt12, dt1p2p, left, right, PhasePair{alpha, beta});
            row.insert(row.end(), {fmt(p.p_pp), fmt(p.p_pm), fmt(p.p_mp), fmt(p.p_mm),
                                   fmt(correlation(p))});
        }
        if (want.sigma) {
            double sig;
            if (compensated)
                sig = sigma_phase_compensated(dt12, dt1p2p, s1, s2);
            else if (hugged_rotated)
                sig = sigma_rotated_hugged(grav, s1, s2, omega1, omega2);
            else
                sig = sigma_balanced(grav, s1, s2, omega1, omega2);
            row.push_back(fmt(sig));
        }
        if (want.sigma_classical)
            row.push_back(fmt(sigma_classical(dt12, dt1p2p, s1, s2, omega1, omega2)));
        csv.row(row);
    }
    return 0;
}

// --------------------------------------------------------- critical-area --

int cmd_critical_area(const GravityModel& model, const SpectrumFlags& sf,
                      std::optional<double> sigma1, std::optional<double> sigma2) {
    const double s1 = sigma1 ? *sigma1 : sigma_from_bandwidth(sf.lambda1, sf.dlambda1, model);
    const double s2 = sigma2 ? *sigma2 : sigma_from_bandwidth(sf.lambda2, sf.dlambda2, model);
    std::cout << "sigma1 = " << fmt(s1) << " rad/s\n"
              << "sigma2 = " << fmt(s2) << " rad/s\n";
    try {
        std::cout << "A* = " << fmt(critical_area(s1, s2, model)) << " m2\n";
    } catch (const ZeroGravity&) {
        std::cout << "A* : no finite critical area (g = 0)\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon interferometric arrays in a weak gravitational field:\n"
                 "delays, elapsed-time detection probabilities, CHSH functionals."};
    app.require_subcommand(1);
    app.fallthrough(); // --g/--c are accepted before or after the subcommand

    GravityModel model;
    app.add_option("--g", model.g, "surface gravitational acceleration, m/s^2")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app.add_option("--c", model.c, "speed of light, m/s")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // delays
    auto* delays = app.add_subcommand("delays", "per-path proper times, pairwise delays and "
                                                "post-selection feasibility");
    GeometryFlags delays_geo;
    delays_geo.attach(delays);
    double window = 1e-18;
    delays->add_option("--window", window, "coincidence window, s")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    std::string delays_out;
    delays->add_option("--out", delays_out, "optional CSV output path");

    // probabilities
    auto* prob = app.add_subcommand("probabilities",
                                    "joint elapsed-time detection probabilities");
    GeometryFlags prob_geo;
    prob_geo.attach(prob);
    SpectrumFlags prob_spec;
    prob_spec.attach(prob);
    double prob_alpha = 0.0, prob_beta = 0.0;
    prob->add_option("--alpha", prob_alpha, "left analyzer phase, rad")->capture_default_str();
    prob->add_option("--beta", prob_beta, "right analyzer phase, rad")->capture_default_str();
    std::string prob_method = "closed";
    prob->add_option("--method", prob_method, "closed | quadrature")
        ->check(CLI::IsMember({"closed", "quadrature"}))
        ->capture_default_str();
    std::string prob_spectrum_file;
    prob->add_option("--spectrum-file", prob_spectrum_file,
                     "tabulated joint spectrum (header 'omega1 omega2 density', SI rows); "
                     "implies quadrature")
        ->check(CLI::ExistingFile);
    std::string prob_out;
    prob->add_option("--out", prob_out, "optional CSV output path");

    // figure
    auto* figure = app.add_subcommand(
        "figure", "write a preset sweep as CSV. Presets fig3a/fig3b/fig4/fig5 use wavelengths "
                  "806/706 nm with bandwidths 161.2/322.4/644.8 nm (644.2 nm is a close variant "
                  "quoted for the same broad source; use sweep --variable bandwidth to explore "
                  "it); fig6a/fig6b use the broadband SPDC pair 3300/995 nm with 370/34 nm.");
    std::string figure_name;
    figure->add_option("name", figure_name, "fig3a|fig3b|fig4|fig5|fig6a|fig6b")
        ->required()
        ->check(CLI::IsMember({"fig3a", "fig3b", "fig4", "fig5", "fig6a", "fig6b"}));
    std::string figure_out;
    figure->add_option("--out", figure_out, "CSV output path")->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "sweep one variable, emitting one CSV row per "
                                              "grid point");
    GeometryFlags sweep_geo;
    sweep_geo.attach(sweep);
    SpectrumFlags sweep_spec;
    sweep_spec.attach(sweep);
    std::string sweep_variable;
    sweep->add_option("--variable", sweep_variable, "area | height | length | bandwidth")
        ->required()
        ->check(CLI::IsMember({"area", "height", "length", "bandwidth"}));
    double sweep_start = 0.0, sweep_stop = 0.0;
    int sweep_points = 0;
    sweep->add_option("--start", sweep_start, "first grid value, SI units of the variable")
        ->required();
    sweep->add_option("--stop", sweep_stop, "last grid value")->required();
    sweep->add_option("--points", sweep_points, "number of grid points")->required();
    std::vector<std::string> sweep_quantities = {"probabilities", "visibility", "sigma",
                                                 "sigma_classical"};
    sweep->add_option("--quantities", sweep_quantities,
                      "subset of: probabilities visibility sigma sigma_classical")
        ->check(CLI::IsMember({"probabilities", "visibility", "sigma", "sigma_classical"}));
    bool sweep_compensated = false;
    sweep->add_flag("--compensated", sweep_compensated,
                    "report the phase-compensated sigma (pure dispersion envelope)");
    double sweep_alpha = 0.0, sweep_beta = 0.0;
    sweep->add_option("--alpha", sweep_alpha, "left analyzer phase, rad")->capture_default_str();
    sweep->add_option("--beta", sweep_beta, "right analyzer phase, rad")->capture_default_str();
    std::string sweep_out;
    sweep->add_option("--out", sweep_out, "CSV output path")->required();

    // critical-area
    auto* crit = app.add_subcommand("critical-area",
                                    "proper area above which the dispersion envelope of sigma "
                                    "stays below 2");
    SpectrumFlags crit_spec;
    crit_spec.attach(crit);
    std::optional<double> crit_sigma1, crit_sigma2;
    crit->add_option("--sigma1", crit_sigma1, "left frequency width, rad/s (overrides lambda "
                                              "flags)");
    crit->add_option("--sigma2", crit_sigma2, "right frequency width, rad/s");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(delays))
            return cmd_delays(model, delays_geo, window, delays_out);
        if (app.got_subcommand(prob))
            return cmd_probabilities(model, prob_geo, prob_spec, prob_alpha, prob_beta,
                                     prob_method, prob_spectrum_file, prob_out);
        if (app.got_subcommand(figure)) return cmd_figure(model, figure_name, figure_out);
        if (app.got_subcommand(sweep)) {
            SweepQuantities want;
            for (const auto& q : sweep_quantities) {
                if (q == "probabilities") want.probabilities = true;
                if (q == "visibility") want.visibility = true;
                if (q == "sigma") want.sigma = true;
                if (q == "sigma_classical") want.sigma_classical = true;
            }
            return cmd_sweep(model, sweep_geo, sweep_spec, sweep_variable, sweep_start,
                             sweep_stop, sweep_points, want, sweep_compensated, sweep_alpha,
                             sweep_beta, sweep_out);
        }
        if (app.got_subcommand(crit))
            return cmd_critical_area(model, crit_spec, crit_sigma1, crit_sigma2);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const gravbell::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
