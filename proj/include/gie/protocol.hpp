#pragma once

#include "gie/states.hpp"

namespace gie {

// CODATA 2018
struct PhysicalConstants {
    double G = 6.67430e-11;        // m^3 kg^-1 s^-2
    double hbar = 1.054571817e-34; // J s
    double c = 2.99792458e8;       // m/s
    double planck_mass = 2.176434e-8; // kg
};

// SI units throughout: kg, m, s, rad.
struct PhysicalParams {
    double mass = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double arm_length = 0.0;  // optional (0 = unset)
    double velocity = 0.0;    // optional; exclusive with duration
    double duration = 0.0;    // optional; exclusive with velocity
    double exponent = 1.0;    // distance-law exponent n
    PhysicalConstants constants{};

    // duration if given, else arm_length / velocity; rejects over- and
    // under-specification
    double resolved_duration() const;
};

struct PhaseSet {
    double phi1 = 0.0;
    double phi2 = 0.0;
    double delta_phi = 0.0;  // stored redundantly; must equal phi2 - phi1

    static PhaseSet from_phases(double phi1, double phi2);
    static PhaseSet from_relative(double phi1, double delta_phi);
    void validate() const;  // |delta - (phi2-phi1)| <= 1e-15 * scale
};

// Which joint configuration carries which accumulated phase:
//  relative  — amplitudes (1, e^{i phi1}, e^{i phi1}, e^{i phi2}) / 2
//  geometric — by pair distance: (e^{i phi1}, e^{i phi2}, e^{i phi2}, e^{i phi1}) / 2
enum class PhaseAttribution { relative, geometric };

struct Probabilities {
    double p0 = 0.0;
    double p1 = 0.0;
};

struct RunResult {
    PhaseSet phases;
    double p0 = 0.0;
    double p1 = 0.0;
    double concurrence = 0.0;
    double negativity = 0.0;
    double witness_value = 0.0;
    PureState pre_bs_state;
    PureState final_state;
};

// phi = m^2 G dt / (hbar d) for exponent 1; for other exponents the coupling
// is calibrated so the phase at d_ref = 1e-6 m matches the exponent-1 value:
// phi(d) = phi_ref * (d_ref / d)^n.
double gravitational_phase(double mass, double distance, double duration, double exponent = 1.0,
                           const PhysicalConstants& k = {});

PhaseSet phases_from_geometry(const PhysicalParams& p);

// two-mass state after phase accumulation, before the closing beamsplitters
PureState pre_beamsplitter_state(const PhaseSet& phases,
                                 PhaseAttribution attribution = PhaseAttribution::relative);

// closed-form per-mass detector statistics for the relative attribution:
// p0 = (cos^2(phi1/2) + cos^2(dphi/2)) / 2
Probabilities detector_probabilities(const PhaseSet& phases);

RunResult simulate_run(const PhaseSet& phases,
                       PhaseAttribution attribution = PhaseAttribution::relative);

}  // namespace gie
