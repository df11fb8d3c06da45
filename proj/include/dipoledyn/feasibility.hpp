// Physical-unit conversions: ion separation, center-of-mass trap frequency
// from the Coulomb restoring force, and scenario summaries in absolute units.
#pragma once

#include "dipoledyn/coupling.hpp"

namespace dipoledyn {

// CODATA 2018.
namespace constants {
inline constexpr double elementary_charge = 1.602176634e-19;    // C
inline constexpr double vacuum_permittivity = 8.8541878128e-12; // F/m
inline constexpr double atomic_mass = 1.66053906660e-27;        // kg
}  // namespace constants

struct PhysicalScenario {
    double lambda0_m = 10e-6;  // transition wavelength
    double k0r = 0.2;
    double mass_amu = 100.0;
    double theta = 1.5707963267948966;
    double einstein_a = 0.0;  // 1/s; 0 means unspecified
};

// r = k0r * lambda0 / (2 pi).
double separation(double k0r, double lambda0_m);

// (1/2pi) sqrt(e^2 / (2 pi eps0 M m_u r^3)), in Hz.
double trap_frequency_hz(double mass_amu, double r_m);

struct ScenarioReport {
    double r_m = 0.0;
    double abs_im_c_full = 0.0;     // |Im C|/A from the full coupling constant
    double abs_im_c_small_r = 0.0;  // |Im C|/A from the small-separation form
    double im_c_leading = 0.0;      // 3/(k0r)^3
    DecayRates rates;
    double trap_hz = 0.0;
    double t_pi_s = 0.0;  // pi pulse at Rabi 0.25*Im C, using the leading shift; 0 if no A given
};

ScenarioReport scenario_report(const PhysicalScenario& s);

}  // namespace dipoledyn
