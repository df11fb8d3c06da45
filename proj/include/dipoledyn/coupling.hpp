// Separation-dependent dipole-dipole coupling constant, its small-separation
// level shift, and the collective decay rates.  All rates are in units of the
// single-ion Einstein coefficient A; k0r = 2*pi*r/lambda0 is dimensionless.
#pragma once

#include "dipoledyn/statespace.hpp"

namespace dipoledyn {

struct CouplingConstant {
    Complex value;  // units of A
    double k0r = 0.0;
    double theta = 0.0;  // angle between dipole and inter-ion axis, radians
};

struct DecayRates {
    double gamma_s = 1.0;  // units of A
    double gamma_a = 1.0;
    double gamma_e = 2.0;
};

// Full retarded coupling constant C(k0r, theta).
CouplingConstant coupling_c(double k0r, double theta);

// Small-separation level shift -3A [sin(x)/x^2 + cos(x)/x^3] at theta = pi/2,
// as a closed-form expression in its own right.  Note the full coupling
// constant above disagrees with this at leading order (+3/(2x^3) vs -3/x^3);
// both forms are kept.
double im_c_small_r(double k0r);

// Leading 3A/(k0r)^3 term of the small-separation shift.
double im_c_leading(double k0r);

// (A + Re C, A - Re C, 2A) for the levels s, a, e.
DecayRates decay_rates(const CouplingConstant& c);

enum class ShiftFormula { FullCoupling, SmallSeparation };

// Inverse lookup: the k0r in (1e-3, 0.5) whose |Im C| equals the target under
// the chosen formula.  Bisection to 1e-10 relative on k0r.
double k0r_for_shift(double target_abs_im_c, ShiftFormula formula);

}  // namespace dipoledyn
