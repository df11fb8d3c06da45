// Builders for the conditional, free, and laser-drive Hamiltonians of the
// two-ion system in the collective basis.  Unless stated otherwise all
// frequencies are in units of the cooperative shift Im C, times in 1/Im C,
// and hbar = 1.
#pragma once

#include <vector>

#include "dipoledyn/coupling.hpp"
#include "dipoledyn/statespace.hpp"

namespace dipoledyn {

struct Units {
    // Einstein coefficient over cooperative shift; 0 disables dissipation.
    double a_over_imc = 1.0 / 375.0;
};

enum class WaveMode { RunningPerpendicular, StandingNode };

struct LaserDrive {
    WaveMode wave_mode = WaveMode::RunningPerpendicular;
    Complex omega0 = 0.0;   // base Rabi amplitude, units Im C
    double detuning = 0.0;  // laser frequency minus transition frequency, units Im C
    double klr = 0.0;       // laser wavenumber times ion separation (standing wave only)
};

struct RabiPair {
    Complex omega1 = 0.0;
    Complex omega2 = 0.0;
};

// Per-ion Rabi frequencies for a drive.  A running wave perpendicular to the
// inter-ion axis gives equal values; a standing wave with the ions straddling
// a node gives opposite values 2i*omega0*sin(klr/2).  klr = 0 for a standing
// wave is a degenerate configuration (zero drive) and produces a warning on
// stderr.
RabiPair rabi_pair(const LaserDrive& drive);

struct CollectiveDrive {
    RabiPair pair;
    double detuning = 0.0;
};

// Non-Hermitian conditional Hamiltonian (1/2i)[(A+C)|s><s| + (A-C)|a><a|
// + 2A|e><e|], with A = units.a_over_imc and C rescaled by the same factor.
// Entries carry the level shift in their real part and -Gamma/2 in their
// imaginary part.
Operator h_cond(const Units& units, const CouplingConstant& c);

// Free Hamiltonian: level ladder omega0*(|s><s|+|a><a|+2|e><e|) plus the
// shift splitting (shift/2)(|s><s|-|a><a|).
Operator h0(double omega0_level, double shift);

// Interaction-picture drive Hamiltonian.  Each drive contributes
//   (1/2sqrt2)[(O1+O2)(e^{-it/2}|g><s| + e^{+it/2}|s><e|)
//            - (O1-O2)(e^{+it/2}|g><a| - e^{-it/2}|a><e|)] e^{i*det*t} + h.c.
// so a single laser reaches all four transitions with phases set by the
// cooperative shift.
Operator h_interaction(const std::vector<CollectiveDrive>& drives, double t);

// One of the four addressable transitions of the level scheme.
enum class Transition { GS, GA, SE, AE };

// Drive resonant on one transition, including the same laser's off-resonant
// partner transition oscillating at the shift frequency:
//   GS: (w/sqrt2)(|g><s| + e^{+it}|s><e|) + h.c.
//   GA: (w/sqrt2)(|g><a| + e^{-it}|a><e|) + h.c.
//   SE: (w/sqrt2)(|s><e| + e^{-it}|g><s|) + h.c.
//   AE: (w/sqrt2)(|a><e| + e^{+it}|g><a|) + h.c.
Operator h_transition_drive(Transition tr, double rabi, double t);

// Simultaneous running wave on s-e and standing wave on a-e with opposite
// Rabi frequencies (omega1s = -omega1r).  Equals
// h_transition_drive(SE, w) + h_transition_drive(AE, -w); the non-oscillating
// part swaps |e> with (|s>-|a>)/sqrt2 at Rabi frequency 2*omega1r.
Operator h_cnot(double omega1r, double t);

// The swap generator alone: (omega/2)(|e>(<s|-<a|)/sqrt2 + h.c.).  |g> and
// (|s>+|a>)/sqrt2 are zero-eigenvalue eigenstates; the other eigenvalues are
// +-omega/2.
Operator h_cnot_ideal(double omega);

// Anti-Hermitian diagonal -(i/2)*a_over_imc*diag(0, gamma_s, gamma_a, gamma_e)
// to add to a drive Hamiltonian when dissipation is enabled.
Operator decay_diagonal(const DecayRates& rates, double a_over_imc);

}  // namespace dipoledyn
