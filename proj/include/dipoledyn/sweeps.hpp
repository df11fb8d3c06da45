// Deterministic parameter sweeps and dynamics tables emitted as CSV, one per
// reproduced figure.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dipoledyn/gates.hpp"

namespace dipoledyn {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    // Extra '#'-prefixed lines appended after the data (summaries).
    std::vector<std::string> footnotes;
};

// '#'-prefixed header naming the columns, comma-separated values rendered
// with 12 significant digits, LF line endings.  Byte-identical for identical
// inputs.
void write_csv(const Table& table, std::ostream& out);
std::string to_csv(const Table& table);

// Default integrator options used by the sweep drivers.
IntegratorOptions sweep_integrator_options();

struct SweepSpec {
    enum class Kind {
        ShiftVsSeparation,
        StatePrepDynamics,
        RabiErrorFidelity,
        DetuningFidelity,
        CnotDynamics,
    };
    Kind kind = Kind::ShiftVsSeparation;
    double min = 0.02;  // range for the swept parameter
    double max = 0.5;
    int points = 200;
    double omega1 = 0.25;  // fixed parameters per kind
    double detuning_ratio = 1.0;
    double rabi_ratio = 1.0;
    double t_max = 20.0;
    int target = kS;  // prepared level for StatePrepDynamics
};

Table run_sweep(const SweepSpec& spec);

// Level shift against separation: k0r, log10 of the small-separation shift,
// log10 of its leading term, and Re C of the full coupling constant.
Table run_shift_sweep(double min_k0r, double max_k0r, int points);

// Population dynamics of a preparation pulse from |gg>.  The executed Rabi
// frequency is rabi_ratio*omega1 and the detuning detuning_ratio*(shift/2);
// the nominal pulse length pi/(sqrt2 omega1) is reported in the summary
// together with F = max P_s and P_s at that length.  target = kS for the
// symmetric drive, kA for the antisymmetric one.
Table run_state_prep(double omega1, double detuning_ratio, double rabi_ratio, double t_max,
                     int target = kS, double decay_a_over_imc = 0.0);

// Population of the target level after a pulse of fixed nominal length, as
// the executed Rabi frequency sweeps over ratio*omega1.
Table run_rabi_error_sweep(double omega1, double min_ratio, double max_ratio, int points);

// Same protocol with the detuning swept instead.
Table run_detuning_sweep(double omega1, double min_ratio, double max_ratio, int points);

// Conditional-gate dynamics from |e>: populations of |g>, |e>, and the
// swapped and frozen (|s>-+|a>)/sqrt2 superpositions.
Table run_cnot_dynamics(double omega1r, double t_max, double decay_a_over_imc = 0.0);

// Deterministic index-parallel map; worker count is capped by the
// DIPOLEDYN_THREADS environment variable.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace dipoledyn
