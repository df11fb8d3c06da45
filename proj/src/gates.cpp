#include "dipoledyn/gates.hpp"

#include <cmath>
#include <iostream>

namespace dipoledyn {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr Complex kI{0.0, 1.0};

void check_rabi_range(double omega, const char* what) {
    if (!(omega > 0.0)) throw std::domain_error(std::string(what) + ": Rabi frequency must be positive");
    if (omega > 0.5)
        std::cerr << "warning: " << what << ": Rabi frequency " << omega
                  << " Im C exceeds the validity range (<= 0.5)\n";
}

Operator segment_hamiltonian(const Segment& seg, double t) {
    std::vector<CollectiveDrive> collective;
    Operator h = Operator::zero();
    bool have = false;
    for (const DriveTerm& d : seg.drives) {
        if (d.kind == DriveTerm::Kind::Collective) {
            collective.push_back(d.collective);
        } else {
            h = have ? h + h_transition_drive(d.transition, d.rabi, t)
                     : h_transition_drive(d.transition, d.rabi, t);
            have = true;
        }
    }
    if (!collective.empty()) {
        h = have ? h + h_interaction(collective, t) : h_interaction(collective, t);
        have = true;
    }
    return h;
}

StateVector collective_combo(double cs, double ca) {
    StateVector v;
    v.basis = Basis::Collective;
    v.amp[kS] = cs;
    v.amp[kA] = ca;
    return v;
}

}  // namespace

DriveTerm DriveTerm::make_collective(RabiPair pair, double detuning) {
    DriveTerm d;
    d.kind = Kind::Collective;
    d.collective = {pair, detuning};
    return d;
}

DriveTerm DriveTerm::make_addressed(Transition tr, double rabi) {
    DriveTerm d;
    d.kind = Kind::Addressed;
    d.transition = tr;
    d.rabi = rabi;
    return d;
}

double PulseSchedule::total_duration() const {
    double total = 0.0;
    for (const Segment& s : segments) total += s.duration;
    return total;
}

PulseSchedule schedule_prepare_s(double omega1) {
    check_rabi_range(omega1, "prepare_s");
    PulseSchedule sched;
    sched.label = "prepare-s";
    Segment seg;
    seg.duration = kPi / (std::sqrt(2.0) * omega1);
    seg.drives.push_back(DriveTerm::make_collective({omega1, omega1}, +0.5));
    sched.segments.push_back(seg);
    return sched;
}

PulseSchedule schedule_prepare_a(double omega1) {
    check_rabi_range(omega1, "prepare_a");
    PulseSchedule sched;
    sched.label = "prepare-a";
    Segment seg;
    seg.duration = kPi / (std::sqrt(2.0) * omega1);
    seg.drives.push_back(DriveTerm::make_collective({omega1, -omega1}, -0.5));
    sched.segments.push_back(seg);
    return sched;
}

PulseSchedule schedule_cnot(double omega1r) {
    check_rabi_range(omega1r, "cnot");
    PulseSchedule sched;
    sched.label = "cnot";
    Segment seg;
    seg.duration = kPi / (2.0 * omega1r);
    // Running wave resonant on s-e; standing wave resonant on a-e with the
    // opposite Rabi sign so that (|s>+|a>)/sqrt2 stays frozen.
    seg.drives.push_back(DriveTerm::make_addressed(Transition::SE, omega1r));
    seg.drives.push_back(DriveTerm::make_addressed(Transition::AE, -omega1r));
    sched.segments.push_back(seg);
    return sched;
}

PulseSchedule schedule_single_qubit(int ion, double theta, double omega) {
    if (ion != 1 && ion != 2) throw std::domain_error("ion must be 1 or 2");
    if (!(theta > 0.0 && theta <= 2.0 * kPi)) throw std::domain_error("theta must lie in (0, 2*pi]");
    check_rabi_range(omega, "single_qubit");
    // Ion 1 rotates the {|00>,|10>} and {|01>,|11>} blocks, so the g-side
    // step must couple g to (|s>-|a>)/sqrt2 and the e-side step must couple
    // e to (|s>+|a>)/sqrt2.  Ion 2 exchanges the frozen superpositions.
    const double half = 0.5 * omega;
    const double ga_sign = (ion == 1) ? -1.0 : +1.0;
    const double ae_sign = (ion == 1) ? +1.0 : -1.0;
    PulseSchedule sched;
    sched.label = (ion == 1) ? "single-qubit-1" : "single-qubit-2";
    Segment step1;
    step1.duration = theta / omega;
    step1.drives.push_back(DriveTerm::make_addressed(Transition::GS, half));
    step1.drives.push_back(DriveTerm::make_addressed(Transition::GA, ga_sign * half));
    Segment step2;
    step2.duration = theta / omega;
    step2.drives.push_back(DriveTerm::make_addressed(Transition::SE, half));
    step2.drives.push_back(DriveTerm::make_addressed(Transition::AE, ae_sign * half));
    sched.segments.push_back(step1);
    sched.segments.push_back(step2);
    return sched;
}

HamiltonianFn schedule_hamiltonian(const PulseSchedule& schedule) {
    if (schedule.segments.empty())
        throw std::invalid_argument("schedule has no segments");
    for (const Segment& seg : schedule.segments) {
        if (!(seg.duration > 0.0))
            throw std::invalid_argument("segment durations must be positive");
        if (seg.drives.size() > 2)
            throw std::invalid_argument("segments carry at most two simultaneous drives");
    }
    PulseSchedule copy = schedule;
    return [copy](double t) {
        double start = 0.0;
        for (const Segment& seg : copy.segments) {
            const double end = start + seg.duration;
            if (t <= end || &seg == &copy.segments.back()) return segment_hamiltonian(seg, t);
            start = end;
        }
        return Operator::zero();
    };
}

HamiltonianFn schedule_hamiltonian(const PulseSchedule& schedule, const DecayRates& rates,
                                   double a_over_imc) {
    if (a_over_imc == 0.0) return schedule_hamiltonian(schedule);
    const HamiltonianFn bare = schedule_hamiltonian(schedule);
    const Operator decay = decay_diagonal(rates, a_over_imc);
    return [bare, decay](double t) { return bare(t) + decay; };
}

Trajectory run_schedule(const PulseSchedule& schedule, const StateVector& psi0,
                        const IntegratorOptions& opts) {
    return evolve(schedule_hamiltonian(schedule), psi0, schedule.total_duration(), opts);
}

Trajectory run_schedule(const PulseSchedule& schedule, const StateVector& psi0,
                        const DecayRates& rates, double a_over_imc, const IntegratorOptions& opts) {
    return evolve(schedule_hamiltonian(schedule, rates, a_over_imc), psi0,
                  schedule.total_duration(), opts);
}

double state_fidelity(const StateVector& psi, const StateVector& target) {
    const Complex overlap = inner(target, psi);
    return std::norm(overlap);
}

std::pair<double, double> prep_fidelity_max(const Trajectory& traj, const StateVector& target) {
    if (traj.states.empty()) throw std::invalid_argument("prep_fidelity_max: empty trajectory");
    double best = -1.0;
    double at = traj.times.front();
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const double f = state_fidelity(traj.states[i], target);
        if (f > best) {
            best = f;
            at = traj.times[i];
        }
    }
    return {best, at};
}

Operator ideal_cnot() {
    Operator u = Operator::zero();
    // In the frame {g, (s+a)/sqrt2, (s-a)/sqrt2, e} the map is
    // diag(1, 1, swap with -i phases).
    u.at(kG, kG) = 1.0;
    // Columns for |s> = (plus + minus)/sqrt2 and |a> = (plus - minus)/sqrt2.
    // plus -> plus; minus -> -i|e>; |e> -> -i minus.
    const Complex mi = -kI;
    // column s
    u.at(kS, kS) = 0.5;           // plus part back onto s
    u.at(kA, kS) = 0.5;           // plus part onto a
    u.at(kE, kS) = mi * kInvSqrt2;  // minus part to e
    // column a
    u.at(kS, kA) = 0.5;
    u.at(kA, kA) = 0.5;
    u.at(kE, kA) = -mi * kInvSqrt2;
    // column e -> -i (s - a)/sqrt2
    u.at(kS, kE) = mi * kInvSqrt2;
    u.at(kA, kE) = -mi * kInvSqrt2;
    return u;
}

Operator ideal_rotation(int ion, double theta) {
    if (ion != 1 && ion != 2) throw std::domain_error("ion must be 1 or 2");
    const double c = std::cos(theta / 2.0);
    const Complex ms = -kI * std::sin(theta / 2.0);
    // Build in the product basis {00, 01, 10, 11}; ion 1 is the first slot.
    Operator p = Operator::zero(Basis::Product);
    if (ion == 1) {
        p.at(0, 0) = c;  p.at(0, 2) = ms;
        p.at(2, 0) = ms; p.at(2, 2) = c;
        p.at(1, 1) = c;  p.at(1, 3) = ms;
        p.at(3, 1) = ms; p.at(3, 3) = c;
    } else {
        p.at(0, 0) = c;  p.at(0, 1) = ms;
        p.at(1, 0) = ms; p.at(1, 1) = c;
        p.at(2, 2) = c;  p.at(2, 3) = ms;
        p.at(3, 2) = ms; p.at(3, 3) = c;
    }
    // The transform is its own inverse, so conjugation is u * p * u.
    const Operator u = basis_transform();
    Operator out = u * p * u;
    out.basis = Basis::Collective;
    return out;
}

namespace {

double avg_product_fidelity(const Operator& ideal, const Operator& realized) {
    // Product-basis inputs expressed in collective coordinates:
    // |00>=g, |01>=(s+a)/sqrt2, |10>=(s-a)/sqrt2, |11>=e.
    const StateVector inputs[4] = {
        StateVector::basis_state(Basis::Collective, kG),
        collective_combo(kInvSqrt2, kInvSqrt2),
        collective_combo(kInvSqrt2, -kInvSqrt2),
        StateVector::basis_state(Basis::Collective, kE),
    };
    double acc = 0.0;
    for (const StateVector& x : inputs) {
        const StateVector want = apply(ideal, x);
        const StateVector got = apply(realized, x);
        acc += std::norm(inner(want, got));
    }
    return acc / 4.0;
}

double phase_corrected_fidelity(const Operator& ideal, const Operator& realized) {
    // Coordinate ascent over a diagonal phase frame applied after the gate.
    std::array<double, 4> phi{0.0, 0.0, 0.0, 0.0};
    const auto value = [&](const std::array<double, 4>& p) {
        Operator d = Operator::zero();
        for (int i = 0; i < 4; ++i) d.at(i, i) = std::exp(kI * p[i]);
        return avg_product_fidelity(ideal, d * realized);
    };
    double best = value(phi);
    for (int sweep = 0; sweep < 4; ++sweep) {
        for (int i = 0; i < 4; ++i) {
            std::array<double, 4> trial = phi;
            double local_best = best;
            double local_phi = phi[i];
            for (int k = 0; k < 64; ++k) {
                trial[i] = 2.0 * kPi * k / 64.0;
                const double v = value(trial);
                if (v > local_best) {
                    local_best = v;
                    local_phi = trial[i];
                }
            }
            // refine around the winner
            for (double step = 2.0 * kPi / 64.0; step > 1e-4; step *= 0.5) {
                for (double cand : {local_phi - step, local_phi + step}) {
                    trial[i] = cand;
                    const double v = value(trial);
                    if (v > local_best) {
                        local_best = v;
                        local_phi = cand;
                    }
                }
            }
            phi[i] = local_phi;
            best = local_best;
        }
    }
    return best;
}

}  // namespace

GateResult truth_table(const PulseSchedule& schedule, const Operator& ideal,
                       const IntegratorOptions& opts) {
    GateResult result;
    result.duration = schedule.total_duration();
    result.realized = Operator::zero();
    for (int col = 0; col < 4; ++col) {
        const Trajectory traj =
            run_schedule(schedule, StateVector::basis_state(Basis::Collective, col), opts);
        const StateVector& fin = traj.final_state();
        for (int row = 0; row < 4; ++row) result.realized.at(row, col) = fin.amp[row];
    }
    result.fidelity_vs_ideal = avg_product_fidelity(ideal, result.realized);
    result.fidelity_phase_corrected = phase_corrected_fidelity(ideal, result.realized);
    return result;
}

GateResult truth_table(const PulseSchedule& schedule, const IntegratorOptions& opts) {
    return truth_table(schedule, ideal_cnot(), opts);
}

}  // namespace dipoledyn
