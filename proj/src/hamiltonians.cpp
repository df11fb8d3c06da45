#include "dipoledyn/hamiltonians.hpp"

#include <cmath>
#include <iostream>

namespace dipoledyn {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kInvSqrt2 = 0.70710678118654752440;

Operator plus_adjoint(const Operator& h) { return h + h.adjoint(); }

}  // namespace

RabiPair rabi_pair(const LaserDrive& drive) {
    if (drive.wave_mode == WaveMode::RunningPerpendicular)
        return {drive.omega0, drive.omega0};
    if (drive.klr == 0.0 && drive.omega0 != Complex{0.0}) {
        std::cerr << "warning: standing-wave drive with klr = 0 has zero Rabi frequency\n";
    }
    const Complex o = 2.0 * kI * drive.omega0 * std::sin(drive.klr / 2.0);
    return {o, -o};
}

Operator h_cond(const Units& units, const CouplingConstant& c) {
    const double a = units.a_over_imc;
    const Complex cc = c.value * a;  // coupling rescaled from units of A
    Operator h = Operator::zero();
    const Complex half_over_i = 1.0 / (2.0 * kI);
    h.at(kS, kS) = half_over_i * (a + cc);
    h.at(kA, kA) = half_over_i * (a - cc);
    h.at(kE, kE) = half_over_i * (2.0 * a);
    return h;
}

Operator h0(double omega0_level, double shift) {
    if (shift < 0.0) throw std::domain_error("shift must be non-negative");
    Operator h = Operator::zero();
    h.at(kS, kS) = omega0_level + 0.5 * shift;
    h.at(kA, kA) = omega0_level - 0.5 * shift;
    h.at(kE, kE) = 2.0 * omega0_level;
    return h;
}

Operator h_interaction(const std::vector<CollectiveDrive>& drives, double t) {
    Operator h = Operator::zero();
    for (const CollectiveDrive& d : drives) {
        const Complex sum = d.pair.omega1 + d.pair.omega2;
        const Complex diff = d.pair.omega1 - d.pair.omega2;
        const Complex det_phase = std::exp(kI * d.detuning * t);
        const Complex up = std::exp(kI * (t / 2.0));
        const Complex down = std::exp(-kI * (t / 2.0));
        const Complex pre = det_phase * 0.5 * kInvSqrt2;
        h.at(kG, kS) += pre * sum * down;
        h.at(kS, kE) += pre * sum * up;
        h.at(kG, kA) -= pre * diff * up;
        h.at(kA, kE) += pre * diff * down;
    }
    return plus_adjoint(h);
}

Operator h_transition_drive(Transition tr, double rabi, double t) {
    Operator h = Operator::zero();
    const Complex up = std::exp(kI * t);
    const Complex down = std::exp(-kI * t);
    const double w = rabi * kInvSqrt2;
    switch (tr) {
        case Transition::GS:
            h.at(kG, kS) = w;
            h.at(kS, kE) = w * up;
            break;
        case Transition::GA:
            h.at(kG, kA) = w;
            h.at(kA, kE) = w * down;
            break;
        case Transition::SE:
            h.at(kS, kE) = w;
            h.at(kG, kS) = w * down;
            break;
        case Transition::AE:
            h.at(kA, kE) = w;
            h.at(kG, kA) = w * up;
            break;
    }
    return plus_adjoint(h);
}

Operator h_cnot(double omega1r, double t) {
    if (!(omega1r > 0.0)) throw std::domain_error("omega1r must be positive");
    // omega1s = -omega1r is built in.
    Operator h = Operator::zero();
    const double w = omega1r * kInvSqrt2;
    h.at(kS, kE) = w;
    h.at(kA, kE) = -w;
    h.at(kG, kS) = w * std::exp(-kI * t);
    h.at(kG, kA) = -w * std::exp(kI * t);
    return plus_adjoint(h);
}

Operator h_cnot_ideal(double omega) {
    if (!(omega > 0.0)) throw std::domain_error("omega must be positive");
    Operator h = Operator::zero();
    const double w = 0.5 * omega * kInvSqrt2;
    h.at(kE, kS) = w;
    h.at(kE, kA) = -w;
    return plus_adjoint(h);
}

Operator decay_diagonal(const DecayRates& rates, double a_over_imc) {
    if (a_over_imc < 0.0) throw std::domain_error("a_over_imc must be non-negative");
    Operator h = Operator::zero();
    const Complex pre = -0.5 * kI * a_over_imc;
    h.at(kS, kS) = pre * rates.gamma_s;
    h.at(kA, kA) = pre * rates.gamma_a;
    h.at(kE, kE) = pre * rates.gamma_e;
    return h;
}

}  // namespace dipoledyn
