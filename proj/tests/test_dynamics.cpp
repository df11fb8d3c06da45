#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "dipoledyn/dynamics.hpp"
#include "dipoledyn/gates.hpp"
#include "dipoledyn/hamiltonians.hpp"

using namespace dipoledyn;

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

HamiltonianFn zero_h() {
    return [](double) { return Operator::zero(); };
}

StateVector minus_combo() {
    return StateVector(Basis::Collective,
                       {Complex{0}, Complex{kInvSqrt2}, Complex{-kInvSqrt2}, Complex{0}});
}

}  // namespace

TEST_CASE("free evolution leaves the state unchanged") {
    const StateVector psi0(Basis::Collective,
                           {Complex{0.5}, Complex{0.5}, Complex{0.5}, Complex{0.5}});
    const Trajectory traj = evolve(zero_h(), psi0, 5.0);
    for (const StateVector& s : traj.states)
        for (int k = 0; k < 4; ++k) CHECK(std::abs(s.amp[k] - psi0.amp[k]) < 1e-12);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(5.0));
    for (std::size_t i = 1; i < traj.times.size(); ++i) CHECK(traj.times[i] > traj.times[i - 1]);
}

TEST_CASE("ideal swap generator matches the closed-form rotation") {
    const double om = 0.5;
    const HamiltonianFn h = [om](double) { return h_cnot_ideal(om); };
    IntegratorOptions opts;
    opts.rel_tol = 1e-12;
    opts.abs_tol = 1e-14;
    const StateVector e = StateVector::basis_state(Basis::Collective, kE);
    const Trajectory traj = evolve(h, e, 4.0 * kPi / om, opts);
    const StateVector d = minus_combo();
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        const Complex ce = std::cos(om * t / 2.0);
        const Complex cd = Complex{0.0, -1.0} * std::sin(om * t / 2.0);
        // expected state: cos|e> - i sin (|s>-|a>)/sqrt2
        worst = std::max(worst, std::abs(traj.states[i].amp[kE] - ce));
        worst = std::max(worst, std::abs(traj.states[i].amp[kS] - cd * d.amp[kS]));
        worst = std::max(worst, std::abs(traj.states[i].amp[kA] - cd * d.amp[kA]));
        worst = std::max(worst, std::abs(traj.states[i].amp[kG]));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("resonant preparation pulse tracks the two-level sine") {
    const double om = 0.25;
    const HamiltonianFn h = [om](double t) { return h_interaction({{{om, om}, 0.5}}, t); };
    const Trajectory traj = evolve(h, StateVector::basis_state(Basis::Collective, kG), 20.0);
    double fmax = 0.0;
    for (const StateVector& s : traj.states) fmax = std::max(fmax, std::norm(s.amp[kS]));
    CHECK(fmax == doctest::Approx(0.962).epsilon(0.01));

    // agreement with sin^2(omega t/sqrt2) improves for smaller Rabi frequency
    const auto max_deviation = [](double omega) {
        const HamiltonianFn hh = [omega](double t) {
            return h_interaction({{{omega, omega}, 0.5}}, t);
        };
        const double t_pi = kPi / (std::sqrt(2.0) * omega);
        const Trajectory tr = evolve(hh, StateVector::basis_state(Basis::Collective, kG), t_pi);
        double dev = 0.0;
        for (std::size_t i = 0; i < tr.times.size(); ++i)
            dev = std::max(dev, std::abs(std::norm(tr.states[i].amp[kS]) -
                                         rabi_analytic_ps(omega, tr.times[i])));
        return dev;
    };
    CHECK(max_deviation(0.05) < max_deviation(0.25));
}

TEST_CASE("analytic pulse-area reference") {
    CHECK(rabi_analytic_ps(0.25, 0.0) == doctest::Approx(0.0));
    CHECK(rabi_analytic_ps(0.25, kPi / (std::sqrt(2.0) * 0.25)) == doctest::Approx(1.0));
    CHECK(rabi_analytic_ps(0.25, kPi / (2.0 * std::sqrt(2.0) * 0.25)) == doctest::Approx(0.5));
    CHECK_THROWS_AS(rabi_analytic_ps(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(rabi_analytic_ps(0.25, -1.0), std::domain_error);
}

TEST_CASE("norm is conserved under hermitian evolution") {
    const HamiltonianFn h = [](double t) { return h_cnot(0.25, t); };
    const Trajectory traj = evolve(h, StateVector::basis_state(Basis::Collective, kE), 20.0);
    for (double n : traj.norms) CHECK(std::abs(n - 1.0) <= 1e-9);
}

TEST_CASE("conditional decay of the doubly excited state") {
    const double a = 1.0 / 375.0;
    const DecayRates rates{1.992, 0.008, 2.0};
    const Operator decay = decay_diagonal(rates, a);
    const HamiltonianFn h = [decay](double) { return decay; };
    const Trajectory traj = evolve(h, StateVector::basis_state(Basis::Collective, kE), 100.0);
    const auto survival = survival_probability(traj);
    // single decaying amplitude: |<e|psi>|^2 = exp(-gamma_e * a * t)
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double want = std::exp(-2.0 * a * traj.times[i]);
        CHECK(survival[i] == doctest::Approx(want).epsilon(1e-8));
    }
    // norms never increase
    for (std::size_t i = 1; i < traj.norms.size(); ++i)
        CHECK(traj.norms[i] <= traj.norms[i - 1] + 1e-12);
}

TEST_CASE("subradiant state survives at vanishing separation") {
    const DecayRates rates{2.0, 0.0, 2.0};  // k0r -> 0 limit
    const Operator decay = decay_diagonal(rates, 1.0 / 375.0);
    const HamiltonianFn h = [decay](double) { return decay; };
    const Trajectory traj = evolve(h, StateVector::basis_state(Basis::Collective, kA), 50.0);
    for (double n : traj.norms) CHECK(n == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("time reversal returns to the initial state") {
    CHECK(time_reversal_check(zero_h(), StateVector::basis_state(Basis::Collective, kS), 3.0) ==
          doctest::Approx(0.0));

    const HamiltonianFn prep = [](double t) { return h_interaction({{{0.25, 0.25}, 0.5}}, t); };
    CHECK(time_reversal_check(prep, StateVector::basis_state(Basis::Collective, kG), 10.0) <= 1e-7);

    const HamiltonianFn cnot = [](double t) { return h_cnot(0.25, t); };
    CHECK(time_reversal_check(cnot, StateVector::basis_state(Basis::Collective, kE), 2.0 * kPi) <=
          1e-7);
}

TEST_CASE("fixed-step integrator converges at fourth order") {
    const double om = 0.5;
    const HamiltonianFn h = [om](double) { return h_cnot_ideal(om); };
    const StateVector e = StateVector::basis_state(Basis::Collective, kE);
    const double t_end = 4.0 * kPi / om;

    const auto global_error = [&](double dt) {
        IntegratorOptions opts;
        opts.method = Method::FixedRK4;
        opts.max_dt = dt;
        opts.sample_every = t_end;  // only endpoint
        const Trajectory traj = evolve(h, e, t_end, opts);
        const StateVector& fin = traj.final_state();
        const Complex ce = std::cos(om * t_end / 2.0);
        const Complex cd = Complex{0.0, -1.0} * std::sin(om * t_end / 2.0);
        double err = std::abs(fin.amp[kE] - ce);
        err = std::max(err, std::abs(fin.amp[kS] - cd * kInvSqrt2));
        err = std::max(err, std::abs(fin.amp[kA] + cd * kInvSqrt2));
        return err;
    };
    const double e1 = global_error(0.1);
    const double e2 = global_error(0.05);
    const double ratio = e1 / e2;
    CHECK(ratio > 8.0);   // dt^4 scaling within a factor of two
    CHECK(ratio < 32.0);
}

TEST_CASE("halving the step cap leaves converged amplitudes unchanged") {
    const HamiltonianFn h = [](double t) { return h_interaction({{{0.25, 0.25}, 0.5}}, t); };
    IntegratorOptions opts;
    const Trajectory a = evolve(h, StateVector::basis_state(Basis::Collective, kG), 10.0, opts);
    opts.max_dt /= 2.0;
    const Trajectory b = evolve(h, StateVector::basis_state(Basis::Collective, kG), 10.0, opts);
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(a.final_state().amp[k] - b.final_state().amp[k]) <= 10.0 * opts.rel_tol);
}

TEST_CASE("integration failure carries a diagnostic time") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const HamiltonianFn h = [nan](double t) {
        Operator o = Operator::zero();
        if (t > 1.0) o.at(kS, kS) = nan;
        o.at(kS, kE) = 0.3;
        o.at(kE, kS) = 0.3;
        return o;
    };
    const StateVector s = StateVector::basis_state(Basis::Collective, kS);
    CHECK_THROWS_AS(evolve(h, s, 2.0), IntegrationError);
    try {
        evolve(h, s, 2.0);
    } catch (const IntegrationError& e) {
        CHECK(e.t == doctest::Approx(1.0).epsilon(0.1));
    }
}

TEST_CASE("evolve rejects bad inputs") {
    const StateVector p = StateVector::basis_state(Basis::Product, 0);
    CHECK_THROWS_AS(evolve(zero_h(), p, 1.0), std::invalid_argument);
    const StateVector c = StateVector::basis_state(Basis::Collective, 0);
    CHECK_THROWS_AS(evolve(zero_h(), c, 0.0), std::invalid_argument);
    IntegratorOptions bad;
    bad.sample_every = 0.0;
    CHECK_THROWS_AS(evolve(zero_h(), c, 1.0, bad), std::invalid_argument);
}
