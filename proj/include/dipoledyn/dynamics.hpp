// Time-dependent Schroedinger integration i d(psi)/dt = H(t) psi for the
// four-level system, accepting non-Hermitian H for conditional no-photon
// evolution (norm decays, no renormalization).
#pragma once

#include <functional>
#include <vector>

#include "dipoledyn/statespace.hpp"

namespace dipoledyn {

enum class Method { FixedRK4, AdaptiveRK45 };

struct IntegratorOptions {
    Method method = Method::AdaptiveRK45;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_dt = 2.0 * 3.14159265358979323846 / 50.0;  // resolves the shift oscillation
    double sample_every = 0.02;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;  // collective basis
    std::vector<double> norms;

    const StateVector& final_state() const { return states.back(); }
};

using HamiltonianFn = std::function<Operator(double)>;

struct IntegrationError : std::runtime_error {
    double t;
    explicit IntegrationError(double time)
        : std::runtime_error("integration failed near t = " + std::to_string(time)), t(time) {}
};

// Integrate from t0 to t_end, sampling at multiples of sample_every plus the
// endpoint.  psi0 must be collective-basis and normalized to within 1e-9 of
// either 1 (fresh state) or less (already decayed input).
Trajectory evolve_from(const HamiltonianFn& h, const StateVector& psi0, double t0, double t_end,
                       const IntegratorOptions& opts = {});

Trajectory evolve(const HamiltonianFn& h, const StateVector& psi0, double t_end,
                  const IntegratorOptions& opts = {});

// Two-level reference: population transferred by a resonant pulse on the
// collective g-s transition, sin^2(omega1 t / sqrt2).
double rabi_analytic_ps(double omega1, double t);

// Squared norm at each sample; the no-photon-emission probability.
std::vector<double> survival_probability(const Trajectory& traj);

// Integrate forward to t_end, then backward with the reversed generator
// -H(t_end - tau); returns the distance to the initial state.  Decay must be
// disabled (H Hermitian).
double time_reversal_check(const HamiltonianFn& h, const StateVector& psi0, double t_end,
                           const IntegratorOptions& opts = {});

}  // namespace dipoledyn
