#include "dipoledyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dipoledyn {

namespace {

constexpr Complex kI{0.0, 1.0};

using Vec4 = std::array<Complex, 4>;

Vec4 deriv(const HamiltonianFn& h, double t, const Vec4& y) {
    const Operator ht = h(t);
    Vec4 dy{};
    for (int r = 0; r < 4; ++r) {
        Complex acc = 0.0;
        for (int c = 0; c < 4; ++c) acc += ht.at(r, c) * y[c];
        dy[r] = -kI * acc;
    }
    return dy;
}

Vec4 axpy(const Vec4& y, double a, const Vec4& x) {
    Vec4 r;
    for (int i = 0; i < 4; ++i) r[i] = y[i] + a * x[i];
    return r;
}

bool finite(const Vec4& y) {
    for (const Complex& c : y)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

Vec4 rk4_step(const HamiltonianFn& h, double t, const Vec4& y, double dt) {
    const Vec4 k1 = deriv(h, t, y);
    const Vec4 k2 = deriv(h, t + 0.5 * dt, axpy(y, 0.5 * dt, k1));
    const Vec4 k3 = deriv(h, t + 0.5 * dt, axpy(y, 0.5 * dt, k2));
    const Vec4 k4 = deriv(h, t + dt, axpy(y, dt, k3));
    Vec4 out;
    for (int i = 0; i < 4; ++i)
        out[i] = y[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

// Dormand-Prince 5(4) pair.
struct Dopri45Result {
    Vec4 y5;
    double err;  // scaled error estimate
};

Dopri45Result dopri45_step(const HamiltonianFn& h, double t, const Vec4& y, double dt,
                           double rel_tol, double abs_tol) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const Vec4 k1 = deriv(h, t, y);
    Vec4 tmp;
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + dt * a21 * k1[i];
    const Vec4 k2 = deriv(h, t + c2 * dt, tmp);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + dt * (a31 * k1[i] + a32 * k2[i]);
    const Vec4 k3 = deriv(h, t + c3 * dt, tmp);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + dt * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    const Vec4 k4 = deriv(h, t + c4 * dt, tmp);
    for (int i = 0; i < 4; ++i)
        tmp[i] = y[i] + dt * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    const Vec4 k5 = deriv(h, t + c5 * dt, tmp);
    for (int i = 0; i < 4; ++i)
        tmp[i] = y[i] + dt * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const Vec4 k6 = deriv(h, t + dt, tmp);

    Vec4 y5;
    for (int i = 0; i < 4; ++i)
        y5[i] = y[i] + dt * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    const Vec4 k7 = deriv(h, t + dt, y5);

    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
        const Complex de = dt * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                 e7 * k7[i]);
        const double scale = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
        err = std::max(err, std::abs(de) / scale);
    }
    if (!finite(y5) || !std::isfinite(err)) err = std::numeric_limits<double>::infinity();
    return {y5, err};
}

// Advance y from t0 to t1 (no sampling inside).
void advance(const HamiltonianFn& h, Vec4& y, double t0, double t1, const IntegratorOptions& opts,
             double& dt_hint) {
    const double span = t1 - t0;
    if (span <= 0.0) return;
    if (opts.method == Method::FixedRK4) {
        const int n = std::max(1, static_cast<int>(std::ceil(span / opts.max_dt)));
        const double dt = span / n;
        double t = t0;
        for (int i = 0; i < n; ++i) {
            y = rk4_step(h, t, y, dt);
            if (!finite(y)) throw IntegrationError(t);
            t += dt;
        }
        return;
    }
    double t = t0;
    double dt = std::min(dt_hint, std::min(opts.max_dt, span));
    while (t < t1) {
        dt = std::min(dt, t1 - t);
        if (dt < 1e-15 * std::max(1.0, std::abs(t))) throw IntegrationError(t);
        const Dopri45Result step = dopri45_step(h, t, y, dt, opts.rel_tol, opts.abs_tol);
        if (step.err <= 1.0) {
            y = step.y5;
            t += dt;
            const double grow = std::isinf(step.err) || step.err == 0.0
                                    ? 5.0
                                    : 0.9 * std::pow(step.err, -0.2);
            dt = std::min(opts.max_dt, dt * std::clamp(grow, 0.2, 5.0));
            dt_hint = dt;
        } else {
            dt *= std::clamp(0.9 * std::pow(step.err, -0.2), 0.1, 0.9);
        }
    }
}

}  // namespace

Trajectory evolve_from(const HamiltonianFn& h, const StateVector& psi0, double t0, double t_end,
                       const IntegratorOptions& opts) {
    if (psi0.basis != Basis::Collective)
        throw std::invalid_argument("evolve: initial state must be collective-basis");
    if (!(t_end > t0)) throw std::invalid_argument("evolve: t_end must exceed t0");
    if (!(opts.sample_every > 0.0) || !(opts.max_dt > 0.0) || !(opts.rel_tol > 0.0) ||
        !(opts.abs_tol > 0.0))
        throw std::invalid_argument("evolve: integrator options must be positive");

    Trajectory traj;
    Vec4 y = psi0.amp;
    double dt_hint = opts.max_dt;

    auto record = [&](double t) {
        StateVector s;
        s.basis = Basis::Collective;
        s.amp = y;
        traj.times.push_back(t);
        traj.norms.push_back(s.norm());
        traj.states.push_back(std::move(s));
    };

    record(t0);
    // Sample grid: absolute multiples of sample_every inside (t0, t_end), then t_end.
    long k = static_cast<long>(std::floor(t0 / opts.sample_every)) + 1;
    double t = t0;
    while (true) {
        double next = static_cast<double>(k) * opts.sample_every;
        if (next <= t0 + 1e-12 * std::max(1.0, std::abs(t0))) {
            ++k;
            continue;
        }
        if (next >= t_end - 1e-12 * std::max(1.0, std::abs(t_end))) break;
        advance(h, y, t, next, opts, dt_hint);
        t = next;
        record(t);
        ++k;
    }
    advance(h, y, t, t_end, opts, dt_hint);
    t = t_end;
    record(t);
    return traj;
}

Trajectory evolve(const HamiltonianFn& h, const StateVector& psi0, double t_end,
                  const IntegratorOptions& opts) {
    return evolve_from(h, psi0, 0.0, t_end, opts);
}

double rabi_analytic_ps(double omega1, double t) {
    if (!(omega1 > 0.0)) throw std::domain_error("omega1 must be positive");
    if (t < 0.0) throw std::domain_error("t must be non-negative");
    const double x = std::sin(omega1 * t / std::sqrt(2.0));
    return x * x;
}

std::vector<double> survival_probability(const Trajectory& traj) {
    std::vector<double> p;
    p.reserve(traj.norms.size());
    for (double n : traj.norms) p.push_back(n * n);
    return p;
}

double time_reversal_check(const HamiltonianFn& h, const StateVector& psi0, double t_end,
                           const IntegratorOptions& opts) {
    const Trajectory fwd = evolve(h, psi0, t_end, opts);
    const HamiltonianFn reversed = [&h, t_end](double tau) {
        return Complex{-1.0, 0.0} * h(t_end - tau);
    };
    const Trajectory bwd = evolve(reversed, fwd.final_state(), t_end, opts);
    const StateVector& back = bwd.final_state();
    double d2 = 0.0;
    for (int i = 0; i < 4; ++i) d2 += std::norm(back.amp[i] - psi0.amp[i]);
    return std::sqrt(d2);
}

}  // namespace dipoledyn
