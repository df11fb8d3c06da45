#include "dipoledyn/sweeps.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace dipoledyn {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

StateVector swap_combo() {
    StateVector v;
    v.basis = Basis::Collective;
    v.amp[kS] = kInvSqrt2;
    v.amp[kA] = -kInvSqrt2;
    return v;
}

StateVector frozen_combo() {
    StateVector v;
    v.basis = Basis::Collective;
    v.amp[kS] = kInvSqrt2;
    v.amp[kA] = kInvSqrt2;
    return v;
}

double grid_point(double lo, double hi, int points, int i) {
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
}

// Final-state fidelities of a preparation pulse of nominal length
// pi/(sqrt2*omega1) executed with Rabi omega and detuning ratio.
struct PrepPoint {
    double ps_at_tpi;
    double f_max;
};

PrepPoint prep_point(double omega1, double executed_omega, double detuning_ratio, int target) {
    const double t_pi = kPi / (std::sqrt(2.0) * omega1);
    std::vector<CollectiveDrive> drives;
    if (target == kS)
        drives.push_back({{executed_omega, executed_omega}, detuning_ratio * 0.5});
    else
        drives.push_back({{executed_omega, -executed_omega}, -detuning_ratio * 0.5});
    const HamiltonianFn h = [drives](double t) { return h_interaction(drives, t); };
    const Trajectory traj = evolve(h, StateVector::basis_state(Basis::Collective, kG), t_pi,
                                   sweep_integrator_options());
    double fmax = 0.0;
    for (const StateVector& s : traj.states) fmax = std::max(fmax, std::norm(s.amp[target]));
    return {std::norm(traj.final_state().amp[target]), fmax};
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
    out << "# ";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << fmt(row[i]);
        }
        out << '\n';
    }
    for (const std::string& note : table.footnotes) out << "# " << note << '\n';
}

std::string to_csv(const Table& table) {
    std::ostringstream ss;
    write_csv(table, ss);
    return ss.str();
}

IntegratorOptions sweep_integrator_options() {
    IntegratorOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-13;
    return opts;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("DIPOLEDYN_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    }
    const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(n));
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            try {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n);  // stop handing out work
            }
        });
    }
    for (std::thread& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

Table run_sweep(const SweepSpec& spec) {
    using Kind = SweepSpec::Kind;
    switch (spec.kind) {
        case Kind::ShiftVsSeparation:
            return run_shift_sweep(spec.min, spec.max, spec.points);
        case Kind::StatePrepDynamics:
            return run_state_prep(spec.omega1, spec.detuning_ratio, spec.rabi_ratio, spec.t_max,
                                  spec.target);
        case Kind::RabiErrorFidelity:
            return run_rabi_error_sweep(spec.omega1, spec.min, spec.max, spec.points);
        case Kind::DetuningFidelity:
            return run_detuning_sweep(spec.omega1, spec.min, spec.max, spec.points);
        case Kind::CnotDynamics:
            return run_cnot_dynamics(spec.omega1, spec.t_max);
    }
    throw std::logic_error("unreachable sweep kind");
}

Table run_shift_sweep(double min_k0r, double max_k0r, int points) {
    if (!(min_k0r > 0.0 && min_k0r < max_k0r && max_k0r <= 0.5))
        throw std::domain_error("shift sweep: need 0 < min < max <= 0.5");
    if (points < 2) throw std::domain_error("shift sweep: need at least 2 points");
    Table t;
    t.columns = {"k0r", "log10_abs_im_c", "log10_leading", "re_c"};
    t.rows.resize(points);
    parallel_for(points, [&](int i) {
        const double x = grid_point(min_k0r, max_k0r, points, i);
        t.rows[i] = {x, std::log10(std::abs(im_c_small_r(x))), std::log10(im_c_leading(x)),
                     coupling_c(x, kPi / 2.0).value.real()};
    });
    return t;
}

Table run_state_prep(double omega1, double detuning_ratio, double rabi_ratio, double t_max,
                     int target, double decay_a_over_imc) {
    if (!(omega1 > 0.0 && omega1 <= 0.5))
        throw std::domain_error("state prep: omega1 must lie in (0, 0.5]");
    if (!(detuning_ratio > 0.0) || !(rabi_ratio > 0.0))
        throw std::domain_error("state prep: ratios must be positive");
    if (target != kS && target != kA) throw std::domain_error("state prep: target must be s or a");
    const double t_pi = kPi / (std::sqrt(2.0) * omega1);
    const double executed = rabi_ratio * omega1;
    std::vector<CollectiveDrive> drives;
    if (target == kS)
        drives.push_back({{executed, executed}, detuning_ratio * 0.5});
    else
        drives.push_back({{executed, -executed}, -detuning_ratio * 0.5});
    HamiltonianFn h = [drives](double t) { return h_interaction(drives, t); };
    if (decay_a_over_imc > 0.0) {
        // Decay rates of the k0r = 0.2 scenario.
        const DecayRates rates = decay_rates(coupling_c(0.2, kPi / 2.0));
        const Operator decay = decay_diagonal(rates, decay_a_over_imc);
        const HamiltonianFn bare = h;
        h = [bare, decay](double t) { return bare(t) + decay; };
    }
    const Trajectory traj = evolve(h, StateVector::basis_state(Basis::Collective, kG),
                                   std::max(t_max, t_pi), sweep_integrator_options());
    Table t;
    t.columns = {"t", "P_g", "P_s", "P_a", "P_e", "norm"};
    double f_max = 0.0, t_at_max = 0.0, ps_at_tpi = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto pop = populations(traj.states[i]);
        if (traj.times[i] <= t_max + 1e-12)
            t.rows.push_back({traj.times[i], pop[0], pop[1], pop[2], pop[3], traj.norms[i]});
        if (pop[target] > f_max) {
            f_max = pop[target];
            t_at_max = traj.times[i];
        }
    }
    // The nominal pulse end is generally off the sampling grid; integrate to
    // it exactly for the summary value.
    {
        const Trajectory at_tpi = evolve(h, StateVector::basis_state(Basis::Collective, kG), t_pi,
                                         sweep_integrator_options());
        ps_at_tpi = populations(at_tpi.final_state())[target];
    }
    t.footnotes.push_back("summary F_max=" + fmt(f_max) + " t_at_max=" + fmt(t_at_max) +
                          " P_target_at_Tpi=" + fmt(ps_at_tpi) + " Tpi=" + fmt(t_pi));
    return t;
}

Table run_rabi_error_sweep(double omega1, double min_ratio, double max_ratio, int points) {
    if (!(omega1 > 0.0 && omega1 <= 0.5))
        throw std::domain_error("rabi sweep: omega1 must lie in (0, 0.5]");
    if (!(min_ratio > 0.0 && min_ratio < max_ratio))
        throw std::domain_error("rabi sweep: need 0 < min < max");
    if (points < 2) throw std::domain_error("rabi sweep: need at least 2 points");
    Table t;
    t.columns = {"rabi_ratio", "Ps_at_Tpi", "F_max"};
    t.rows.resize(points);
    parallel_for(points, [&](int i) {
        const double ratio = grid_point(min_ratio, max_ratio, points, i);
        const PrepPoint p = prep_point(omega1, ratio * omega1, 1.0, kS);
        t.rows[i] = {ratio, p.ps_at_tpi, p.f_max};
    });
    return t;
}

Table run_detuning_sweep(double omega1, double min_ratio, double max_ratio, int points) {
    if (!(omega1 > 0.0 && omega1 <= 0.5))
        throw std::domain_error("detuning sweep: omega1 must lie in (0, 0.5]");
    if (!(min_ratio > 0.0 && min_ratio < max_ratio))
        throw std::domain_error("detuning sweep: need 0 < min < max");
    if (points < 2) throw std::domain_error("detuning sweep: need at least 2 points");
    Table t;
    t.columns = {"detuning_ratio", "Ps_at_Tpi", "F_max"};
    t.rows.resize(points);
    parallel_for(points, [&](int i) {
        const double ratio = grid_point(min_ratio, max_ratio, points, i);
        const PrepPoint p = prep_point(omega1, omega1, ratio, kS);
        t.rows[i] = {ratio, p.ps_at_tpi, p.f_max};
    });
    return t;
}

Table run_cnot_dynamics(double omega1r, double t_max, double decay_a_over_imc) {
    if (!(omega1r > 0.0 && omega1r <= 0.5))
        throw std::domain_error("cnot dynamics: omega1r must lie in (0, 0.5]");
    if (!(t_max > 0.0)) throw std::domain_error("cnot dynamics: t_max must be positive");
    HamiltonianFn h = [omega1r](double t) { return h_cnot(omega1r, t); };
    if (decay_a_over_imc > 0.0) {
        const DecayRates rates = decay_rates(coupling_c(0.2, kPi / 2.0));
        const Operator decay = decay_diagonal(rates, decay_a_over_imc);
        const HamiltonianFn bare = h;
        h = [bare, decay](double t) { return bare(t) + decay; };
    }
    const Trajectory traj = evolve(h, StateVector::basis_state(Basis::Collective, kE), t_max,
                                   sweep_integrator_options());
    const StateVector swap = swap_combo();
    const StateVector frozen = frozen_combo();
    Table t;
    t.columns = {"t", "P_g", "P_e", "P_swap", "P_frozen", "norm"};
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const StateVector& s = traj.states[i];
        t.rows.push_back({traj.times[i], std::norm(s.amp[kG]), std::norm(s.amp[kE]),
                          std::norm(inner(swap, s)), std::norm(inner(frozen, s)), traj.norms[i]});
    }
    t.footnotes.push_back("swap = (|s>-|a>)/sqrt2, frozen = (|s>+|a>)/sqrt2, initial state |e>");
    return t;
}

}  // namespace dipoledyn
