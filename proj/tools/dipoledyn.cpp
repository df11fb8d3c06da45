// Command-line front-end: coupling queries, gate runs, sweeps, truth tables,
// and experimental-feasibility reports.  Data goes to stdout (or --out);
// diagnostics go to stderr.  Exit codes: 0 success, 1 domain error, 2 usage.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dipoledyn/coupling.hpp"
#include "dipoledyn/feasibility.hpp"
#include "dipoledyn/gates.hpp"
#include "dipoledyn/sweeps.hpp"

namespace dd = dipoledyn;
using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Options {
    double k0r = 0.2;
    double theta = kPi / 2.0;
    double rabi = 0.25;
    double detuning_ratio = 1.0;
    double rabi_ratio = 1.0;
    double tmax = 20.0;
    int points = 200;
    double min = 0.02;
    double max = 0.5;
    double mass = 100.0;
    double lambda0 = 10e-6;
    int ion = 1;
    double angle = kPi;
    double decay_a_over_imc = 0.0;
    double einstein_a = 0.0;
    std::string kind = "shift";
    std::string out;
    std::string config;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Merge a nested JSON config under flag values: an explicitly passed flag
// wins over the file; the file wins over defaults.  Unknown keys anywhere in
// the file are rejected.
void apply_config(const std::string& path, Options& o, CLI::App* sub) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config parse error: ") + e.what());
    }
    const auto flag_given = [sub](const std::string& name) {
        return sub->count(name) > 0;
    };
    const auto take = [&](const json& obj, const char* key, const std::string& flag, auto& dest) {
        if (!obj.contains(key)) return;
        if (!flag_given(flag)) dest = obj.at(key).get<std::decay_t<decltype(dest)>>();
    };
    const auto reject_unknown = [](const json& obj, std::initializer_list<const char*> known,
                                   const std::string& where) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool ok = false;
            for (const char* k : known)
                if (it.key() == k) ok = true;
            if (!ok) throw UsageError("unknown config key: " + where + it.key());
        }
    };
    if (!doc.is_object()) throw UsageError("config root must be an object");
    reject_unknown(doc, {"drive", "sweep", "scenario", "gate", "out"}, "");
    if (doc.contains("drive")) {
        const json& d = doc["drive"];
        reject_unknown(d, {"rabi", "detuning_ratio", "rabi_ratio", "decay_a_over_imc"}, "drive.");
        take(d, "rabi", "--rabi", o.rabi);
        take(d, "detuning_ratio", "--detuning-ratio", o.detuning_ratio);
        take(d, "rabi_ratio", "--rabi-ratio", o.rabi_ratio);
        take(d, "decay_a_over_imc", "--decay-a-over-imc", o.decay_a_over_imc);
    }
    if (doc.contains("sweep")) {
        const json& d = doc["sweep"];
        reject_unknown(d, {"kind", "min", "max", "points", "tmax"}, "sweep.");
        take(d, "kind", "--kind", o.kind);
        take(d, "min", "--min", o.min);
        take(d, "max", "--max", o.max);
        take(d, "points", "--points", o.points);
        take(d, "tmax", "--tmax", o.tmax);
    }
    if (doc.contains("scenario")) {
        const json& d = doc["scenario"];
        reject_unknown(d, {"mass", "lambda0", "k0r", "theta", "einstein_a"}, "scenario.");
        take(d, "mass", "--mass", o.mass);
        take(d, "lambda0", "--lambda0", o.lambda0);
        take(d, "k0r", "--k0r", o.k0r);
        take(d, "theta", "--theta", o.theta);
        take(d, "einstein_a", "--einstein-a", o.einstein_a);
    }
    if (doc.contains("gate")) {
        const json& d = doc["gate"];
        reject_unknown(d, {"ion", "angle"}, "gate.");
        take(d, "ion", "--ion", o.ion);
        take(d, "angle", "--angle", o.angle);
    }
    if (doc.contains("out") && !flag_given("--out")) o.out = doc["out"].get<std::string>();
}

dd::Table coupling_table(const Options& o) {
    const dd::CouplingConstant c = dd::coupling_c(o.k0r, o.theta);
    const dd::DecayRates rates = dd::decay_rates(c);
    const struct {
        const char* name;
        double value;
    } rows[] = {
        {"re_c", c.value.real()},
        {"im_c_full", c.value.imag()},
        {"im_c_small_r", dd::im_c_small_r(o.k0r)},
        {"im_c_leading", dd::im_c_leading(o.k0r)},
        {"gamma_s", rates.gamma_s},
        {"gamma_a", rates.gamma_a},
        {"gamma_e", rates.gamma_e},
    };
    dd::Table out;
    out.columns = {"value"};
    for (const auto& r : rows) {
        out.rows.push_back({r.value});
        out.footnotes.push_back(std::string(r.name) + " = " + fmt(r.value));
    }
    out.footnotes.emplace_back("all quantities in units of A");
    return out;
}

dd::Table feasibility_table(const Options& o) {
    dd::PhysicalScenario s;
    s.lambda0_m = o.lambda0;
    s.k0r = o.k0r;
    s.mass_amu = o.mass;
    s.theta = o.theta;
    s.einstein_a = o.einstein_a;
    const dd::ScenarioReport rep = dd::scenario_report(s);
    dd::Table out;
    out.columns = {"value"};
    const struct {
        const char* name;
        double value;
    } rows[] = {
        {"r_m", rep.r_m},
        {"abs_im_c_full_over_a", rep.abs_im_c_full},
        {"abs_im_c_small_r_over_a", rep.abs_im_c_small_r},
        {"im_c_leading_over_a", rep.im_c_leading},
        {"gamma_s_over_a", rep.rates.gamma_s},
        {"gamma_a_over_a", rep.rates.gamma_a},
        {"gamma_e_over_a", rep.rates.gamma_e},
        {"trap_frequency_hz", rep.trap_hz},
        {"t_pi_s", rep.t_pi_s},
    };
    for (const auto& r : rows) {
        out.rows.push_back({r.value});
        out.footnotes.push_back(std::string(r.name) + " = " + fmt(r.value));
    }
    return out;
}

dd::Table gate_dynamics_table(const dd::PulseSchedule& sched, const dd::StateVector& psi0,
                              double decay_a, bool product_basis) {
    dd::Trajectory traj;
    if (decay_a > 0.0) {
        const dd::DecayRates rates = dd::decay_rates(dd::coupling_c(0.2, kPi / 2.0));
        traj = dd::run_schedule(sched, psi0, rates, decay_a, dd::sweep_integrator_options());
    } else {
        traj = dd::run_schedule(sched, psi0, dd::sweep_integrator_options());
    }
    dd::Table t;
    t.columns = product_basis ? std::vector<std::string>{"t", "P_00", "P_01", "P_10", "P_11", "norm"}
                              : std::vector<std::string>{"t", "P_g", "P_s", "P_a", "P_e", "norm"};
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        dd::StateVector s = traj.states[i];
        if (product_basis) s = dd::to_product(s);
        const auto pop = dd::populations(s);
        t.rows.push_back({traj.times[i], pop[0], pop[1], pop[2], pop[3], traj.norms[i]});
    }
    return t;
}

dd::Table truth_table_table(const Options& o) {
    const dd::GateResult res =
        dd::truth_table(dd::schedule_cnot(o.rabi), dd::sweep_integrator_options());
    dd::Table t;
    t.columns = {"input",  "re_g", "im_g", "re_s", "im_s",
                 "re_a",   "im_a", "re_e", "im_e"};
    for (int col = 0; col < 4; ++col) {
        std::vector<double> row{static_cast<double>(col)};
        for (int rrow = 0; rrow < 4; ++rrow) {
            row.push_back(res.realized.at(rrow, col).real());
            row.push_back(res.realized.at(rrow, col).imag());
        }
        t.rows.push_back(row);
    }
    t.footnotes.push_back("input order: g, s, a, e (collective basis columns)");
    t.footnotes.push_back("duration = " + fmt(res.duration));
    t.footnotes.push_back("fidelity_vs_ideal = " + fmt(res.fidelity_vs_ideal));
    t.footnotes.push_back("fidelity_phase_corrected = " + fmt(res.fidelity_phase_corrected));
    return t;
}

dd::Table single_qubit_table(const Options& o) {
    const dd::PulseSchedule sched = dd::schedule_single_qubit(o.ion, o.angle, o.rabi);
    dd::Table t = gate_dynamics_table(sched, dd::StateVector::basis_state(dd::Basis::Collective, dd::kG),
                                      o.decay_a_over_imc, true);
    const dd::GateResult res = dd::truth_table(sched, dd::ideal_rotation(o.ion, o.angle),
                                               dd::sweep_integrator_options());
    t.footnotes.push_back("duration = " + fmt(res.duration));
    t.footnotes.push_back("fidelity_vs_ideal = " + fmt(res.fidelity_vs_ideal));
    return t;
}

int run(int argc, char** argv) {
    CLI::App app{"simulator for two dipole-dipole coupled trapped ions"};
    app.require_subcommand(1);

    Options o;
    std::vector<CLI::App*> subs;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--k0r", o.k0r, "ion separation times transition wavenumber");
        sub->add_option("--theta", o.theta, "dipole angle, radians");
        sub->add_option("--rabi", o.rabi, "Rabi frequency, units Im C");
        sub->add_option("--detuning-ratio", o.detuning_ratio, "detuning over (Im C)/2");
        sub->add_option("--rabi-ratio", o.rabi_ratio, "executed over nominal Rabi frequency");
        sub->add_option("--tmax", o.tmax, "integration horizon, units 1/Im C");
        sub->add_option("--points", o.points, "sweep grid size");
        sub->add_option("--min", o.min, "sweep lower bound");
        sub->add_option("--max", o.max, "sweep upper bound");
        sub->add_option("--mass", o.mass, "ion mass, amu");
        sub->add_option("--lambda0", o.lambda0, "transition wavelength, m");
        sub->add_option("--ion", o.ion, "target ion, 1 or 2");
        sub->add_option("--angle", o.angle, "rotation angle, radians");
        sub->add_option("--decay-a-over-imc", o.decay_a_over_imc, "A/Im C; 0 disables decay");
        sub->add_option("--einstein-a", o.einstein_a, "Einstein coefficient, 1/s");
        sub->add_option("--kind", o.kind,
                        "sweep kind: shift | rabi-error | detuning | state-prep | cnot-dynamics");
        sub->add_option("--out", o.out, "output file (default stdout)");
        sub->add_option("--config", o.config, "JSON config file");
        subs.push_back(sub);
        return sub;
    };

    CLI::App* c_coupling = add_common(app.add_subcommand("coupling", "coupling constant and decay rates"));
    CLI::App* c_prep_s = add_common(app.add_subcommand("prep-s", "symmetric-state preparation dynamics"));
    CLI::App* c_prep_a = add_common(app.add_subcommand("prep-a", "antisymmetric-state preparation dynamics"));
    CLI::App* c_cnot = add_common(app.add_subcommand("cnot", "conditional-gate dynamics from |e>"));
    CLI::App* c_single = add_common(app.add_subcommand("single-qubit", "two-step single-ion rotation"));
    CLI::App* c_truth = add_common(app.add_subcommand("truth-table", "realized conditional gate"));
    CLI::App* c_sweep = add_common(app.add_subcommand("sweep", "parameter sweeps"));
    CLI::App* c_feas = add_common(app.add_subcommand("feasibility", "physical-unit scenario report"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    }

    CLI::App* active = nullptr;
    for (CLI::App* sub : subs)
        if (sub->parsed()) active = sub;
    if (active == nullptr) throw UsageError("no subcommand given");
    if (!o.config.empty()) apply_config(o.config, o, active);

    dd::Table table;
    if (active == c_coupling) {
        table = coupling_table(o);
    } else if (active == c_prep_s) {
        table = dd::run_state_prep(o.rabi, o.detuning_ratio, o.rabi_ratio, o.tmax, dd::kS,
                                   o.decay_a_over_imc);
    } else if (active == c_prep_a) {
        table = dd::run_state_prep(o.rabi, o.detuning_ratio, o.rabi_ratio, o.tmax, dd::kA,
                                   o.decay_a_over_imc);
    } else if (active == c_cnot) {
        table = dd::run_cnot_dynamics(o.rabi, o.tmax, o.decay_a_over_imc);
    } else if (active == c_single) {
        table = single_qubit_table(o);
    } else if (active == c_truth) {
        table = truth_table_table(o);
    } else if (active == c_sweep) {
        dd::SweepSpec spec;
        spec.min = o.min;
        spec.max = o.max;
        spec.points = o.points;
        spec.omega1 = o.rabi;
        spec.detuning_ratio = o.detuning_ratio;
        spec.rabi_ratio = o.rabi_ratio;
        spec.t_max = o.tmax;
        if (o.kind == "shift")
            spec.kind = dd::SweepSpec::Kind::ShiftVsSeparation;
        else if (o.kind == "rabi-error")
            spec.kind = dd::SweepSpec::Kind::RabiErrorFidelity;
        else if (o.kind == "detuning")
            spec.kind = dd::SweepSpec::Kind::DetuningFidelity;
        else if (o.kind == "state-prep")
            spec.kind = dd::SweepSpec::Kind::StatePrepDynamics;
        else if (o.kind == "cnot-dynamics")
            spec.kind = dd::SweepSpec::Kind::CnotDynamics;
        else
            throw UsageError("unknown sweep kind: " + o.kind);
        table = dd::run_sweep(spec);
    } else if (active == c_feas) {
        table = feasibility_table(o);
    }

    if (o.out.empty()) {
        dd::write_csv(table, std::cout);
    } else {
        std::ofstream out(o.out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + o.out);
        dd::write_csv(table, out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.get_name() << ": " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
