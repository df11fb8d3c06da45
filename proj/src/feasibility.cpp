#include "dipoledyn/feasibility.hpp"

#include <cmath>

namespace dipoledyn {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double separation(double k0r, double lambda0_m) {
    if (!(k0r > 0.0) || !(lambda0_m > 0.0))
        throw std::domain_error("separation: inputs must be positive");
    return k0r * lambda0_m / (2.0 * kPi);
}

double trap_frequency_hz(double mass_amu, double r_m) {
    if (!(mass_amu > 0.0) || !(r_m > 0.0))
        throw std::domain_error("trap_frequency: inputs must be positive");
    const double e = constants::elementary_charge;
    const double num = e * e;
    const double den = 2.0 * kPi * constants::vacuum_permittivity * mass_amu *
                       constants::atomic_mass * r_m * r_m * r_m;
    return std::sqrt(num / den) / (2.0 * kPi);
}

ScenarioReport scenario_report(const PhysicalScenario& s) {
    if (!(s.k0r > 0.0 && s.k0r <= 1.0))
        throw std::domain_error("scenario: k0r must lie in (0, 1]");
    ScenarioReport rep;
    rep.r_m = separation(s.k0r, s.lambda0_m);
    const CouplingConstant c = coupling_c(s.k0r, s.theta);
    rep.abs_im_c_full = std::abs(c.value.imag());
    rep.abs_im_c_small_r = std::abs(im_c_small_r(s.k0r));
    rep.im_c_leading = im_c_leading(s.k0r);
    rep.rates = decay_rates(c);
    rep.trap_hz = trap_frequency_hz(s.mass_amu, rep.r_m);
    if (s.einstein_a > 0.0) {
        const double im_c_per_s = rep.im_c_leading * s.einstein_a;
        rep.t_pi_s = kPi / (std::sqrt(2.0) * 0.25 * im_c_per_s);
    }
    return rep;
}

}  // namespace dipoledyn
