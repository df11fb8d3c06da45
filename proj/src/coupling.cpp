#include "dipoledyn/coupling.hpp"

#include <cmath>

namespace dipoledyn {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr Complex kI{0.0, 1.0};

void require_k0r(double k0r) {
    if (!(k0r > 0.0) || !std::isfinite(k0r))
        throw std::domain_error("k0r must be positive and finite");
}

}  // namespace

CouplingConstant coupling_c(double k0r, double theta) {
    require_k0r(k0r);
    if (!(theta >= 0.0 && theta <= kPi))
        throw std::domain_error("theta must lie in [0, pi]");
    const double c2 = std::cos(theta) * std::cos(theta);
    const double x = k0r;
    const Complex phase = std::exp(kI * x);
    const Complex near = (1.0 / (x * x) - 1.0 / (kI * x * x * x)) * (1.0 - 3.0 * c2);
    const Complex far = (1.0 - c2) / (kI * x);
    CouplingConstant c;
    c.value = 1.5 * phase * (far + near);
    c.k0r = k0r;
    c.theta = theta;
    return c;
}

double im_c_small_r(double k0r) {
    require_k0r(k0r);
    const double x = k0r;
    return -3.0 * (std::sin(x) / (x * x) + std::cos(x) / (x * x * x));
}

double im_c_leading(double k0r) {
    require_k0r(k0r);
    return 3.0 / (k0r * k0r * k0r);
}

DecayRates decay_rates(const CouplingConstant& c) {
    return {1.0 + c.value.real(), 1.0 - c.value.real(), 2.0};
}

double k0r_for_shift(double target_abs_im_c, ShiftFormula formula) {
    if (!(target_abs_im_c > 0.0)) throw std::domain_error("target shift must be positive");
    const auto shift = [formula](double x) {
        return formula == ShiftFormula::SmallSeparation
                   ? std::abs(im_c_small_r(x))
                   : std::abs(coupling_c(x, kPi / 2.0).value.imag());
    };
    double lo = 1e-3, hi = 0.5;
    // |Im C| decreases with separation on this bracket.
    if (target_abs_im_c > shift(lo) || target_abs_im_c < shift(hi))
        throw std::domain_error("target shift is outside the solvable bracket");
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (shift(mid) > target_abs_im_c)
            lo = mid;
        else
            hi = mid;
        if ((hi - lo) / hi < 1e-12) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace dipoledyn
