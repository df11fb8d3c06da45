#include "dipoledyn/statespace.hpp"

#include <cmath>

namespace dipoledyn {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_finite(const std::array<Complex, 4>& a) {
    for (const Complex& c : a) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("state amplitude is not finite");
    }
}

void require_basis(const StateVector& s, Basis b, const char* op) {
    if (s.basis != b)
        throw std::invalid_argument(std::string(op) + ": expected " + basis_name(b) +
                                    " basis, got " + basis_name(s.basis));
}

}  // namespace

const char* basis_name(Basis b) {
    return b == Basis::Product ? "product" : "collective";
}

StateVector::StateVector(Basis b, const std::array<Complex, 4>& a) : amp(a), basis(b) {
    require_finite(a);
}

StateVector StateVector::basis_state(Basis b, int index) {
    if (index < 0 || index > 3) throw std::invalid_argument("basis index out of range");
    StateVector s;
    s.basis = b;
    s.amp[index] = 1.0;
    return s;
}

StateVector StateVector::normalized(Basis b, const std::array<Complex, 4>& a) {
    require_finite(a);
    double n2 = 0.0;
    for (const Complex& c : a) n2 += std::norm(c);
    if (n2 <= 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    StateVector s;
    s.basis = b;
    const double inv = 1.0 / std::sqrt(n2);
    for (int i = 0; i < 4; ++i) s.amp[i] = a[i] * inv;
    return s;
}

double StateVector::norm_sq() const {
    double n2 = 0.0;
    for (const Complex& c : amp) n2 += std::norm(c);
    return n2;
}

double StateVector::norm() const { return std::sqrt(norm_sq()); }

Operator Operator::zero(Basis b) {
    Operator o;
    o.basis = b;
    return o;
}

Operator Operator::identity(Basis b) {
    Operator o;
    o.basis = b;
    for (int i = 0; i < 4; ++i) o.at(i, i) = 1.0;
    return o;
}

Operator Operator::adjoint() const {
    Operator o;
    o.basis = basis;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) o.at(r, c) = std::conj(at(c, r));
    return o;
}

bool Operator::is_hermitian(double tol) const {
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
    return true;
}

Operator operator+(const Operator& x, const Operator& y) {
    if (x.basis != y.basis) throw std::invalid_argument("operator+: basis mismatch");
    Operator o;
    o.basis = x.basis;
    for (int i = 0; i < 16; ++i) o.m[i] = x.m[i] + y.m[i];
    return o;
}

Operator operator-(const Operator& x, const Operator& y) {
    if (x.basis != y.basis) throw std::invalid_argument("operator-: basis mismatch");
    Operator o;
    o.basis = x.basis;
    for (int i = 0; i < 16; ++i) o.m[i] = x.m[i] - y.m[i];
    return o;
}

Operator operator*(const Operator& x, const Operator& y) {
    if (x.basis != y.basis) throw std::invalid_argument("operator*: basis mismatch");
    Operator o;
    o.basis = x.basis;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            Complex acc = 0.0;
            for (int k = 0; k < 4; ++k) acc += x.at(r, k) * y.at(k, c);
            o.at(r, c) = acc;
        }
    return o;
}

Operator operator*(Complex c, const Operator& x) {
    Operator o;
    o.basis = x.basis;
    for (int i = 0; i < 16; ++i) o.m[i] = c * x.m[i];
    return o;
}

double max_abs_diff(const Operator& x, const Operator& y) {
    double d = 0.0;
    for (int i = 0; i < 16; ++i) d = std::max(d, std::abs(x.m[i] - y.m[i]));
    return d;
}

Operator basis_transform() {
    // |g>=|00>, |s>=(|01>+|10>)/sqrt2, |a>=(|01>-|10>)/sqrt2, |e>=|11>.
    Operator u = Operator::zero(Basis::Product);
    u.at(kG, 0) = 1.0;
    u.at(kS, 1) = kInvSqrt2;
    u.at(kS, 2) = kInvSqrt2;
    u.at(kA, 1) = kInvSqrt2;
    u.at(kA, 2) = -kInvSqrt2;
    u.at(kE, 3) = 1.0;
    return u;
}

StateVector to_collective(const StateVector& s) {
    require_basis(s, Basis::Product, "to_collective");
    const Operator u = basis_transform();
    StateVector out;
    out.basis = Basis::Collective;
    for (int r = 0; r < 4; ++r) {
        Complex acc = 0.0;
        for (int c = 0; c < 4; ++c) acc += u.at(r, c) * s.amp[c];
        out.amp[r] = acc;
    }
    return out;
}

StateVector to_product(const StateVector& s) {
    require_basis(s, Basis::Collective, "to_product");
    // The transform is its own inverse.
    const Operator u = basis_transform();
    StateVector out;
    out.basis = Basis::Product;
    for (int r = 0; r < 4; ++r) {
        Complex acc = 0.0;
        for (int c = 0; c < 4; ++c) acc += u.at(r, c) * s.amp[c];
        out.amp[r] = acc;
    }
    return out;
}

StateVector apply(const Operator& op, const StateVector& s) {
    if (op.basis != s.basis) throw std::invalid_argument("apply: basis mismatch");
    StateVector out;
    out.basis = s.basis;
    for (int r = 0; r < 4; ++r) {
        Complex acc = 0.0;
        for (int c = 0; c < 4; ++c) acc += op.at(r, c) * s.amp[c];
        out.amp[r] = acc;
    }
    return out;
}

std::array<double, 4> populations(const StateVector& s) {
    return {std::norm(s.amp[0]), std::norm(s.amp[1]), std::norm(s.amp[2]), std::norm(s.amp[3])};
}

Complex inner(const StateVector& bra, const StateVector& ket) {
    if (bra.basis != ket.basis) throw std::invalid_argument("inner: basis mismatch");
    Complex acc = 0.0;
    for (int i = 0; i < 4; ++i) acc += std::conj(bra.amp[i]) * ket.amp[i];
    return acc;
}

}  // namespace dipoledyn
