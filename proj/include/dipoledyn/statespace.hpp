// Four-dimensional state and operator algebra for two coupled two-level ions,
// with the transform between the product basis {|00>,|01>,|10>,|11>} and the
// collective basis {|g>,|s>,|a>,|e>}.
#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace dipoledyn {

using Complex = std::complex<double>;

enum class Basis { Product, Collective };

// Collective index order: g, s, a, e.  Product index order: 00, 01, 10, 11.
inline constexpr int kG = 0;
inline constexpr int kS = 1;
inline constexpr int kA = 2;
inline constexpr int kE = 3;

const char* basis_name(Basis b);

struct StateVector {
    std::array<Complex, 4> amp{};
    Basis basis = Basis::Collective;

    StateVector() = default;
    StateVector(Basis b, const std::array<Complex, 4>& a);

    // Unit vector along one basis direction.
    static StateVector basis_state(Basis b, int index);
    // Normalizes the given amplitudes; rejects the zero vector.
    static StateVector normalized(Basis b, const std::array<Complex, 4>& a);

    double norm_sq() const;
    double norm() const;
};

struct Operator {
    std::array<Complex, 16> m{};  // row-major
    Basis basis = Basis::Collective;

    static Operator zero(Basis b = Basis::Collective);
    static Operator identity(Basis b = Basis::Collective);

    Complex& at(int r, int c) { return m[4 * r + c]; }
    const Complex& at(int r, int c) const { return m[4 * r + c]; }

    Operator adjoint() const;
    bool is_hermitian(double tol = 1e-12) const;
};

Operator operator+(const Operator& x, const Operator& y);
Operator operator-(const Operator& x, const Operator& y);
Operator operator*(const Operator& x, const Operator& y);
Operator operator*(Complex c, const Operator& x);

// Largest entrywise |x - y|.
double max_abs_diff(const Operator& x, const Operator& y);

// The symmetric orthogonal matrix mapping product amplitudes to collective
// ones; it is its own inverse.
Operator basis_transform();

StateVector to_collective(const StateVector& s);
StateVector to_product(const StateVector& s);

// Matrix-vector product; no normalization is applied.
StateVector apply(const Operator& op, const StateVector& s);

// Squared moduli of the four amplitudes, in basis order.
std::array<double, 4> populations(const StateVector& s);

// <bra|ket>, conjugating the first argument.
Complex inner(const StateVector& bra, const StateVector& ket);

}  // namespace dipoledyn
