#pragma once

// Deformed arithmetic at roots of unity: q-integers, q-factorials, the
// truncated deformed exponential and the square-root branch used for the
// matrix elements of the k-fermion representation.

#include <complex>
#include <stdexcept>

namespace kfsusy {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Default tolerance for identity checks.
inline constexpr double kDefaultTol = 1e-10;

class BaseTooCloseToOne : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The primitive k-th root of unity q = exp(2 pi i / k) together with its
/// conjugate. Half-integer powers of q are taken on the principal branch,
/// q^(m/2) = exp(i pi m / k).
struct Deformation {
    int k = 2;
    Complex q;
    Complex qbar;

    explicit Deformation(int order);

    /// q^(m/2) = exp(i pi m / k)
    Complex half_power(int m) const;
    /// q^m, reduced modulo k before evaluation
    Complex power(int m) const;
};

/// [x]_p = (1 - p^x) / (1 - p). Throws BaseTooCloseToOne if |1 - p| <= 1e-12.
Complex qnumber(double x, Complex p);

/// [n]_p! = [1]_p [2]_p ... [n]_p, with [0]_p! = 1.
Complex qfactorial(int n, Complex p);

/// Square root with arg in (-pi/2, pi/2]; the negative real axis maps to +i.
Complex principal_sqrt(Complex z);

/// ([n]_p!)^(1/2) taken as the product of principal square roots of the
/// factors [1]_p ... [n]_p. This is the normalization under which
/// (f_+)^n |0> = ([n]_p!)^(1/2) |n> holds in the k-fermion representation.
Complex root_qfactorial(int n, Complex p);

/// sum_{n < terms} x^n / [n]_p!
Complex qexp(Complex x, Complex p, int terms);

}  // namespace kfsusy
