#include "kfsusy/qnum.hpp"

#include <cmath>
#include <string>

namespace kfsusy {

Deformation::Deformation(int order) : k(order) {
    if (order < 2) {
        throw std::invalid_argument("deformation order k must be >= 2, got " + std::to_string(order));
    }
    q = std::polar(1.0, 2.0 * kPi / k);
    qbar = std::conj(q);
}

Complex Deformation::half_power(int m) const {
    return std::polar(1.0, kPi * m / k);
}

Complex Deformation::power(int m) const {
    int r = m % k;
    if (r < 0) r += k;
    return std::polar(1.0, 2.0 * kPi * r / k);
}

Complex qnumber(double x, Complex p) {
    const Complex denom = 1.0 - p;
    if (std::abs(denom) <= 1e-12) {
        throw BaseTooCloseToOne("qnumber: base too close to 1");
    }
    if (x == 0.0) return 0.0;
    return (1.0 - std::pow(p, x)) / denom;
}

Complex qfactorial(int n, Complex p) {
    if (n < 0) throw std::invalid_argument("qfactorial: n must be >= 0");
    Complex acc = 1.0;
    for (int j = 1; j <= n; ++j) acc *= qnumber(j, p);
    return acc;
}

Complex principal_sqrt(Complex z) {
    if (z.imag() == 0.0 && z.real() < 0.0) return {0.0, std::sqrt(-z.real())};
    return std::sqrt(z);
}

Complex root_qfactorial(int n, Complex p) {
    if (n < 0) throw std::invalid_argument("root_qfactorial: n must be >= 0");
    Complex acc = 1.0;
    for (int j = 1; j <= n; ++j) acc *= principal_sqrt(qnumber(j, p));
    return acc;
}

Complex qexp(Complex x, Complex p, int terms) {
    if (terms < 1) throw std::invalid_argument("qexp: terms must be >= 1");
    Complex sum = 0.0;
    Complex xn = 1.0;
    for (int n = 0; n < terms; ++n) {
        sum += xn / qfactorial(n, p);
        xn *= x;
    }
    return sum;
}

}  // namespace kfsusy
