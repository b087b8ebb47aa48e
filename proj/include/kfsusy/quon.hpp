#pragma once

// Arik-Coon Q-deformed oscillator a_- a_+ - Q a_+ a_- = 1 on a truncated
// Fock space, and the numerical study of Q -> q = exp(2 pi i / k) in which
// (a_+-)^k / ([k]_Q!)^(1/2) become ordinary bosons commuting with the
// k-fermions.

#include <vector>

#include "kfsusy/operators.hpp"
#include "kfsusy/qnum.hpp"
#include "kfsusy/report.hpp"

namespace kfsusy {

struct QuonOperators {
    Complex Q;
    Operator a_minus;
    Operator a_plus;
    /// max |a_- a_+ - Q a_+ a_- - 1| below the top level
    double relation_residual = 0.0;
};

/// a_-|n> = ([n]_Q)^(1/2)|n-1>, a_+|n> = ([n+1]_Q)^(1/2)|n+1>, a_+|dim-1> = 0.
QuonOperators build_quon(Complex Q, int dim);

/// sum_{n<dim} Z^n / ([n]_Q!)^(1/2) |n>. Throws TailTooLarge (see coherent.hpp)
/// unless the first omitted coefficient is below 1e-12 in modulus.
StateVector quon_coherent(Complex Z, Complex Q, int dim);

/// Q(eps) = exp(2 pi i (1 - eps) / k): approach to q along the unit circle.
Complex quon_path(int k, double eps);

/// b_- and b_+ = (a_-+)^k / ([k]_Q!)^(1/2) on the R k dimensional space.
struct LimitBosons {
    Operator b_minus;
    Operator b_plus;
};
LimitBosons limit_bosons(int k, double eps, int boson_cutoff);

struct LimitRow {
    double eps = 0.0;
    double boson_deviation = 0.0;    ///< |[b_-, b_+] - 1| on r < R - 2
    double mixed_deviation = 0.0;    ///< max |[b_+-, f_+-]| on r < R - 2
    double fermion_deviation = 0.0;  ///< |f_-(Q) f_+(Q) - q f_+(Q) f_-(Q) - 1| on the k-block
    double cauchy = -1.0;            ///< max |b(eps_prev) - b(eps)|, -1 on the first row
};

struct LimitReport {
    int k = 0;
    int boson_cutoff = 0;
    std::vector<LimitRow> rows;  ///< eps strictly descending
    CheckReport checks;
};

inline constexpr int kDefaultLimitCutoff = 6;

/// Builds the deviation table over the eps ladder (sorted descending,
/// duplicates removed) and checks each deviation column and the successive
/// differences of b_+- for strict decrease, plus the smallest-eps bosonic
/// deviation against boson_tol.
LimitReport limit_study(int k, std::vector<double> epsilons, int boson_cutoff = kDefaultLimitCutoff,
                        double boson_tol = 1e-2);

}  // namespace kfsusy
