#pragma once

// The k-dimensional representation of the k-fermion algebra F_k and the
// truncated harmonic-oscillator boson.

#include "kfsusy/operators.hpp"
#include "kfsusy/qnum.hpp"
#include "kfsusy/report.hpp"

namespace kfsusy {

/// f_- and f_+^+ annihilate, f_+ and f_-^+ create, N counts. Matrix elements
/// use the shift s = 1/2, so f_-|n> = ([n]_q)^(1/2) |n-1> and so on.
struct FkOperators {
    static constexpr double s = 0.5;

    Deformation deformation;
    Operator f_minus;
    Operator f_plus;
    Operator f_plus_plus;   ///< f_+^+ = (f_+)^dagger
    Operator f_minus_plus;  ///< f_-^+ = (f_-)^dagger
    Operator number;

    int k() const { return deformation.k; }
    /// K = f_- f_+ - f_+ f_-, diagonal with entries q^n.
    Operator klein() const;
};

struct BosonOperators {
    int cutoff = 0;
    Operator b_minus;
    Operator b_plus;  ///< b_+|R-1> = 0 on the truncated space
    Operator number;
};

FkOperators build_fk(int k);
BosonOperators build_boson(int cutoff);

/// A (x) 1_k on the tensor basis.
Operator embed_boson(const Operator& boson_op, int k);
/// 1_R (x) B on the tensor basis.
Operator embed_fermion(const Operator& fermion_op, int boson_cutoff);

/// Every relation of the three F_k families, Hermitean conjugation and the
/// sharpness of the nilpotency index, as max-abs residuals.
CheckReport verify_fk_relations(int k, double tol = kDefaultTol);

}  // namespace kfsusy
