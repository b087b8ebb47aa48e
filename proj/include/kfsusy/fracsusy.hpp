#pragma once

// Z_k-graded supersymmetric oscillator built from one boson and one
// k-fermion: the extended Weyl-Heisenberg generators X_+-, K, M, the Z_k
// projectors, the supercharges Q_+- and the Hamiltonian H fixed by
//   sum_j (Q_-)^(k-1-j) Q_+ (Q_-)^j = (Q_-)^(k-2) H.

#include <vector>

#include "kfsusy/coherent.hpp"
#include "kfsusy/kfermion.hpp"
#include "kfsusy/operators.hpp"
#include "kfsusy/report.hpp"

namespace kfsusy {

inline constexpr int kDefaultBosonCutoff = 24;

struct FracSusyOperators {
    int k = 0;
    int boson_cutoff = 0;
    Deformation deformation;
    FkOperators fermions;
    BosonOperators bosons;
    Operator F;  ///< f_- + (f_+)^(k-1) / [k-1]_q!, fermion basis; F^k = 1
    Operator X_minus;
    Operator X_plus;
    Operator K;
    Operator M;  ///< X_+ X_-
    std::vector<Operator> Pi;
    Operator Q_minus;
    Operator Q_plus;
    Operator H;

    /// Identity-check margin: every X_+- shifts the boson number by one.
    int safe_margin() const { return k + 1; }
};

/// Requires k >= 2 and boson_cutoff >= k + 3.
FracSusyOperators build_all(int k, int boson_cutoff = kDefaultBosonCutoff);

/// The Hamiltonian assembled term by term from X_+-, and the projectors.
Operator hamiltonian(const FracSusyOperators& ops);

/// [X_-,X_+] = 1, K X_+ = q X_+ K, K X_- = qbar X_- K, K^k = 1 and the M
/// relations, on the safe subspace, plus F^k = 1 and the projector algebra.
CheckReport verify_weyl_heisenberg(int k, int boson_cutoff = kDefaultBosonCutoff, double tol = kDefaultTol);
CheckReport verify_weyl_heisenberg(const FracSusyOperators& ops, double tol = kDefaultTol);

/// (Q_+-)^k = 0, (Q_+-)^(k-1) != 0, the defining relation of H and
/// [H, Q_+-] = 0 on the safe subspace; for k = 2 and k = 3 also the explicit
/// boson/fermion forms of Q_+- and H.
CheckReport verify_susy(int k, int boson_cutoff = kDefaultBosonCutoff, double tol = kDefaultTol);
CheckReport verify_susy(const FracSusyOperators& ops, double tol = kDefaultTol);

class DiagonalityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Energy-grouping tolerance for degeneracy counting.
inline constexpr double kEnergyGroupTol = 1e-8;

/// Reads the spectrum off the diagonal of H (throws DiagonalityError if H is
/// not diagonal to 1e-10). Labels with r >= R - k are dropped, and so are
/// levels above the lowest energy reached by the top retained boson shell,
/// which may be missing partners; equal energies are grouped within 1e-8.
SpectrumReport spectrum(const FracSusyOperators& ops);
SpectrumReport spectrum(int k, int boson_cutoff = kDefaultBosonCutoff);

/// exp(-i H t) |z, theta) against e^(-i E_0 t) |z e^(-i w t), theta e^(-i s t)),
/// with E_0, w, s read off the three lowest-lying labels. Zero for k = 2;
/// for k >= 3 the level pattern is not of this form.
double evolution_coherence_residual(int k, Complex z, double t, int boson_cutoff = kDefaultBosonCutoff);

/// Weyl-Heisenberg and supersymmetry checks together.
CheckReport susy_suite(int k, int boson_cutoff = kDefaultBosonCutoff, double tol = kDefaultTol);

}  // namespace kfsusy
