#pragma once

// k-fermionic coherent states and their duals, overlaps, the resolution of
// the identity, coherence factors, and the fractional supercoherent states
// |z, theta) = |z) (x) |theta) together with their displacement-operator and
// Vourdas-sector descriptions.
//
// Grassmann variables commute with every Fock-space operator: operators act
// on the basis label only, coefficients are carried along untouched.

#include <stdexcept>
#include <string>
#include <vector>

#include "kfsusy/grassmann.hpp"
#include "kfsusy/operators.hpp"
#include "kfsusy/report.hpp"

namespace kfsusy {

class TailTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A Fock vector (or dual vector) with Grassmann-valued coefficients.
struct GrassmannState {
    Basis basis;
    AlgebraPtr algebra;
    std::vector<GrassmannElement> coeffs;

    static GrassmannState zero(const Basis& basis, AlgebraPtr algebra);
    const GrassmannElement& at(BasisLabel label) const { return coeffs.at(std::size_t(basis.index(label))); }
};

/// A |psi) for ket states.
GrassmannState apply(const Operator& a, const GrassmannState& ket);
/// (psi| A for dual states.
GrassmannState apply(const GrassmannState& bra, const Operator& a);
/// g |psi): left-multiplies every coefficient by g.
GrassmannState left_multiply(const GrassmannElement& g, const GrassmannState& state);
GrassmannState operator+(const GrassmannState& a, const GrassmannState& b);
GrassmannState operator*(Complex c, GrassmannState a);

/// sum_n bra_n ket_n, bra coefficient on the left.
GrassmannElement overlap(const GrassmannState& bra, const GrassmannState& ket);
/// (bra| A |ket)
GrassmannElement sandwich(const GrassmannState& bra, const Operator& a, const GrassmannState& ket);

double max_abs_diff(const GrassmannState& a, const GrassmannState& b);

/// sum_n var^n / ([n]_p!)^(1/2) |n> on the fermion basis.
GrassmannState coherent_series(const AlgebraPtr& algebra, int var, Complex p);

/// |theta) built from the unbarred generator `var` (q-factorials).
GrassmannState ket_theta(const AlgebraPtr& algebra, int var);
/// |thetabar) built from the barred generator `var` (qbar-factorials).
GrassmannState ket_thetabar(const AlgebraPtr& algebra, int var);
/// (theta| = sum <n| thetabar^n / ([n]_qbar!)^(1/2), `var` barred.
GrassmannState bra_theta(const AlgebraPtr& algebra, int var);
/// (thetabar| = sum <n| theta^n / ([n]_q!)^(1/2), `var` unbarred.
GrassmannState bra_thetabar(const AlgebraPtr& algebra, int var);

/// f_- |theta) = theta |theta), f_+^+ |thetabar) = thetabar |thetabar) and
/// the dual (theta| f_-^+ = thetabar (theta|.
CheckReport check_eigenstate(int k, double tol = kDefaultTol);

/// Overlap formulas of the coherent states in terms of e_q and e_qbar.
CheckReport check_overlaps(int k, double tol = 1e-12);

/// mu(theta, thetabar) = sum_n ([n]_q! [n]_qbar!)^(1/2) theta^(k-1-n) thetabar^(k-1-n)
GrassmannElement measure(const AlgebraPtr& algebra, int first, int second);

/// Entrywise resolution of the identity by double integration, both orders.
CheckReport overcompleteness_check(int k, double tol = kDefaultTol);

struct CoherenceFactor {
    double value = 0.0;            ///< |g^(m)|
    bool numerator_vanishes = false;
    bool proportional = true;      ///< lowest-degree monomials of numerator and denominator agree
    std::string diagnostics;
};

/// |g^(m)| from the lowest-degree coefficients of
/// (theta|(f_-^+)^m (f_-)^m|theta) and (theta|f_-^+ f_-|theta)^m.
CoherenceFactor coherence_factor(int k, int m);

/// |g^(m)| = 1 for 1 <= m <= k-1, exactly 0 for m = k, k+1.
CheckReport check_coherence_factors(int k, double tol = kDefaultTol);

/// |z|^R / sqrt(R!), evaluated in log space.
double boson_tail(Complex z, int cutoff);

/// sum_{r<R} z^r/sqrt(r!) |r> (x) sum_{s<k} theta^s/([s]_q!)^(1/2) |s>.
/// Throws TailTooLarge unless |z|^R / sqrt(R!) < 1e-12.
GrassmannState fractional_supercoherent(Complex z, int k, int cutoff);

/// exp(z b_+) e_q(theta f_+) |0> (x) |0>.
GrassmannState displacement_apply(Complex z, int k, int cutoff);

/// sum_{r<R} z^(k r)/sqrt(r!) |k r + s> on the plain basis of size R k.
StateVector vourdas_state(Complex z, int k, int s, int cutoff);

/// |z^k, theta) against sum_s theta^s/([s]_q!)^(1/2) |z, k, s) under |k r + s> <-> |r> (x) |s>.
CheckReport vourdas_decomposition_check(Complex z, int k, int cutoff, double tol = 1e-12);

/// Displacement identity, b_- f_- eigenvalue equation, Vourdas decomposition
/// and, for k = 2, the explicit two-component expansion.
CheckReport check_supercoherent(Complex z, int k, int cutoff, double tol = kDefaultTol);

/// Every coherent-state check for one k.
CheckReport coherent_suite(int k, Complex z, int cutoff, double tol = kDefaultTol);

}  // namespace kfsusy
