#pragma once

// Generalized (braided) Grassmann algebra: generators g_1 < ... < g_G with
// g^k = 0 and g_j g_i = beta_ij g_i g_j for i < j. Elements are stored as
// coefficient tables over normal-ordered monomials.
//
// All braiding factors are integer powers of q^(1/2) = exp(i pi / k), so
// phases are tracked as exponents modulo 2k and never accumulate roundoff.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "kfsusy/operators.hpp"
#include "kfsusy/qnum.hpp"
#include "kfsusy/report.hpp"

namespace kfsusy {

inline constexpr int kMaxGenerators = 4;

class AlgebraMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Generator {
    std::string name;
    bool barred = false;
    int prime = 0;  ///< 0 for theta, 1 for theta'

    bool operator==(const Generator&) const = default;
};

using Monomial = std::array<std::uint8_t, kMaxGenerators>;

class GrassmannAlgebra {
public:
    /// Generators in the given order; braid_half[i][j] (i < j) is the exponent
    /// m with beta_ij = q^(m/2). Entries with i >= j are ignored.
    GrassmannAlgebra(int k, std::vector<Generator> generators, std::vector<std::vector<int>> braid_half);

    /// Canonical algebra: unbarred before barred, unprimed before primed, and
    /// g_unbarred g_barred = q^(1/2) g_barred g_unbarred for every such pair.
    static std::shared_ptr<const GrassmannAlgebra> standard(int k, std::vector<Generator> generators);
    /// {theta, thetabar}
    static std::shared_ptr<const GrassmannAlgebra> two_variable(int k);
    /// {theta, theta', thetabar, thetabar'}
    static std::shared_ptr<const GrassmannAlgebra> four_variable(int k);
    /// {theta}
    static std::shared_ptr<const GrassmannAlgebra> one_variable(int k);

    int k() const { return deformation_.k; }
    const Deformation& deformation() const { return deformation_; }
    int size() const { return static_cast<int>(generators_.size()); }
    const Generator& generator(int i) const { return generators_.at(static_cast<std::size_t>(i)); }
    /// Index of the generator with this name; throws std::out_of_range.
    int find(const std::string& name) const;

    /// exponent m of beta_ij = q^(m/2), for i < j
    int braid_exponent(int i, int j) const;
    Complex braid(int i, int j) const { return half_phase(braid_exponent(i, j)); }
    /// q^(m/2), exact table lookup
    Complex half_phase(int m) const;

    std::string monomial_string(const Monomial& m) const;

    bool operator==(const GrassmannAlgebra& other) const;

private:
    Deformation deformation_;
    std::vector<Generator> generators_;
    std::vector<std::vector<int>> braid_half_;
    std::vector<Complex> phase_table_;
};

using AlgebraPtr = std::shared_ptr<const GrassmannAlgebra>;

class GrassmannElement {
public:
    explicit GrassmannElement(AlgebraPtr algebra);

    static GrassmannElement scalar(AlgebraPtr algebra, Complex c);
    static GrassmannElement one(AlgebraPtr algebra) { return scalar(std::move(algebra), 1.0); }
    static GrassmannElement generator(AlgebraPtr algebra, int index, int exponent = 1);
    static GrassmannElement monomial(AlgebraPtr algebra, const Monomial& m, Complex c = 1.0);

    const AlgebraPtr& algebra() const { return algebra_; }
    const std::map<Monomial, Complex>& terms() const { return terms_; }
    Complex coefficient(const Monomial& m) const;
    /// Scalar part (coefficient of the empty monomial).
    Complex constant() const { return coefficient(Monomial{}); }

    /// Drop coefficients with modulus below eps.
    GrassmannElement& prune(double eps = 1e-15);
    double max_abs_coeff() const;
    bool is_zero(double tol = 0.0) const { return max_abs_coeff() <= tol; }
    /// Smallest total degree among nonzero terms, or -1 for the zero element.
    int lowest_degree(double eps = 0.0) const;

    GrassmannElement& operator+=(const GrassmannElement& other);
    GrassmannElement& operator-=(const GrassmannElement& other);
    GrassmannElement& operator*=(Complex c);

    friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
    friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
    friend GrassmannElement operator*(Complex c, GrassmannElement a) { return a *= c; }
    friend GrassmannElement operator*(GrassmannElement a, Complex c) { return a *= c; }
    /// Braided product, see multiply().
    friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);

private:
    void require_same(const GrassmannElement& other, const char* what) const;

    AlgebraPtr algebra_;
    std::map<Monomial, Complex> terms_;
};

/// Product x y, normal-ordered. Each factor g_i of y moving left past a
/// factor g_j of x (i < j) contributes beta_ij; exponents reaching k vanish.
GrassmannElement multiply(const GrassmannElement& x, const GrassmannElement& y);
GrassmannElement power(const GrassmannElement& x, int n);

/// q-derivative with respect to generator `var` (q for unbarred, qbar for
/// barred): g^a w -> [a]_p g^(a-1) w, picking up beta_jv^(c_j) for every
/// generator g_j^(c_j) ordered before var. For {theta, thetabar} this gives
/// d/dtheta theta^a thetabar^b = [a]_q theta^(a-1) thetabar^b and
/// d/dthetabar theta^a thetabar^b = q^(-a/2) [b]_qbar theta^a thetabar^(b-1).
GrassmannElement qderiv(const GrassmannElement& x, int var);
/// Same as qderiv, but insists that var is a barred generator.
GrassmannElement qderiv_bar(const GrassmannElement& x, int var);

/// Left integration  int d(var) x : rewrite each monomial with var^(k-1)
/// moved to the far left and take its coefficient; lower powers integrate
/// to zero.
GrassmannElement integrate(const GrassmannElement& x, int var);
/// Right integration  x d(var) : var^(k-1) moved to the far right.
GrassmannElement integrate_right(const GrassmannElement& x, int var);
/// int int d(left_var) x d(right_var)
GrassmannElement double_integral(const GrassmannElement& x, int left_var, int right_var);

/// sum_{n < terms} x^n / [n]_p!, with braided powers. Terms whose power
/// vanishes identically are skipped.
GrassmannElement qexp(const GrassmannElement& x, Complex p, int terms);

/// max over monomials of |coefficient(x) - coefficient(y)|
double max_abs_diff(const GrassmannElement& x, const GrassmannElement& y);

/// Matrix of left multiplication by generator `var` on the full algebra,
/// basis enumerated with the last generator fastest (plain basis of size k^G).
Operator left_multiplication_matrix(const AlgebraPtr& algebra, int var);
/// Matrix of qderiv(., var) on the full algebra, same enumeration.
Operator derivative_matrix(const AlgebraPtr& algebra, int var);

/// The realization f_+ = theta, f_- = d_theta, f_-^+ = thetabar,
/// f_+^+ = d_thetabar on the k^2-dimensional algebra: the two deformed
/// commutators, four nilpotency statements and the two mixed relations,
/// plus the defining integration values.
CheckReport verify_realization(int k, double tol = kDefaultTol);

}  // namespace kfsusy
