#pragma once

// Dense complex operators on small labelled bases. Fermion bases carry the
// k-fermion number n, boson bases the truncated occupation r, and tensor
// bases the pair (r, n) enumerated r-major so that index = k r + n.

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kfsusy/qnum.hpp"

namespace kfsusy {

class BasisMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct BasisLabel {
    int r = 0;  ///< boson occupation (0 on a pure fermion basis)
    int n = 0;  ///< fermion number (0 on a pure boson basis)

    auto operator<=>(const BasisLabel&) const = default;
};

class Basis {
public:
    enum class Kind { fermion, boson, tensor, plain };

    static Basis fermion(int k);
    static Basis boson(int cutoff);
    static Basis tensor(int boson_cutoff, int k);
    /// Unstructured basis |0>, ..., |dim-1>, labels carry the index in n.
    static Basis plain(int dim);

    Kind kind() const { return kind_; }
    int boson_dim() const { return boson_dim_; }
    int fermion_dim() const { return fermion_dim_; }
    int size() const { return boson_dim_ * fermion_dim_; }

    BasisLabel label(int index) const;
    int index(BasisLabel label) const;

    std::string describe() const;

    bool operator==(const Basis&) const = default;

private:
    Basis(Kind kind, int boson_dim, int fermion_dim)
        : kind_(kind), boson_dim_(boson_dim), fermion_dim_(fermion_dim) {}

    Kind kind_;
    int boson_dim_;
    int fermion_dim_;
};

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class Operator {
public:
    Operator(Basis basis, Matrix matrix);

    static Operator identity(const Basis& basis);
    static Operator zero(const Basis& basis);

    const Basis& basis() const { return basis_; }
    const Matrix& matrix() const { return matrix_; }
    int dim() const { return basis_.size(); }

    Complex operator()(int row, int col) const { return matrix_(row, col); }
    Complex element(BasisLabel row, BasisLabel col) const;

    Operator& operator+=(const Operator& other);
    Operator& operator-=(const Operator& other);
    Operator& operator*=(Complex c);

    friend Operator operator+(Operator a, const Operator& b) { return a += b; }
    friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
    friend Operator operator-(Operator a) { return a *= -1.0; }
    friend Operator operator*(Complex c, Operator a) { return a *= c; }
    friend Operator operator*(Operator a, Complex c) { return a *= c; }
    friend Operator operator*(const Operator& a, const Operator& b);

private:
    Basis basis_;
    Matrix matrix_;
};

struct StateVector {
    Basis basis;
    Vector coeffs;

    static StateVector basis_state(const Basis& basis, BasisLabel label);
};

StateVector operator*(const Operator& a, const StateVector& v);

Operator compose(const Operator& a, const Operator& b);
Operator power(const Operator& a, int exponent);
Operator adjoint(const Operator& a);

/// a b - c b a
Operator q_commutator(const Operator& a, const Operator& b, Complex c);
inline Operator commutator(const Operator& a, const Operator& b) { return q_commutator(a, b, 1.0); }

/// Kronecker product of a boson-basis operator with a fermion-basis operator.
Operator tensor(const Operator& boson_op, const Operator& fermion_op);

/// Compress a tensor- or boson-basis operator onto boson occupations r < R - margin.
Operator restrict_safe(const Operator& a, int boson_margin);

/// Compress a plain-basis operator onto its first `count` basis states.
Operator leading_block(const Operator& a, int count);

double max_abs(const Operator& a);
double max_abs(const Vector& v);
/// True when every off-diagonal entry has modulus <= tol.
bool is_diagonal(const Operator& a, double tol);
std::vector<Complex> diagonal(const Operator& a);

}  // namespace kfsusy
