#include "kfsusy/operators.hpp"

#include <algorithm>
#include <cmath>

namespace kfsusy {

namespace {

void require_same_basis(const Basis& a, const Basis& b, const char* what) {
    if (!(a == b)) {
        throw BasisMismatch(std::string(what) + ": basis mismatch (" + a.describe() + " vs " +
                            b.describe() + ")");
    }
}

}  // namespace

Basis Basis::fermion(int k) {
    if (k < 1) throw std::invalid_argument("fermion basis needs k >= 1");
    return Basis(Kind::fermion, 1, k);
}

Basis Basis::boson(int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("boson basis needs cutoff >= 1");
    return Basis(Kind::boson, cutoff, 1);
}

Basis Basis::tensor(int boson_cutoff, int k) {
    if (boson_cutoff < 1 || k < 1) throw std::invalid_argument("tensor basis needs positive dimensions");
    return Basis(Kind::tensor, boson_cutoff, k);
}

Basis Basis::plain(int dim) {
    if (dim < 1) throw std::invalid_argument("plain basis needs dim >= 1");
    return Basis(Kind::plain, 1, dim);
}

BasisLabel Basis::label(int index) const {
    if (index < 0 || index >= size()) throw std::out_of_range("basis index out of range");
    return {index / fermion_dim_, index % fermion_dim_};
}

int Basis::index(BasisLabel label) const {
    if (label.r < 0 || label.r >= boson_dim_ || label.n < 0 || label.n >= fermion_dim_) {
        throw std::out_of_range("basis label out of range");
    }
    return label.r * fermion_dim_ + label.n;
}

std::string Basis::describe() const {
    switch (kind_) {
        case Kind::fermion: return "fermion(" + std::to_string(fermion_dim_) + ")";
        case Kind::boson: return "boson(" + std::to_string(boson_dim_) + ")";
        case Kind::tensor:
            return "tensor(" + std::to_string(boson_dim_) + "x" + std::to_string(fermion_dim_) + ")";
        case Kind::plain: return "plain(" + std::to_string(fermion_dim_) + ")";
    }
    return "?";
}

Operator::Operator(Basis basis, Matrix matrix) : basis_(basis), matrix_(std::move(matrix)) {
    if (matrix_.rows() != basis_.size() || matrix_.cols() != basis_.size()) {
        throw BasisMismatch("operator matrix is " + std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()) + " but basis " + basis_.describe() +
                            " has size " + std::to_string(basis_.size()));
    }
}

Operator Operator::identity(const Basis& basis) {
    return Operator(basis, Matrix::Identity(basis.size(), basis.size()));
}

Operator Operator::zero(const Basis& basis) {
    return Operator(basis, Matrix::Zero(basis.size(), basis.size()));
}

Complex Operator::element(BasisLabel row, BasisLabel col) const {
    return matrix_(basis_.index(row), basis_.index(col));
}

Operator& Operator::operator+=(const Operator& other) {
    require_same_basis(basis_, other.basis_, "add");
    matrix_ += other.matrix_;
    return *this;
}

Operator& Operator::operator-=(const Operator& other) {
    require_same_basis(basis_, other.basis_, "subtract");
    matrix_ -= other.matrix_;
    return *this;
}

Operator& Operator::operator*=(Complex c) {
    matrix_ *= c;
    return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
    require_same_basis(a.basis_, b.basis_, "compose");
    return Operator(a.basis_, a.matrix_ * b.matrix_);
}

StateVector StateVector::basis_state(const Basis& basis, BasisLabel label) {
    Vector v = Vector::Zero(basis.size());
    v(basis.index(label)) = 1.0;
    return {basis, std::move(v)};
}

StateVector operator*(const Operator& a, const StateVector& v) {
    require_same_basis(a.basis(), v.basis, "apply");
    return {v.basis, a.matrix() * v.coeffs};
}

Operator compose(const Operator& a, const Operator& b) { return a * b; }

Operator power(const Operator& a, int exponent) {
    if (exponent < 0) throw std::invalid_argument("power: negative exponent");
    Operator result = Operator::identity(a.basis());
    for (int i = 0; i < exponent; ++i) result = result * a;
    return result;
}

Operator adjoint(const Operator& a) { return Operator(a.basis(), a.matrix().adjoint()); }

Operator q_commutator(const Operator& a, const Operator& b, Complex c) {
    require_same_basis(a.basis(), b.basis(), "q_commutator");
    return Operator(a.basis(), a.matrix() * b.matrix() - c * (b.matrix() * a.matrix()));
}

Operator tensor(const Operator& boson_op, const Operator& fermion_op) {
    const Basis& bb = boson_op.basis();
    const Basis& fb = fermion_op.basis();
    if (bb.kind() != Basis::Kind::boson || fb.kind() != Basis::Kind::fermion) {
        throw BasisMismatch("tensor: expected (boson, fermion) operands, got (" + bb.describe() + ", " +
                            fb.describe() + ")");
    }
    const int R = bb.boson_dim();
    const int k = fb.fermion_dim();
    Matrix m(R * k, R * k);
    for (int r = 0; r < R; ++r) {
        for (int rp = 0; rp < R; ++rp) {
            m.block(r * k, rp * k, k, k) = boson_op(r, rp) * fermion_op.matrix();
        }
    }
    return Operator(Basis::tensor(R, k), std::move(m));
}

Operator restrict_safe(const Operator& a, int boson_margin) {
    const Basis& b = a.basis();
    if (b.kind() != Basis::Kind::tensor && b.kind() != Basis::Kind::boson) {
        throw BasisMismatch("restrict_safe: needs a tensor or boson basis, got " + b.describe());
    }
    if (boson_margin < 0 || boson_margin >= b.boson_dim()) {
        throw std::invalid_argument("restrict_safe: margin " + std::to_string(boson_margin) +
                                    " must lie in [0, " + std::to_string(b.boson_dim()) + ")");
    }
    const int keep_r = b.boson_dim() - boson_margin;
    const int keep = keep_r * b.fermion_dim();
    Basis smaller = b.kind() == Basis::Kind::tensor ? Basis::tensor(keep_r, b.fermion_dim())
                                                    : Basis::boson(keep_r);
    return Operator(smaller, a.matrix().topLeftCorner(keep, keep));
}

Operator leading_block(const Operator& a, int count) {
    if (a.basis().kind() != Basis::Kind::plain) {
        throw BasisMismatch("leading_block: needs a plain basis, got " + a.basis().describe());
    }
    if (count < 1 || count > a.dim()) throw std::invalid_argument("leading_block: bad count");
    return Operator(Basis::plain(count), a.matrix().topLeftCorner(count, count));
}

double max_abs(const Operator& a) {
    return a.dim() == 0 ? 0.0 : a.matrix().cwiseAbs().maxCoeff();
}

double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

bool is_diagonal(const Operator& a, double tol) {
    const Matrix& m = a.matrix();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i != j && std::abs(m(i, j)) > tol) return false;
        }
    }
    return true;
}

std::vector<Complex> diagonal(const Operator& a) {
    std::vector<Complex> d(static_cast<std::size_t>(a.dim()));
    for (int i = 0; i < a.dim(); ++i) d[static_cast<std::size_t>(i)] = a(i, i);
    return d;
}

}  // namespace kfsusy
