#include "kfsusy/kfermion.hpp"

#include <cmath>
#include <string>

namespace kfsusy {

namespace {

// Weighted shift: |n> -> weight(n) |n + step>, dropped when it leaves the basis.
template <class Weight>
Operator shift(const Basis& basis, int step, Weight weight) {
    const int d = basis.size();
    Matrix m = Matrix::Zero(d, d);
    for (int n = 0; n < d; ++n) {
        const int target = n + step;
        if (target >= 0 && target < d) m(target, n) = weight(n);
    }
    return Operator(basis, std::move(m));
}

}  // namespace

Operator FkOperators::klein() const {
    return q_commutator(f_minus, f_plus, 1.0);
}

FkOperators build_fk(int k) {
    if (k < 2) throw std::invalid_argument("build_fk: k must be >= 2, got " + std::to_string(k));
    const Deformation def(k);
    const Basis basis = Basis::fermion(k);
    constexpr double s = FkOperators::s;

    auto lowering = [&](Complex p) {
        return shift(basis, -1, [&](int n) { return principal_sqrt(qnumber(n + s - 0.5, p)); });
    };
    auto raising = [&](Complex p) {
        return shift(basis, +1, [&](int n) { return principal_sqrt(qnumber(n + s + 0.5, p)); });
    };

    Matrix number = Matrix::Zero(k, k);
    for (int n = 0; n < k; ++n) number(n, n) = static_cast<double>(n);

    return FkOperators{def,
                       lowering(def.q),
                       raising(def.q),
                       lowering(def.qbar),
                       raising(def.qbar),
                       Operator(basis, std::move(number))};
}

BosonOperators build_boson(int cutoff) {
    if (cutoff < 2) {
        throw std::invalid_argument("build_boson: cutoff must be >= 2, got " + std::to_string(cutoff));
    }
    const Basis basis = Basis::boson(cutoff);
    Operator lower = shift(basis, -1, [](int r) { return Complex(std::sqrt(double(r))); });
    Operator raise = shift(basis, +1, [](int r) { return Complex(std::sqrt(double(r + 1))); });
    Operator number = raise * lower;
    return BosonOperators{cutoff, std::move(lower), std::move(raise), std::move(number)};
}

Operator embed_boson(const Operator& boson_op, int k) {
    return tensor(boson_op, Operator::identity(Basis::fermion(k)));
}

Operator embed_fermion(const Operator& fermion_op, int boson_cutoff) {
    return tensor(Operator::identity(Basis::boson(boson_cutoff)), fermion_op);
}

CheckReport verify_fk_relations(int k, double tol) {
    const FkOperators f = build_fk(k);
    const Deformation& d = f.deformation;
    const Operator one = Operator::identity(Basis::fermion(k));
    CheckReport rep("algebra", k);

    // (i)
    rep.add_residual("f- f+ - q f+ f- = 1", max_abs(q_commutator(f.f_minus, f.f_plus, d.q) - one), tol);
    rep.add_residual("[N, f-] = -f-", max_abs(commutator(f.number, f.f_minus) + f.f_minus), tol);
    rep.add_residual("[N, f+] = +f+", max_abs(commutator(f.number, f.f_plus) - f.f_plus), tol);
    rep.add_residual("(f-)^k = 0", max_abs(power(f.f_minus, k)), tol);
    rep.add_residual("(f+)^k = 0", max_abs(power(f.f_plus, k)), tol);

    // (ii)
    rep.add_residual("f+^+ f-^+ - qbar f-^+ f+^+ = 1",
                     max_abs(q_commutator(f.f_plus_plus, f.f_minus_plus, d.qbar) - one), tol);
    rep.add_residual("[N, f+^+] = -f+^+", max_abs(commutator(f.number, f.f_plus_plus) + f.f_plus_plus), tol);
    rep.add_residual("[N, f-^+] = +f-^+", max_abs(commutator(f.number, f.f_minus_plus) - f.f_minus_plus), tol);
    rep.add_residual("(f+^+)^k = 0", max_abs(power(f.f_plus_plus, k)), tol);
    rep.add_residual("(f-^+)^k = 0", max_abs(power(f.f_minus_plus, k)), tol);

    // (iii)
    rep.add_residual("f- f+^+ - q^(-1/2) f+^+ f- = 0",
                     max_abs(q_commutator(f.f_minus, f.f_plus_plus, d.half_power(-1))), tol);
    rep.add_residual("f+ f-^+ - q^(1/2) f-^+ f+ = 0",
                     max_abs(q_commutator(f.f_plus, f.f_minus_plus, d.half_power(1))), tol);

    rep.add_residual("f+^+ = (f+)^dagger", max_abs(f.f_plus_plus - adjoint(f.f_plus)), tol);
    rep.add_residual("f-^+ = (f-)^dagger", max_abs(f.f_minus_plus - adjoint(f.f_minus)), tol);
    rep.add_residual("N = N^dagger", max_abs(f.number - adjoint(f.number)), tol);

    rep.add_lower_bound("|(f-)^(k-1)| nonzero", max_abs(power(f.f_minus, k - 1)), 0.1);
    rep.add_lower_bound("|(f+)^(k-1)| nonzero", max_abs(power(f.f_plus, k - 1)), 0.1);
    rep.add_lower_bound("|(f+^+)^(k-1)| nonzero", max_abs(power(f.f_plus_plus, k - 1)), 0.1);
    rep.add_lower_bound("|(f-^+)^(k-1)| nonzero", max_abs(power(f.f_minus_plus, k - 1)), 0.1);

    Matrix expected_klein = Matrix::Zero(k, k);
    for (int n = 0; n < k; ++n) expected_klein(n, n) = d.power(n);
    rep.add_residual("K |n> = q^n |n>", (f.klein().matrix() - expected_klein).cwiseAbs().maxCoeff(), tol);
    return rep;
}

}  // namespace kfsusy
