#include "kfsusy/fracsusy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace kfsusy {

namespace {

Operator cyclic_F(const FkOperators& f) {
    const int k = f.k();
    return f.f_minus + (1.0 / qfactorial(k - 1, f.deformation.q)) * power(f.f_plus, k - 1);
}

}  // namespace

FracSusyOperators build_all(int k, int boson_cutoff) {
    if (k < 2) throw std::invalid_argument("build_all: k must be >= 2, got " + std::to_string(k));
    if (boson_cutoff < k + 3) {
        throw std::invalid_argument("build_all: boson cutoff must be >= k + 3 = " + std::to_string(k + 3) +
                                    ", got " + std::to_string(boson_cutoff));
    }
    FkOperators fermions = build_fk(k);
    BosonOperators bosons = build_boson(boson_cutoff);
    const Deformation d = fermions.deformation;
    const Basis basis = Basis::tensor(boson_cutoff, k);
    const Operator one = Operator::identity(basis);

    Operator F = cyclic_F(fermions);
    Operator X_minus = tensor(bosons.b_minus, F);
    Operator X_plus = tensor(bosons.b_plus, power(F, k - 1));
    Operator K = embed_fermion(fermions.klein(), boson_cutoff);
    Operator M = X_plus * X_minus;

    std::vector<Operator> K_pow;
    K_pow.push_back(one);
    for (int s = 1; s < k; ++s) K_pow.push_back(K_pow.back() * K);
    std::vector<Operator> Pi;
    for (int i = 0; i < k; ++i) {
        Operator acc = Operator::zero(basis);
        for (int s = 0; s < k; ++s) acc += d.power(s * i) * K_pow[std::size_t(s)];
        Pi.push_back((1.0 / k) * acc);
    }
    Operator Q_minus = X_minus * (one - Pi[std::size_t(k - 1)]);
    Operator Q_plus = X_plus * (one - Pi[0]);

    FracSusyOperators ops{k,          boson_cutoff,       d,       std::move(fermions), std::move(bosons),
                          std::move(F), std::move(X_minus), std::move(X_plus), std::move(K), std::move(M),
                          std::move(Pi), std::move(Q_minus), std::move(Q_plus), Operator::zero(basis)};
    ops.H = hamiltonian(ops);
    return ops;
}

Operator hamiltonian(const FracSusyOperators& ops) {
    const int k = ops.k;
    const Basis& basis = ops.X_minus.basis();
    const Operator one = Operator::identity(basis);
    const Operator XmXp = ops.X_minus * ops.X_plus;
    const Operator XpXm = ops.X_plus * ops.X_minus;
    const auto& Pi = ops.Pi;

    Operator H = XmXp * Pi[1];
    for (int l = 2; l <= k - 1; ++l) {
        Operator lower_sum = Operator::zero(basis);
        for (int i = 0; i <= k - l - 1; ++i) lower_sum += Pi[std::size_t(i)];
        H += (XpXm - double(l - 1) * one) * lower_sum;
    }
    for (int l = 2; l <= k - 1; ++l) {
        H += double(l) * ((XmXp + (l - 1) / 2.0 * one) * Pi[std::size_t(l)]);
    }
    H += XpXm * (one - Pi[std::size_t(k - 1)]);
    return H;
}

CheckReport verify_weyl_heisenberg(int k, int boson_cutoff, double tol) {
    return verify_weyl_heisenberg(build_all(k, boson_cutoff), tol);
}

CheckReport verify_weyl_heisenberg(const FracSusyOperators& ops, double tol) {
    const int k = ops.k;
    const int margin = ops.safe_margin();
    const Deformation& d = ops.deformation;
    const Basis& basis = ops.X_minus.basis();
    const Operator one = Operator::identity(basis);
    auto safe = [&](const Operator& a) { return max_abs(restrict_safe(a, margin)); };

    CheckReport rep("weyl_heisenberg", k);
    rep.add_residual("F^k = 1", max_abs(power(ops.F, k) - Operator::identity(ops.F.basis())), std::min(tol, 1e-12));
    rep.add_residual("X- X+ - X+ X- = 1", safe(commutator(ops.X_minus, ops.X_plus) - one), tol);
    rep.add_residual("K X+ - q X+ K = 0", safe(q_commutator(ops.K, ops.X_plus, d.q)), tol);
    rep.add_residual("K X- - qbar X- K = 0", safe(q_commutator(ops.K, ops.X_minus, d.qbar)), tol);
    rep.add_residual("K^k = 1", safe(power(ops.K, k) - one), tol);
    rep.add_residual("[M, X-] = -X-", safe(commutator(ops.M, ops.X_minus) + ops.X_minus), tol);
    rep.add_residual("[M, X+] = +X+", safe(commutator(ops.M, ops.X_plus) - ops.X_plus), tol);
    rep.add_residual("[M, K] = 0", safe(commutator(ops.M, ops.K)), tol);

    Operator pi_sum = Operator::zero(basis);
    double idempotent = 0.0;
    for (int i = 0; i < k; ++i) {
        pi_sum += ops.Pi[std::size_t(i)];
        for (int j = 0; j < k; ++j) {
            Operator expected = i == j ? ops.Pi[std::size_t(i)] : Operator::zero(basis);
            idempotent = std::max(idempotent, max_abs(ops.Pi[std::size_t(i)] * ops.Pi[std::size_t(j)] - expected));
        }
    }
    rep.add_residual("sum_i Pi_i = 1", max_abs(pi_sum - one), std::min(tol, 1e-12));
    rep.add_residual("Pi_i Pi_j = delta_ij Pi_i", idempotent, std::min(tol, 1e-12));
    return rep;
}

CheckReport verify_susy(int k, int boson_cutoff, double tol) {
    return verify_susy(build_all(k, boson_cutoff), tol);
}

CheckReport verify_susy(const FracSusyOperators& ops, double tol) {
    const int k = ops.k;
    const int margin = ops.safe_margin();
    const Basis& basis = ops.X_minus.basis();
    const Operator one = Operator::identity(basis);
    auto safe = [&](const Operator& a) { return max_abs(restrict_safe(a, margin)); };
    const Operator& Qm = ops.Q_minus;
    const Operator& Qp = ops.Q_plus;

    CheckReport rep("susy", k);
    rep.add_residual("(Q-)^k = 0", safe(power(Qm, k)), tol);
    rep.add_residual("(Q+)^k = 0", safe(power(Qp, k)), tol);
    rep.add_lower_bound("|(Q-)^(k-1)| nonzero", safe(power(Qm, k - 1)), 0.1);
    rep.add_lower_bound("|(Q+)^(k-1)| nonzero", safe(power(Qp, k - 1)), 0.1);

    std::vector<Operator> Qm_pow;
    Qm_pow.push_back(one);
    for (int j = 1; j < k; ++j) Qm_pow.push_back(Qm_pow.back() * Qm);
    Operator lhs = Operator::zero(basis);
    for (int j = 0; j <= k - 1; ++j) lhs += Qm_pow[std::size_t(k - 1 - j)] * Qp * Qm_pow[std::size_t(j)];
    rep.add_residual("sum_j (Q-)^(k-1-j) Q+ (Q-)^j = (Q-)^(k-2) H", safe(lhs - Qm_pow[std::size_t(k - 2)] * ops.H),
                     tol);
    rep.add_residual("[H, Q-] = 0", safe(commutator(ops.H, Qm)), tol);
    rep.add_residual("[H, Q+] = 0", safe(commutator(ops.H, Qp)), tol);

    if (k == 2) {
        const FkOperators& f = ops.fermions;
        const BosonOperators& b = ops.bosons;
        rep.add_residual("k=2: Q- = f+ b-", safe(Qm - tensor(b.b_minus, f.f_plus)), tol);
        rep.add_residual("k=2: Q+ = f- b+", safe(Qp - tensor(b.b_plus, f.f_minus)), tol);
        rep.add_residual("k=2: H = b+ b- + f+ f-",
                         safe(ops.H - embed_boson(b.number, 2) - embed_fermion(f.f_plus * f.f_minus, ops.boson_cutoff)),
                         tol);
        rep.add_residual("k=2: H = Q- Q+ + Q+ Q-", safe(ops.H - (Qm * Qp + Qp * Qm)), tol);
    }
    if (k == 3) {
        const Operator twoM = 2.0 * ops.M;
        const Operator h3 = (twoM - one) * ops.Pi[0] + (twoM + one) * ops.Pi[1] + (twoM + 3.0 * one) * ops.Pi[2];
        rep.add_residual("k=3: H = (2M-1)Pi0 + (2M+1)Pi1 + (2M+3)Pi2", safe(ops.H - h3), tol);
    }
    return rep;
}

SpectrumReport spectrum(int k, int boson_cutoff) { return spectrum(build_all(k, boson_cutoff)); }

SpectrumReport spectrum(const FracSusyOperators& ops) {
    const int k = ops.k;
    const int R = ops.boson_cutoff;
    if (!is_diagonal(ops.H, 1e-10)) {
        throw DiagonalityError("spectrum: H is not diagonal in the number basis (k=" + std::to_string(k) + ")");
    }
    const Basis& basis = ops.H.basis();
    const std::vector<Complex> diag = diagonal(ops.H);
    for (const Complex& e : diag) {
        if (std::abs(e.imag()) > 1e-8) throw DiagonalityError("spectrum: H has a non-real diagonal entry");
    }

    const int top_r = R - k - 1;
    double ceiling = std::numeric_limits<double>::infinity();
    for (int n = 0; n < k; ++n) ceiling = std::min(ceiling, diag[std::size_t(basis.index({top_r, n}))].real());

    std::vector<double> energies;
    int discarded = 0;
    for (int i = 0; i < basis.size(); ++i) {
        const BasisLabel label = basis.label(i);
        const double e = diag[std::size_t(i)].real();
        if (label.r > top_r || e > ceiling + kEnergyGroupTol) {
            ++discarded;
            continue;
        }
        energies.push_back(e);
    }
    std::sort(energies.begin(), energies.end());

    SpectrumReport rep;
    rep.k = k;
    rep.boson_cutoff = R;
    rep.discarded = discarded;
    for (double e : energies) {
        if (!rep.levels.empty() && std::abs(e - rep.levels.back().energy) <= kEnergyGroupTol) {
            ++rep.levels.back().degeneracy;
        } else {
            rep.levels.push_back({e, 1});
        }
    }
    if (rep.levels.size() >= 2) {
        rep.spacing = rep.levels[1].energy - rep.levels[0].energy;
        rep.uniform_spacing = true;
        for (std::size_t i = 1; i < rep.levels.size(); ++i) {
            const double gap = rep.levels[i].energy - rep.levels[i - 1].energy;
            if (std::abs(gap - rep.spacing) > kEnergyGroupTol) rep.uniform_spacing = false;
        }
    }
    return rep;
}

double evolution_coherence_residual(int k, Complex z, double t, int boson_cutoff) {
    const FracSusyOperators ops = build_all(k, boson_cutoff);
    const GrassmannState state = fractional_supercoherent(z, k, boson_cutoff);
    const Basis& basis = state.basis;
    const std::vector<Complex> energy = diagonal(ops.H);
    auto E = [&](int r, int n) { return energy[std::size_t(basis.index({r, n}))].real(); };
    const double e0 = E(0, 0);
    const double boson_freq = E(1, 0) - e0;
    const double fermion_freq = E(0, 1) - e0;

    const GrassmannState target =
        std::polar(1.0, -e0 * t) * fractional_supercoherent(z * std::polar(1.0, -boson_freq * t), k, boson_cutoff);
    const Complex theta_phase = std::polar(1.0, -fermion_freq * t);

    double worst = 0.0;
    for (int r = 0; r < boson_cutoff - k; ++r) {
        for (int n = 0; n < k; ++n) {
            const GrassmannElement evolved = std::polar(1.0, -E(r, n) * t) * state.at({r, n});
            // theta -> theta e^{-i s t} scales the theta^n coefficient by e^{-i n s t}
            const GrassmannElement expected = std::pow(theta_phase, n) * target.at({r, n});
            worst = std::max(worst, max_abs_diff(evolved, expected));
        }
    }
    return worst;
}

CheckReport susy_suite(int k, int boson_cutoff, double tol) {
    const FracSusyOperators ops = build_all(k, boson_cutoff);
    CheckReport rep("susy", k);
    rep.merge(verify_weyl_heisenberg(ops, tol));
    rep.merge(verify_susy(ops, tol));
    return rep;
}

}  // namespace kfsusy
