#include "kfsusy/coherent.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "kfsusy/kfermion.hpp"

namespace kfsusy {

namespace {

void require_basis(const Basis& a, const Basis& b, const char* what) {
    if (!(a == b)) throw BasisMismatch(std::string(what) + ": basis mismatch");
}

double inv_sqrt_factorial(int r) { return std::exp(-0.5 * std::lgamma(r + 1.0)); }

void require_tail(Complex z, int cutoff) {
    const double tail = boson_tail(z, cutoff);
    if (!(tail < 1e-12)) {
        std::ostringstream os;
        os << "boson cutoff " << cutoff << " too small for |z| = " << std::abs(z) << ": tail |z|^R/sqrt(R!) = "
           << tail << " (need < 1e-12)";
        throw TailTooLarge(os.str());
    }
}

}  // namespace

GrassmannState GrassmannState::zero(const Basis& basis, AlgebraPtr algebra) {
    std::vector<GrassmannElement> coeffs(static_cast<std::size_t>(basis.size()), GrassmannElement(algebra));
    return {basis, std::move(algebra), std::move(coeffs)};
}

GrassmannState apply(const Operator& a, const GrassmannState& ket) {
    require_basis(a.basis(), ket.basis, "apply");
    GrassmannState out = GrassmannState::zero(ket.basis, ket.algebra);
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            const Complex aij = a(i, j);
            if (aij == 0.0) continue;
            out.coeffs[std::size_t(i)] += aij * ket.coeffs[std::size_t(j)];
        }
    }
    return out;
}

GrassmannState apply(const GrassmannState& bra, const Operator& a) {
    require_basis(a.basis(), bra.basis, "apply");
    GrassmannState out = GrassmannState::zero(bra.basis, bra.algebra);
    for (int j = 0; j < a.dim(); ++j) {
        for (int i = 0; i < a.dim(); ++i) {
            const Complex aij = a(i, j);
            if (aij == 0.0) continue;
            out.coeffs[std::size_t(j)] += aij * bra.coeffs[std::size_t(i)];
        }
    }
    return out;
}

GrassmannState left_multiply(const GrassmannElement& g, const GrassmannState& state) {
    GrassmannState out = state;
    for (auto& c : out.coeffs) c = g * c;
    return out;
}

GrassmannState operator+(const GrassmannState& a, const GrassmannState& b) {
    require_basis(a.basis, b.basis, "add");
    GrassmannState out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
    return out;
}

GrassmannState operator*(Complex c, GrassmannState a) {
    for (auto& e : a.coeffs) e *= c;
    return a;
}

GrassmannElement overlap(const GrassmannState& bra, const GrassmannState& ket) {
    require_basis(bra.basis, ket.basis, "overlap");
    GrassmannElement sum(ket.algebra);
    for (std::size_t i = 0; i < ket.coeffs.size(); ++i) sum += bra.coeffs[i] * ket.coeffs[i];
    return sum;
}

GrassmannElement sandwich(const GrassmannState& bra, const Operator& a, const GrassmannState& ket) {
    return overlap(bra, apply(a, ket));
}

double max_abs_diff(const GrassmannState& a, const GrassmannState& b) {
    require_basis(a.basis, b.basis, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) m = std::max(m, max_abs_diff(a.coeffs[i], b.coeffs[i]));
    return m;
}

GrassmannState coherent_series(const AlgebraPtr& algebra, int var, Complex p) {
    const int k = algebra->k();
    GrassmannState out = GrassmannState::zero(Basis::fermion(k), algebra);
    for (int n = 0; n < k; ++n) {
        GrassmannElement c = GrassmannElement::generator(algebra, var, n);
        c *= 1.0 / root_qfactorial(n, p);
        out.coeffs[std::size_t(n)] = std::move(c);
    }
    return out;
}

namespace {

void require_barred(const AlgebraPtr& algebra, int var, bool barred, const char* what) {
    if (algebra->generator(var).barred != barred) {
        throw std::invalid_argument(std::string(what) + ": generator " + algebra->generator(var).name +
                                    (barred ? " must be barred" : " must be unbarred"));
    }
}

}  // namespace

GrassmannState ket_theta(const AlgebraPtr& algebra, int var) {
    require_barred(algebra, var, false, "ket_theta");
    return coherent_series(algebra, var, algebra->deformation().q);
}

GrassmannState ket_thetabar(const AlgebraPtr& algebra, int var) {
    require_barred(algebra, var, true, "ket_thetabar");
    return coherent_series(algebra, var, algebra->deformation().qbar);
}

GrassmannState bra_theta(const AlgebraPtr& algebra, int var) {
    require_barred(algebra, var, true, "bra_theta");
    return coherent_series(algebra, var, algebra->deformation().qbar);
}

GrassmannState bra_thetabar(const AlgebraPtr& algebra, int var) {
    require_barred(algebra, var, false, "bra_thetabar");
    return coherent_series(algebra, var, algebra->deformation().q);
}

CheckReport check_eigenstate(int k, double tol) {
    const AlgebraPtr alg = GrassmannAlgebra::two_variable(k);
    const int th = alg->find("theta");
    const int tb = alg->find("thetabar");
    const FkOperators f = build_fk(k);
    const GrassmannElement theta = GrassmannElement::generator(alg, th);
    const GrassmannElement thetabar = GrassmannElement::generator(alg, tb);

    const GrassmannState ket = ket_theta(alg, th);
    const GrassmannState ketbar = ket_thetabar(alg, tb);
    const GrassmannState bra = bra_theta(alg, tb);

    CheckReport rep("coherent.eigenstate", k);
    rep.add_residual("f- |theta) = theta |theta)", max_abs_diff(apply(f.f_minus, ket), left_multiply(theta, ket)), tol);
    rep.add_residual("f+^+ |thetabar) = thetabar |thetabar)",
                     max_abs_diff(apply(f.f_plus_plus, ketbar), left_multiply(thetabar, ketbar)), tol);
    rep.add_residual("(theta| f-^+ = thetabar (theta|",
                     max_abs_diff(apply(bra, f.f_minus_plus), left_multiply(thetabar, bra)), tol);
    return rep;
}

CheckReport check_overlaps(int k, double tol) {
    const AlgebraPtr alg = GrassmannAlgebra::four_variable(k);
    const Deformation& d = alg->deformation();
    const int th = alg->find("theta");
    const int thp = alg->find("theta'");
    const int tb = alg->find("thetabar");
    const int tbp = alg->find("thetabar'");
    auto gen = [&](int i) { return GrassmannElement::generator(alg, i); };

    CheckReport rep("coherent.overlap", k);
    // (theta'|theta) = e_q(thetabar' theta)
    const GrassmannElement lhs1 = overlap(bra_theta(alg, tbp), ket_theta(alg, th));
    rep.add_residual("(theta'|theta) = e_q(thetabar' theta)", max_abs_diff(lhs1, qexp(gen(tbp) * gen(th), d.q, k)),
                     tol);
    // (thetabar'|thetabar) = e_qbar(theta' thetabar)
    const GrassmannElement lhs2 = overlap(bra_thetabar(alg, thp), ket_thetabar(alg, tb));
    rep.add_residual("(thetabar'|thetabar) = e_qbar(theta' thetabar)",
                     max_abs_diff(lhs2, qexp(gen(thp) * gen(tb), d.qbar, k)), tol);

    // Specialisation theta' = theta on the two-variable algebra.
    const AlgebraPtr alg2 = GrassmannAlgebra::two_variable(k);
    const int th2 = alg2->find("theta");
    const int tb2 = alg2->find("thetabar");
    const GrassmannElement same = overlap(bra_theta(alg2, tb2), ket_theta(alg2, th2));
    const GrassmannElement expect =
        qexp(GrassmannElement::generator(alg2, tb2) * GrassmannElement::generator(alg2, th2), d.q, k);
    rep.add_residual("(theta|theta) = e_q(thetabar theta)", max_abs_diff(same, expect), tol);
    return rep;
}

GrassmannElement measure(const AlgebraPtr& algebra, int first, int second) {
    const int k = algebra->k();
    const Deformation& d = algebra->deformation();
    GrassmannElement mu(algebra);
    for (int n = 0; n < k; ++n) {
        const double weight = std::sqrt(std::abs(qfactorial(n, d.q) * qfactorial(n, d.qbar)));
        GrassmannElement term = GrassmannElement::generator(algebra, first, k - 1 - n) *
                                GrassmannElement::generator(algebra, second, k - 1 - n);
        term *= weight;
        mu += term;
    }
    return mu;
}

namespace {

double resolution_residual(const GrassmannState& ket, const GrassmannElement& mu, const GrassmannState& bra,
                           int left_var, int right_var) {
    const int k = ket.basis.size();
    double worst = 0.0;
    for (int m = 0; m < k; ++m) {
        for (int n = 0; n < k; ++n) {
            const GrassmannElement entry = ket.coeffs[std::size_t(m)] * mu * bra.coeffs[std::size_t(n)];
            const GrassmannElement value = double_integral(entry, left_var, right_var);
            const Complex expected = m == n ? 1.0 : 0.0;
            worst = std::max(worst, max_abs_diff(value, GrassmannElement::scalar(ket.algebra, expected)));
        }
    }
    return worst;
}

}  // namespace

CheckReport overcompleteness_check(int k, double tol) {
    const AlgebraPtr alg = GrassmannAlgebra::two_variable(k);
    const int th = alg->find("theta");
    const int tb = alg->find("thetabar");
    CheckReport rep("coherent.overcompleteness", k);
    rep.add_residual("int int dtheta |theta) mu (theta| dthetabar = 1",
                     resolution_residual(ket_theta(alg, th), measure(alg, th, tb), bra_theta(alg, tb), th, tb), tol);
    rep.add_residual("int int dthetabar |thetabar) mu (thetabar| dtheta = 1",
                     resolution_residual(ket_thetabar(alg, tb), measure(alg, tb, th), bra_thetabar(alg, th), tb, th),
                     tol);
    return rep;
}

namespace {

// Lowest-degree monomial with a coefficient above eps; deterministic (map order).
std::optional<std::pair<Monomial, Complex>> lowest_term(const GrassmannElement& x, double eps) {
    const int deg = x.lowest_degree(eps);
    if (deg < 0) return std::nullopt;
    for (const auto& [m, c] : x.terms()) {
        int d = 0;
        for (auto e : m) d += e;
        if (d == deg && std::abs(c) > eps) return std::make_pair(m, c);
    }
    return std::nullopt;
}

}  // namespace

CoherenceFactor coherence_factor(int k, int m) {
    if (m < 1) throw std::invalid_argument("coherence_factor: m must be >= 1");
    const AlgebraPtr alg = GrassmannAlgebra::two_variable(k);
    const FkOperators f = build_fk(k);
    const GrassmannState ket = ket_theta(alg, alg->find("theta"));
    const GrassmannState bra = bra_theta(alg, alg->find("thetabar"));

    const GrassmannElement numerator = sandwich(bra, power(f.f_minus_plus, m) * power(f.f_minus, m), ket);
    const GrassmannElement denominator = power(sandwich(bra, f.f_minus_plus * f.f_minus, ket), m);

    CoherenceFactor out;
    if (numerator.is_zero()) {
        out.numerator_vanishes = true;
        out.value = 0.0;
        return out;
    }
    constexpr double eps = 1e-13;
    const auto num = lowest_term(numerator, eps);
    const auto den = lowest_term(denominator, eps);
    if (!num) {
        out.numerator_vanishes = true;
        return out;
    }
    if (!den || den->first != num->first) {
        out.proportional = false;
        out.value = std::numeric_limits<double>::quiet_NaN();
        out.diagnostics = "lowest-degree monomials differ: numerator " + alg->monomial_string(num->first) +
                          ", denominator " + (den ? alg->monomial_string(den->first) : std::string("(zero)"));
        return out;
    }
    out.value = std::abs(num->second / den->second);
    return out;
}

CheckReport check_coherence_factors(int k, double tol) {
    CheckReport rep("coherent.coherence_factor", k);
    for (int m = 1; m <= k + 1; ++m) {
        const CoherenceFactor g = coherence_factor(k, m);
        const std::string name = "|g^(" + std::to_string(m) + ")| = " + (m <= k - 1 ? "1" : "0");
        if (m <= k - 1) {
            const double dev = g.proportional ? std::abs(g.value - 1.0) : std::numeric_limits<double>::infinity();
            rep.add_residual(name, dev, tol);
        } else {
            // Must vanish identically, not merely within tolerance.
            rep.add({name, g.value, 0.0, Bound::upper, g.numerator_vanishes && g.value == 0.0});
        }
    }
    return rep;
}

double boson_tail(Complex z, int cutoff) {
    const double a = std::abs(z);
    if (a == 0.0) return 0.0;
    return std::exp(cutoff * std::log(a) - 0.5 * std::lgamma(cutoff + 1.0));
}

GrassmannState fractional_supercoherent(Complex z, int k, int cutoff) {
    require_tail(z, cutoff);
    const AlgebraPtr alg = GrassmannAlgebra::one_variable(k);
    const GrassmannState fermion_part = ket_theta(alg, 0);
    const Basis basis = Basis::tensor(cutoff, k);
    GrassmannState out = GrassmannState::zero(basis, alg);
    Complex zr = 1.0;
    for (int r = 0; r < cutoff; ++r) {
        const Complex boson_coeff = zr * inv_sqrt_factorial(r);
        for (int s = 0; s < k; ++s) {
            out.coeffs[std::size_t(basis.index({r, s}))] = boson_coeff * fermion_part.coeffs[std::size_t(s)];
        }
        zr *= z;
    }
    return out;
}

GrassmannState displacement_apply(Complex z, int k, int cutoff) {
    require_tail(z, cutoff);
    const AlgebraPtr alg = GrassmannAlgebra::one_variable(k);
    const Deformation d(k);
    const FkOperators f = build_fk(k);
    const BosonOperators b = build_boson(cutoff);
    const Basis basis = Basis::tensor(cutoff, k);

    GrassmannState vacuum = GrassmannState::zero(basis, alg);
    vacuum.coeffs[std::size_t(basis.index({0, 0}))] = GrassmannElement::one(alg);

    // e_q(theta f_+) = sum_n theta^n (f_+)^n / [n]_q!
    GrassmannState fermionic = GrassmannState::zero(basis, alg);
    const Operator f_plus = embed_fermion(f.f_plus, cutoff);
    Operator f_pow = Operator::identity(basis);
    for (int n = 0; n < k; ++n) {
        GrassmannElement theta_n = GrassmannElement::generator(alg, 0, n);
        theta_n *= 1.0 / qfactorial(n, d.q);
        fermionic = fermionic + left_multiply(theta_n, apply(f_pow, vacuum));
        f_pow = f_pow * f_plus;
    }

    // exp(z b_+) truncates exactly: (b_+)^R = 0 on the cutoff space.
    const Operator zb = z * embed_boson(b.b_plus, k);
    Operator exp_zb = Operator::identity(basis);
    Operator term = Operator::identity(basis);
    for (int r = 1; r < cutoff; ++r) {
        term = (1.0 / r) * (term * zb);
        exp_zb += term;
    }
    return apply(exp_zb, fermionic);
}

StateVector vourdas_state(Complex z, int k, int s, int cutoff) {
    if (s < 0 || s >= k) throw std::invalid_argument("vourdas_state: sector s must lie in [0, k)");
    const Basis basis = Basis::plain(cutoff * k);
    Vector v = Vector::Zero(basis.size());
    const Complex zk = std::pow(z, k);
    Complex zkr = 1.0;
    for (int r = 0; r < cutoff; ++r) {
        v(k * r + s) = zkr * inv_sqrt_factorial(r);
        zkr *= zk;
    }
    return {basis, std::move(v)};
}

CheckReport vourdas_decomposition_check(Complex z, int k, int cutoff, double tol) {
    const Complex zk = std::pow(z, k);
    const GrassmannState state = fractional_supercoherent(zk, k, cutoff);
    const AlgebraPtr& alg = state.algebra;
    const Deformation& d = alg->deformation();

    std::vector<StateVector> sectors;
    for (int s = 0; s < k; ++s) sectors.push_back(vourdas_state(z, k, s, cutoff));

    double worst = 0.0;
    for (int r = 0; r < cutoff; ++r) {
        for (int s = 0; s < k; ++s) {
            const int plain_index = k * r + s;  // |k r + s> <-> |r> (x) |s>
            GrassmannElement expected(alg);
            for (int sp = 0; sp < k; ++sp) {
                GrassmannElement term = GrassmannElement::generator(alg, 0, sp);
                term *= sectors[std::size_t(sp)].coeffs(plain_index) / root_qfactorial(sp, d.q);
                expected += term;
            }
            worst = std::max(worst, max_abs_diff(state.at({r, s}), expected));
        }
    }
    CheckReport rep("coherent.vourdas", k);
    rep.add_residual("|z^k, theta) = sum_s theta^s/([s]_q!)^(1/2) |z,k,s)", worst, tol);
    return rep;
}

CheckReport check_supercoherent(Complex z, int k, int cutoff, double tol) {
    CheckReport rep("coherent.supercoherent", k);
    const GrassmannState state = fractional_supercoherent(z, k, cutoff);
    const AlgebraPtr& alg = state.algebra;

    rep.add_residual("D_q(z,theta)|0,0> = |z,theta)", max_abs_diff(displacement_apply(z, k, cutoff), state), std::min(tol, 1e-13));

    const FkOperators f = build_fk(k);
    const BosonOperators b = build_boson(cutoff);
    const Operator bf = embed_boson(b.b_minus, k) * embed_fermion(f.f_minus, cutoff);
    GrassmannElement ztheta = GrassmannElement::generator(alg, 0);
    ztheta *= z;
    const double residual = max_abs_diff(apply(bf, state), left_multiply(ztheta, state));
    // The truncation error is attained at |R-1, 0>, so the bound is sharp.
    const double bound = std::exp(cutoff * std::log(std::max(std::abs(z), 1e-300)) - 0.5 * std::lgamma(cutoff));
    rep.add_residual("b-f- |z,theta) = z theta |z,theta) (<= |z|^R/sqrt((R-1)!))", residual,
                     bound * (1.0 + 1e-9) + 1e-15);

    rep.merge(vourdas_decomposition_check(z, k, cutoff, std::min(tol, 1e-12)));

    if (k == 2) {
        // |z,theta) = sum z^r/sqrt(r!) (|r,0> + theta |r,1>)
        double worst = 0.0;
        Complex zr = 1.0;
        for (int r = 0; r < cutoff; ++r) {
            const Complex c = zr * inv_sqrt_factorial(r);
            worst = std::max(worst, max_abs_diff(state.at({r, 0}), GrassmannElement::scalar(alg, c)));
            GrassmannElement odd = GrassmannElement::generator(alg, 0);
            odd *= c;
            worst = std::max(worst, max_abs_diff(state.at({r, 1}), odd));
            zr *= z;
        }
        rep.add_residual("k=2 expansion sum z^r/sqrt(r!)(|r,0> + theta|r,1>)", worst, std::min(tol, 1e-14));
    }
    return rep;
}

CheckReport coherent_suite(int k, Complex z, int cutoff, double tol) {
    CheckReport rep("coherent", k);
    rep.merge(check_eigenstate(k, tol));
    rep.merge(check_overlaps(k, std::min(tol, 1e-12)));
    rep.merge(overcompleteness_check(k, tol));
    rep.merge(check_coherence_factors(k, tol));
    rep.merge(check_supercoherent(z, k, cutoff, tol));
    return rep;
}

}  // namespace kfsusy
