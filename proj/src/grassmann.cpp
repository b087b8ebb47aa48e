#include "kfsusy/grassmann.hpp"

#include <algorithm>
#include <cmath>

namespace kfsusy {

namespace {

int mod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

int total_degree(const Monomial& m) {
    int d = 0;
    for (auto e : m) d += e;
    return d;
}

}  // namespace

GrassmannAlgebra::GrassmannAlgebra(int k, std::vector<Generator> generators,
                                   std::vector<std::vector<int>> braid_half)
    : deformation_(k), generators_(std::move(generators)), braid_half_(std::move(braid_half)) {
    const int g = size();
    if (g < 1 || g > kMaxGenerators) {
        throw std::invalid_argument("GrassmannAlgebra: between 1 and 4 generators supported");
    }
    if (k > 255) throw std::invalid_argument("GrassmannAlgebra: k too large");
    if (static_cast<int>(braid_half_.size()) != g) {
        throw std::invalid_argument("GrassmannAlgebra: braid table has wrong size");
    }
    for (const auto& row : braid_half_) {
        if (static_cast<int>(row.size()) != g) {
            throw std::invalid_argument("GrassmannAlgebra: braid table has wrong size");
        }
    }
    phase_table_.resize(static_cast<std::size_t>(2 * k));
    for (int m = 0; m < 2 * k; ++m) phase_table_[static_cast<std::size_t>(m)] = deformation_.half_power(m);
}

std::shared_ptr<const GrassmannAlgebra> GrassmannAlgebra::standard(int k, std::vector<Generator> gens) {
    std::stable_sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) {
        if (a.barred != b.barred) return !a.barred;
        return a.prime < b.prime;
    });
    const auto g = gens.size();
    std::vector<std::vector<int>> braid(g, std::vector<int>(g, 0));
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = i + 1; j < g; ++j) {
            // u b = q^(1/2) b u  <=>  b u = q^(-1/2) u b
            if (!gens[i].barred && gens[j].barred) braid[i][j] = -1;
        }
    }
    return std::make_shared<const GrassmannAlgebra>(k, std::move(gens), std::move(braid));
}

std::shared_ptr<const GrassmannAlgebra> GrassmannAlgebra::one_variable(int k) {
    return standard(k, {{"theta", false, 0}});
}

std::shared_ptr<const GrassmannAlgebra> GrassmannAlgebra::two_variable(int k) {
    return standard(k, {{"theta", false, 0}, {"thetabar", true, 0}});
}

std::shared_ptr<const GrassmannAlgebra> GrassmannAlgebra::four_variable(int k) {
    return standard(k, {{"theta", false, 0}, {"theta'", false, 1}, {"thetabar", true, 0}, {"thetabar'", true, 1}});
}

int GrassmannAlgebra::find(const std::string& name) const {
    for (int i = 0; i < size(); ++i) {
        if (generators_[static_cast<std::size_t>(i)].name == name) return i;
    }
    throw std::out_of_range("no generator named " + name);
}

int GrassmannAlgebra::braid_exponent(int i, int j) const {
    return braid_half_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
}

Complex GrassmannAlgebra::half_phase(int m) const {
    return phase_table_[static_cast<std::size_t>(mod(m, 2 * k()))];
}

std::string GrassmannAlgebra::monomial_string(const Monomial& m) const {
    std::string out;
    for (int i = 0; i < size(); ++i) {
        const int e = m[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        if (!out.empty()) out += ' ';
        out += generators_[static_cast<std::size_t>(i)].name;
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out.empty() ? "1" : out;
}

bool GrassmannAlgebra::operator==(const GrassmannAlgebra& other) const {
    if (k() != other.k() || generators_ != other.generators_) return false;
    for (int i = 0; i < size(); ++i) {
        for (int j = i + 1; j < size(); ++j) {
            if (mod(braid_exponent(i, j), 2 * k()) != mod(other.braid_exponent(i, j), 2 * k())) return false;
        }
    }
    return true;
}

GrassmannElement::GrassmannElement(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
    if (!algebra_) throw std::invalid_argument("GrassmannElement: null algebra");
}

GrassmannElement GrassmannElement::scalar(AlgebraPtr algebra, Complex c) {
    return monomial(std::move(algebra), Monomial{}, c);
}

GrassmannElement GrassmannElement::generator(AlgebraPtr algebra, int index, int exponent) {
    if (index < 0 || index >= algebra->size()) throw std::out_of_range("generator index out of range");
    GrassmannElement e(algebra);
    if (exponent < 0) throw std::invalid_argument("negative exponent");
    if (exponent >= algebra->k()) return e;
    Monomial m{};
    m[static_cast<std::size_t>(index)] = static_cast<std::uint8_t>(exponent);
    e.terms_[m] = 1.0;
    return e;
}

GrassmannElement GrassmannElement::monomial(AlgebraPtr algebra, const Monomial& m, Complex c) {
    GrassmannElement e(std::move(algebra));
    for (int i = 0; i < kMaxGenerators; ++i) {
        const int ex = m[static_cast<std::size_t>(i)];
        if (i >= e.algebra_->size() && ex != 0) throw std::out_of_range("monomial uses a missing generator");
        if (ex >= e.algebra_->k()) return e;
    }
    if (c != 0.0) e.terms_[m] = c;
    return e;
}

Complex GrassmannElement::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Complex{} : it->second;
}

GrassmannElement& GrassmannElement::prune(double eps) {
    std::erase_if(terms_, [eps](const auto& kv) { return std::abs(kv.second) < eps; });
    return *this;
}

double GrassmannElement::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [mono, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

int GrassmannElement::lowest_degree(double eps) const {
    int best = -1;
    for (const auto& [mono, c] : terms_) {
        if (std::abs(c) <= eps) continue;
        const int d = total_degree(mono);
        if (best < 0 || d < best) best = d;
    }
    return best;
}

void GrassmannElement::require_same(const GrassmannElement& other, const char* what) const {
    if (algebra_ != other.algebra_ && !(*algebra_ == *other.algebra_)) {
        throw AlgebraMismatch(std::string(what) + ": elements belong to different algebras");
    }
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& other) {
    require_same(other, "add");
    for (const auto& [m, c] : other.terms_) terms_[m] += c;
    return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& other) {
    require_same(other, "subtract");
    for (const auto& [m, c] : other.terms_) terms_[m] -= c;
    return *this;
}

GrassmannElement& GrassmannElement::operator*=(Complex c) {
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
    a.require_same(b, "multiply");
    const GrassmannAlgebra& alg = *a.algebra_;
    const int g = alg.size();
    const int k = alg.k();
    GrassmannElement out(a.algebra_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m{};
            bool vanishes = false;
            for (int i = 0; i < g && !vanishes; ++i) {
                const int e = ma[static_cast<std::size_t>(i)] + mb[static_cast<std::size_t>(i)];
                if (e >= k) vanishes = true;
                m[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e);
            }
            if (vanishes) continue;
            int phase = 0;
            for (int i = 0; i < g; ++i) {
                const int bi = mb[static_cast<std::size_t>(i)];
                if (bi == 0) continue;
                for (int j = i + 1; j < g; ++j) {
                    phase += alg.braid_exponent(i, j) * ma[static_cast<std::size_t>(j)] * bi;
                }
            }
            out.terms_[m] += alg.half_phase(phase) * ca * cb;
        }
    }
    return out;
}

GrassmannElement multiply(const GrassmannElement& x, const GrassmannElement& y) { return x * y; }

GrassmannElement power(const GrassmannElement& x, int n) {
    if (n < 0) throw std::invalid_argument("power: negative exponent");
    GrassmannElement result = GrassmannElement::one(x.algebra());
    for (int i = 0; i < n; ++i) result = result * x;
    return result;
}

GrassmannElement qderiv(const GrassmannElement& x, int var) {
    const GrassmannAlgebra& alg = *x.algebra();
    if (var < 0 || var >= alg.size()) throw std::out_of_range("qderiv: generator index out of range");
    const Complex p = alg.generator(var).barred ? alg.deformation().qbar : alg.deformation().q;
    const auto v = static_cast<std::size_t>(var);
    GrassmannElement out(x.algebra());
    for (const auto& [m, c] : x.terms()) {
        const int a = m[v];
        if (a == 0) continue;
        int phase = 0;
        for (int j = 0; j < var; ++j) phase += alg.braid_exponent(j, var) * m[static_cast<std::size_t>(j)];
        Monomial reduced = m;
        reduced[v] = static_cast<std::uint8_t>(a - 1);
        out += GrassmannElement::monomial(x.algebra(), reduced, alg.half_phase(phase) * qnumber(a, p) * c);
    }
    return out;
}

GrassmannElement qderiv_bar(const GrassmannElement& x, int var) {
    if (!x.algebra()->generator(var).barred) {
        throw std::invalid_argument("qderiv_bar: generator " + x.algebra()->generator(var).name + " is not barred");
    }
    return qderiv(x, var);
}

namespace {

// Coefficient of var^(k-1) with var moved to the left (to_left) or right end.
GrassmannElement extract_top(const GrassmannElement& x, int var, bool to_left) {
    const GrassmannAlgebra& alg = *x.algebra();
    if (var < 0 || var >= alg.size()) throw std::out_of_range("integrate: generator index out of range");
    const int top = alg.k() - 1;
    const auto v = static_cast<std::size_t>(var);
    GrassmannElement out(x.algebra());
    for (const auto& [m, c] : x.terms()) {
        if (m[v] != top) continue;
        int phase = 0;
        if (to_left) {
            // g_j g_v = beta_jv^(-1) g_v g_j for j < v
            for (int j = 0; j < var; ++j) phase -= alg.braid_exponent(j, var) * top * m[static_cast<std::size_t>(j)];
        } else {
            // g_v g_j = beta_vj^(-1) g_j g_v for j > v
            for (int j = var + 1; j < alg.size(); ++j)
                phase -= alg.braid_exponent(var, j) * top * m[static_cast<std::size_t>(j)];
        }
        Monomial rest = m;
        rest[v] = 0;
        out += GrassmannElement::monomial(x.algebra(), rest, alg.half_phase(phase) * c);
    }
    return out;
}

}  // namespace

GrassmannElement integrate(const GrassmannElement& x, int var) { return extract_top(x, var, true); }

GrassmannElement integrate_right(const GrassmannElement& x, int var) { return extract_top(x, var, false); }

GrassmannElement double_integral(const GrassmannElement& x, int left_var, int right_var) {
    return integrate_right(integrate(x, left_var), right_var);
}

GrassmannElement qexp(const GrassmannElement& x, Complex p, int terms) {
    if (terms < 1) throw std::invalid_argument("qexp: terms must be >= 1");
    GrassmannElement sum(x.algebra());
    GrassmannElement xn = GrassmannElement::one(x.algebra());
    for (int n = 0; n < terms; ++n) {
        if (n > 0) xn = xn * x;
        if (xn.is_zero()) break;
        const Complex fact = qfactorial(n, p);
        if (std::abs(fact) < 1e-12) throw std::domain_error("qexp: [n]_p! vanishes on a nonzero power");
        GrassmannElement term = xn;
        term *= 1.0 / fact;
        sum += term;
    }
    return sum;
}

double max_abs_diff(const GrassmannElement& x, const GrassmannElement& y) {
    return (x - y).max_abs_coeff();
}

namespace {

int basis_size(const GrassmannAlgebra& alg) {
    int n = 1;
    for (int i = 0; i < alg.size(); ++i) n *= alg.k();
    return n;
}

Monomial monomial_at(const GrassmannAlgebra& alg, int index) {
    Monomial m{};
    for (int i = alg.size() - 1; i >= 0; --i) {
        m[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(index % alg.k());
        index /= alg.k();
    }
    return m;
}

int index_of(const GrassmannAlgebra& alg, const Monomial& m) {
    int index = 0;
    for (int i = 0; i < alg.size(); ++i) index = index * alg.k() + m[static_cast<std::size_t>(i)];
    return index;
}

template <class Map>
Operator linear_map(const AlgebraPtr& algebra, Map map) {
    const int d = basis_size(*algebra);
    Matrix mat = Matrix::Zero(d, d);
    for (int col = 0; col < d; ++col) {
        const GrassmannElement image = map(GrassmannElement::monomial(algebra, monomial_at(*algebra, col)));
        for (const auto& [m, c] : image.terms()) mat(index_of(*algebra, m), col) += c;
    }
    return Operator(Basis::plain(d), std::move(mat));
}

}  // namespace

Operator left_multiplication_matrix(const AlgebraPtr& algebra, int var) {
    const GrassmannElement g = GrassmannElement::generator(algebra, var);
    return linear_map(algebra, [&](const GrassmannElement& x) { return g * x; });
}

Operator derivative_matrix(const AlgebraPtr& algebra, int var) {
    return linear_map(algebra, [&](const GrassmannElement& x) { return qderiv(x, var); });
}

CheckReport verify_realization(int k, double tol) {
    const AlgebraPtr alg = GrassmannAlgebra::two_variable(k);
    const Deformation& d = alg->deformation();
    const int th = alg->find("theta");
    const int tb = alg->find("thetabar");

    const Operator theta = left_multiplication_matrix(alg, th);
    const Operator thetabar = left_multiplication_matrix(alg, tb);
    const Operator d_theta = derivative_matrix(alg, th);
    const Operator d_thetabar = derivative_matrix(alg, tb);
    const Operator one = Operator::identity(theta.basis());

    CheckReport rep("grassmann", k);
    rep.add_residual("d_theta theta - q theta d_theta = 1", max_abs(q_commutator(d_theta, theta, d.q) - one), tol);
    rep.add_residual("(d_theta)^k = 0", max_abs(power(d_theta, k)), tol);
    rep.add_residual("theta^k = 0", max_abs(power(theta, k)), tol);
    rep.add_residual("d_thetabar thetabar - qbar thetabar d_thetabar = 1",
                     max_abs(q_commutator(d_thetabar, thetabar, d.qbar) - one), tol);
    rep.add_residual("(d_thetabar)^k = 0", max_abs(power(d_thetabar, k)), tol);
    rep.add_residual("thetabar^k = 0", max_abs(power(thetabar, k)), tol);
    rep.add_residual("d_theta d_thetabar - q^(-1/2) d_thetabar d_theta = 0",
                     max_abs(q_commutator(d_theta, d_thetabar, d.half_power(-1))), tol);
    rep.add_residual("theta thetabar - q^(1/2) thetabar theta = 0",
                     max_abs(q_commutator(theta, thetabar, d.half_power(1))), tol);

    // Defining values of the integral: int dtheta theta^n = delta_{n, k-1}.
    double integral_residual = 0.0;
    for (int n = 0; n < k; ++n) {
        const Complex expected = n == k - 1 ? 1.0 : 0.0;
        const GrassmannElement val = integrate(GrassmannElement::generator(alg, th, n), th);
        const GrassmannElement valbar = integrate(GrassmannElement::generator(alg, tb, n), tb);
        integral_residual = std::max({integral_residual, max_abs_diff(val, GrassmannElement::scalar(alg, expected)),
                                      max_abs_diff(valbar, GrassmannElement::scalar(alg, expected))});
    }
    rep.add_residual("int dtheta theta^n = delta(n, k-1)", integral_residual, tol);
    return rep;
}

}  // namespace kfsusy
