#include "kfsusy/quon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "kfsusy/coherent.hpp"
#include "kfsusy/kfermion.hpp"

namespace kfsusy {

QuonOperators build_quon(Complex Q, int dim) {
    if (std::abs(1.0 - Q) <= 1e-12) throw BaseTooCloseToOne("build_quon: Q too close to 1");
    if (dim < 2) throw std::invalid_argument("build_quon: dim must be >= 2");
    const Basis basis = Basis::plain(dim);
    Matrix lower = Matrix::Zero(dim, dim);
    Matrix raise = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        const Complex w = principal_sqrt(qnumber(n, Q));
        lower(n - 1, n) = w;
        raise(n, n - 1) = w;
    }
    QuonOperators out{Q, Operator(basis, std::move(lower)), Operator(basis, std::move(raise)), 0.0};
    const Operator rel = q_commutator(out.a_minus, out.a_plus, Q) - Operator::identity(basis);
    out.relation_residual = max_abs(leading_block(rel, dim - 1));
    return out;
}

StateVector quon_coherent(Complex Z, Complex Q, int dim) {
    if (dim < 1) throw std::invalid_argument("quon_coherent: dim must be >= 1");
    Vector v(dim);
    Complex zn = 1.0;
    for (int n = 0; n < dim; ++n) {
        v(n) = zn / root_qfactorial(n, Q);
        zn *= Z;
    }
    const double omitted = std::abs(zn / root_qfactorial(dim, Q));
    if (!(omitted < 1e-12)) {
        std::ostringstream os;
        os << "quon_coherent: first omitted coefficient " << omitted << " at dim " << dim << " (need < 1e-12)";
        throw TailTooLarge(os.str());
    }
    return {Basis::plain(dim), std::move(v)};
}

Complex quon_path(int k, double eps) { return std::polar(1.0, 2.0 * kPi * (1.0 - eps) / k); }

LimitBosons limit_bosons(int k, double eps, int boson_cutoff) {
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("limit study: eps must lie in (0, 0.5)");
    const Complex Q = quon_path(k, eps);
    const QuonOperators a = build_quon(Q, boson_cutoff * k);
    const Complex norm = 1.0 / root_qfactorial(k, Q);
    return {norm * power(a.a_minus, k), norm * power(a.a_plus, k)};
}

namespace {

// Values at or below this are roundoff; a column already there counts as converged.
constexpr double kRoundoffFloor = 1e-14;

// Largest ratio xs[i]/xs[i-1] over steps not already at the roundoff floor.
// The column decreases (up to roundoff) iff the result is below 1.
double worst_ratio(const std::vector<double>& xs) {
    double worst = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (xs[i] <= kRoundoffFloor) continue;
        worst = std::max(worst, xs[i - 1] > 0.0 ? xs[i] / xs[i - 1] : std::numeric_limits<double>::infinity());
    }
    return worst;
}

}  // namespace

LimitReport limit_study(int k, std::vector<double> epsilons, int boson_cutoff, double boson_tol) {
    if (k < 2) throw std::invalid_argument("limit_study: k must be >= 2");
    if (boson_cutoff < 3) throw std::invalid_argument("limit_study: boson cutoff must be >= 3");
    if (epsilons.empty()) throw std::invalid_argument("limit_study: empty eps ladder");
    std::sort(epsilons.begin(), epsilons.end(), std::greater<>());
    epsilons.erase(std::unique(epsilons.begin(), epsilons.end()), epsilons.end());

    const int dim = boson_cutoff * k;
    const int safe = (boson_cutoff - 2) * k;  // boson-equivalent index r < R - 2
    const FkOperators f = build_fk(k);
    const Complex q = f.deformation.q;
    const Operator fm = Operator(Basis::plain(dim), embed_fermion(f.f_minus, boson_cutoff).matrix());
    const Operator fp = Operator(Basis::plain(dim), embed_fermion(f.f_plus, boson_cutoff).matrix());
    const Operator one = Operator::identity(Basis::plain(dim));
    const Operator one_k = Operator::identity(Basis::plain(k));

    LimitReport report;
    report.k = k;
    report.boson_cutoff = boson_cutoff;
    report.checks = CheckReport("quon.limit", k);

    std::optional<LimitBosons> previous;
    for (double eps : epsilons) {
        const LimitBosons b = limit_bosons(k, eps, boson_cutoff);
        LimitRow row;
        row.eps = eps;
        row.boson_deviation = max_abs(leading_block(commutator(b.b_minus, b.b_plus) - one, safe));
        row.mixed_deviation = std::max({max_abs(leading_block(commutator(b.b_minus, fm), safe)),
                                        max_abs(leading_block(commutator(b.b_minus, fp), safe)),
                                        max_abs(leading_block(commutator(b.b_plus, fm), safe)),
                                        max_abs(leading_block(commutator(b.b_plus, fp), safe))});

        const QuonOperators a = build_quon(quon_path(k, eps), k);
        row.fermion_deviation = max_abs(q_commutator(a.a_minus, a.a_plus, q) - one_k);
        if (previous) {
            row.cauchy = std::max(max_abs(b.b_minus - previous->b_minus), max_abs(b.b_plus - previous->b_plus));
        }
        previous = b;
        report.rows.push_back(row);
    }

    std::vector<double> boson, mixed, fermion, cauchy;
    for (const auto& r : report.rows) {
        boson.push_back(r.boson_deviation);
        mixed.push_back(r.mixed_deviation);
        fermion.push_back(r.fermion_deviation);
        if (r.cauchy >= 0.0) cauchy.push_back(r.cauchy);
    }
    auto monotone = [&](const std::string& name, const std::vector<double>& xs) {
        report.checks.add_residual(name + " worst successive ratio", worst_ratio(xs), 1.0);
    };
    monotone("|[b-,b+] - 1|", boson);
    monotone("|[b,f]|", mixed);
    monotone("|f-f+ - q f+f- - 1|", fermion);
    monotone("|b(eps_i) - b(eps_i+1)|", cauchy);
    report.checks.add_residual("|[b-,b+] - 1| at smallest eps", boson.back(), boson_tol);
    return report;
}

}  // namespace kfsusy
