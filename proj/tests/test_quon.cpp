#include <doctest.h>

#include "kfsusy/coherent.hpp"
#include "kfsusy/quon.hpp"
#include "oracles.hpp"

using namespace kfsusy;

TEST_CASE("Arik-Coon relation below the top level") {
    const QuonOperators a = build_quon(0.5, 4);
    const Operator rel = q_commutator(a.a_minus, a.a_plus, 0.5) - Operator::identity(Basis::plain(4));
    CHECK(max_abs(leading_block(rel, 3)) < 1e-14);
    CHECK(max_abs(rel) > 0.5);  // truncation edge
    CHECK(a.relation_residual < 1e-14);
    CHECK(std::abs(a.a_plus(1, 0) - 1.0) < 1e-15);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            CHECK(a.a_plus(i, j).imag() == 0.0);
            CHECK(a.a_plus(i, j).real() >= 0.0);
        }
    }
    for (int n = 1; n < 4; ++n) CHECK(a.a_minus(n - 1, n).real() > 0.0);
    CHECK_THROWS_AS(build_quon(1.0, 4), BaseTooCloseToOne);
    CHECK_THROWS(build_quon(0.5, 1));
}

TEST_CASE("quon relation on the unit circle") {
    for (int k = 2; k <= 5; ++k) {
        const QuonOperators a = build_quon(quon_path(k, 1e-3), 3 * k);
        CHECK(a.relation_residual < 1e-12);
    }
}

TEST_CASE("quon path") {
    CHECK(std::abs(quon_path(3, 0.0) - oracle::root(3)) < 1e-15);
    CHECK(std::abs(quon_path(4, 0.5) - std::polar(1.0, kPi / 4)) < 1e-15);
}

TEST_CASE("quon coherent states") {
    const StateVector vac = quon_coherent(0.0, 0.5, 6);
    CHECK(std::abs(vac.coeffs(0) - 1.0) == 0.0);
    CHECK(max_abs(vac.coeffs.tail(5).eval()) == 0.0);

    const Complex Z(0.3, 0.2), Q(0.6);
    const int dim = 30;
    const StateVector s = quon_coherent(Z, Q, dim);
    const QuonOperators a = build_quon(Q, dim);
    const Vector res = a.a_minus.matrix() * s.coeffs - Z * s.coeffs;
    CHECK(max_abs(res.head(dim - 1).eval()) < 1e-14);
    CHECK(std::abs(res(dim - 1)) < 1e-12);  // the missing top component

    // Q -> 1: coefficients approach Z^n / sqrt(n!)
    const StateVector near_one = quon_coherent(Z, 1.0 - 1e-7, 20);
    for (int n = 0; n < 8; ++n) {
        CHECK(std::abs(near_one.coeffs(n) - std::pow(Z, n) / std::sqrt(std::tgamma(n + 1.0))) < 1e-6);
    }
    CHECK_THROWS_AS(quon_coherent(3.0, 0.9, 10), TailTooLarge);
}

TEST_CASE("limit bosons") {
    CHECK_THROWS(limit_bosons(3, 0.0, 6));
    CHECK_THROWS(limit_bosons(3, 0.5, 6));
    const LimitBosons b = limit_bosons(2, 1e-4, 6);
    CHECK(b.b_minus.dim() == 12);
}

TEST_CASE("limit study: monotone decrease for k = 2..4") {
    for (int k = 2; k <= 4; ++k) {
        CAPTURE(k);
        const LimitReport rep = limit_study(k, {1e-2, 1e-3, 1e-4});
        CHECK(rep.checks.pass());
        REQUIRE(rep.rows.size() == 3);
        CHECK(rep.rows[0].cauchy < 0.0);
        for (std::size_t i = 1; i < 3; ++i) {
            CHECK(rep.rows[i].boson_deviation < rep.rows[i - 1].boson_deviation);
            CHECK(rep.rows[i].mixed_deviation < rep.rows[i - 1].mixed_deviation);
            CHECK(rep.rows[i].cauchy >= 0.0);
        }
        CHECK(rep.rows.back().boson_deviation < 1e-2);
    }
}

// The deviation is linear in eps with a coefficient that grows with the
// boson level: about pi eps on the lowest shell. A 10 eps bound therefore
// holds there but not across the whole safe subspace.
TEST_CASE("k = 2 bosonic deviation scales linearly in eps") {
    const double eps = 1e-4;
    const LimitBosons b = limit_bosons(2, eps, 6);
    const Operator dev = commutator(b.b_minus, b.b_plus) - Operator::identity(b.b_minus.basis());
    CHECK(max_abs(leading_block(dev, 2)) < 10 * eps);
    CHECK(max_abs(leading_block(dev, 2)) == doctest::Approx(kPi * eps).epsilon(1e-2));
    const LimitReport rep = limit_study(2, {1e-3, 1e-4});
    CHECK(rep.rows[1].boson_deviation / rep.rows[0].boson_deviation == doctest::Approx(0.1).epsilon(2e-2));
}

TEST_CASE("k = 2 fermion sector is exact along the path") {
    const LimitReport rep = limit_study(2, {1e-3, 1e-4});
    for (const LimitRow& r : rep.rows) CHECK(r.fermion_deviation < 1e-14);
    CHECK(rep.checks.pass());
}

TEST_CASE("ladder normalization") {
    const LimitReport rev = limit_study(3, {1e-4, 1e-2, 1e-3, 1e-3});
    REQUIRE(rev.rows.size() == 3);
    CHECK(rev.rows[0].eps == 1e-2);
    CHECK(rev.rows[2].eps == 1e-4);
    const LimitReport single = limit_study(3, {1e-4});
    CHECK(single.rows.size() == 1);
    CHECK(single.checks.pass());
    CHECK_THROWS(limit_study(3, {}));
}

TEST_CASE("coarse ladders can fail monotonicity honestly") {
    // eps near 1/2 sits far from the limit; the report must say so rather than throw
    const LimitReport rep = limit_study(3, {0.45, 0.44}, 6, 1e-6);
    CHECK_FALSE(rep.checks.pass());
}
