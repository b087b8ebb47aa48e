#include <doctest.h>

#include "kfsusy/kfermion.hpp"
#include "oracles.hpp"

using namespace kfsusy;

TEST_CASE("k = 2 gives the ordinary fermion") {
    const FkOperators f = build_fk(2);
    Matrix down(2, 2), up(2, 2);
    down << 0, 1, 0, 0;
    up << 0, 0, 1, 0;
    CHECK((f.f_minus.matrix() - down).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((f.f_plus.matrix() - up).cwiseAbs().maxCoeff() < 1e-15);
    // anticommutator
    CHECK(max_abs(q_commutator(f.f_minus, f.f_plus, -1.0) - Operator::identity(f.f_minus.basis())) < 1e-15);
}

TEST_CASE("matrix elements match the closed form") {
    for (int k = 2; k <= 8; ++k) {
        const FkOperators f = build_fk(k);
        const Complex q = oracle::root(k);
        for (int n = 0; n + 1 < k; ++n) {
            const Complex up = oracle::branch_sqrt(oracle::qint(n + 1, q));
            const Complex upbar = oracle::branch_sqrt(oracle::qint(n + 1, std::conj(q)));
            CHECK(std::abs(f.f_plus.element({0, n + 1}, {0, n}) - up) < 1e-13);
            CHECK(std::abs(f.f_minus.element({0, n}, {0, n + 1}) - up) < 1e-13);
            CHECK(std::abs(f.f_plus_plus.element({0, n}, {0, n + 1}) - upbar) < 1e-13);
            CHECK(std::abs(f.f_minus_plus.element({0, n + 1}, {0, n}) - upbar) < 1e-13);
        }
        CHECK(max_abs(adjoint(f.f_plus) - f.f_plus_plus) < 1e-15);
    }
    CHECK(std::abs(build_fk(3).f_plus.element({0, 2}, {0, 1}) - std::polar(1.0, kPi / 6)) < 1e-15);
}

TEST_CASE("vacuum, number operator and Klein operator") {
    for (int k = 2; k <= 6; ++k) {
        const FkOperators f = build_fk(k);
        const StateVector vac = StateVector::basis_state(Basis::fermion(k), {0, 0});
        CHECK(max_abs((f.f_minus * vac).coeffs) == 0.0);
        CHECK(max_abs((f.f_plus_plus * vac).coeffs) == 0.0);
        const Operator K = f.klein();
        CHECK(is_diagonal(K, 1e-14));
        const auto d = diagonal(K);
        for (int n = 0; n < k; ++n) CHECK(std::abs(d[std::size_t(n)] - oracle::root(k, n)) < 1e-14);
    }
}

TEST_CASE("F_k relations for k = 2..8") {
    for (int k = 2; k <= 8; ++k) {
        const CheckReport rep = verify_fk_relations(k, 1e-10);
        CAPTURE(k);
        CHECK(rep.pass());
        CHECK(rep.checks().size() >= 15);
    }
}

TEST_CASE("an absurd tolerance fails") { CHECK_FALSE(verify_fk_relations(4, 1e-30).pass()); }

TEST_CASE("truncated boson") {
    const BosonOperators b2 = build_boson(2);
    const Operator c = commutator(b2.b_minus, b2.b_plus);
    CHECK(is_diagonal(c, 1e-15));
    CHECK(std::abs(c(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(c(1, 1) + 1.0) < 1e-15);

    const BosonOperators b = build_boson(10);
    const Operator r = restrict_safe(commutator(b.b_minus, b.b_plus), 1);
    CHECK(max_abs(r - Operator::identity(r.basis())) < 1e-13);
    for (int n = 1; n < 10; ++n) CHECK(std::abs(b.b_minus(n - 1, n) - std::sqrt(double(n))) < 1e-14);
    CHECK(max_abs(b.number - b.b_plus * b.b_minus) < 1e-13);
    CHECK_THROWS(build_boson(1));
}

TEST_CASE("embeddings commute across factors") {
    const FkOperators f = build_fk(3);
    const BosonOperators b = build_boson(5);
    const Operator bm = embed_boson(b.b_minus, 3);
    const Operator fp = embed_fermion(f.f_plus, 5);
    CHECK(bm.basis() == Basis::tensor(5, 3));
    CHECK(max_abs(commutator(bm, fp)) < 1e-15);
    CHECK(max_abs(bm * fp - tensor(b.b_minus, f.f_plus)) < 1e-15);
}
