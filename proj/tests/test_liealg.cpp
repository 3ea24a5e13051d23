#include <cosy/lie_calculus.hpp>
#include <cosy/models.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace cosy;

namespace {

LieModel abelian(int n) { return LieModel(n, "abelian"); }

Vec basis_vec(int n, int i) {
    Vec v = zero_vec(n);
    v[i] = 1;
    return v;
}

LieModel random_small_model(std::mt19937_64& rng) {
    // random sparse bracket table, not necessarily Jacobi
    int n = 3 + static_cast<int>(rng() % 2);
    LieModel L(n, "random");
    std::uniform_int_distribution<int> c(-2, 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (rng() % 3 != 0) continue;
            Vec v = zero_vec(n);
            v[rng() % n] = c(rng);
            L.set_bracket(i, j, std::move(v));
        }
    return L;
}

}  // namespace

TEST_CASE("check_jacobi") {
    CHECK(check_jacobi(abelian(3)).ok);
    CHECK(check_jacobi(models::kt_algebra()).ok);

    // [e1,e2]=e3, [e1,e3]=e1 fails on triple (1,2,3)
    LieModel L(3, "bad");
    Vec v = zero_vec(3);
    v[2] = 1;
    L.set_bracket(0, 1, v);
    Vec w = zero_vec(3);
    w[0] = 1;
    L.set_bracket(0, 2, w);
    auto rep = check_jacobi(L);
    CHECK(!rep.ok);
    CHECK(rep.triple == std::array<int, 3>{0, 1, 2});
}

TEST_CASE("Chevalley-Eilenberg differential") {
    // abelian: d = 0 everywhere
    LieModel a5 = abelian(5);
    std::mt19937_64 rng(5);
    for (auto mask : basis_masks(5, 2)) {
        KForm f(5, 2);
        f.add_term(mask, Rational(3, 2));
        CHECK(ce_d(a5, f).is_zero());
    }

    // KT: d e^4 = e^1 ^ e^2
    LieModel kt = models::kt_algebra();
    CHECK(ce_d(kt, KForm::basis(4, {3})) == KForm::basis(4, {0, 1}));
    for (int i : {0, 1, 2}) CHECK(ce_d(kt, KForm::basis(4, {i})).is_zero());

    // KT: d(e^3 ^ e^4) = -e^1 ^ e^2 ^ e^3
    CHECK(ce_d(kt, KForm::basis(4, {2, 3})) == -KForm::basis(4, {0, 1, 2}));
}

TEST_CASE("d.d = 0 iff Jacobi holds") {
    std::mt19937_64 rng(77);
    int seen_jacobi = 0, seen_non_jacobi = 0;
    for (int iter = 0; iter < 200; ++iter) {
        LieModel L = random_small_model(rng);
        bool jac = check_jacobi(L).ok;
        bool dd_zero = true;
        for (int p = 1; p < L.dim && dd_zero; ++p)
            for (auto mask : basis_masks(L.dim, p)) {
                KForm f(L.dim, p);
                f.add_term(mask, 1);
                if (!ce_d(L, ce_d(L, f)).is_zero()) {
                    dd_zero = false;
                    break;
                }
            }
        if (jac) {
            CHECK(dd_zero);
            ++seen_jacobi;
        } else {
            // d^2 on 1-forms evaluates the Jacobiator, so it must fail somewhere
            CHECK(!dd_zero);
            ++seen_non_jacobi;
        }
    }
    CHECK(seen_jacobi > 0);
    CHECK(seen_non_jacobi > 0);
}

TEST_CASE("Lie derivative") {
    LieModel a3 = abelian(3);
    CHECK(lie_derivative(a3, basis_vec(3, 0), KForm::basis(3, {1, 2})).is_zero());

    // KT: L_{e_1} e^4 = i_{e_1} d e^4 = e^2
    LieModel kt = models::kt_algebra();
    CHECK(lie_derivative(kt, basis_vec(4, 0), KForm::basis(4, {3})) == KForm::basis(4, {1}));

    // KT x S^1 with central xi = e_5: L_xi phi = 0
    ACMStructure s = models::kt_s1();
    CHECK(lie_derivative(s.model, s.xi, s.phi).is_zero());

    // on invariant 1-forms, (L_X a)(Y) = -a([X, Y])
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int iter = 0; iter < 50; ++iter) {
        const LieModel& L = s.model;
        Vec x = zero_vec(5), y = zero_vec(5);
        for (int i = 0; i < 5; ++i) {
            x[i] = c(rng);
            y[i] = c(rng);
        }
        KForm alpha(5, 1);
        for (int i = 0; i < 5; ++i) alpha.add_term(1u << i, Rational(c(rng), 2));
        CHECK(eval1(lie_derivative(L, x, alpha), y) == -eval1(alpha, L.bracket(x, y)));
    }
}

TEST_CASE("Nijenhuis torsion") {
    // abelian: everything vanishes
    LieModel a4 = abelian(4);
    Mat any(4, 4);
    any(0, 1) = 2;
    any(3, 2) = Rational(1, 2);
    CHECK(nijenhuis(a4, any).is_zero());

    // A = Id on KT: terms cancel pairwise
    LieModel kt = models::kt_algebra();
    CHECK(nijenhuis(kt, Mat::identity(4)).is_zero());

    // KT x S^1 with the structure phi: N_phi(e_1, e_2) = e_4
    ACMStructure s = models::kt_s1();
    PairTable n = nijenhuis(s.model, s.phi);
    CHECK(n.at(0, 1) == basis_vec(5, 3));
}

TEST_CASE("Levi-Civita connection") {
    // abelian, g = Id: all Gamma vanish
    LieModel a3 = abelian(3);
    Connection flat = levi_civita(a3, Metric::identity(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(is_zero(flat.gamma[i][j]));

    // KT, g = Id: Gamma^4_12 = -1/2
    LieModel kt = models::kt_algebra();
    Connection c = levi_civita(kt, Metric::identity(4));
    CHECK(c.gamma[0][1][3] == Rational(-1, 2));
    CHECK(c.torsion_free(kt));
    CHECK(c.metric_compatible(Metric::identity(4)));

    // torsion-free and metric-compatible on a non-identity metric
    Mat gmat = Mat::identity(4);
    gmat(0, 0) = 2;
    gmat(0, 2) = Rational(1, 3);
    gmat(2, 0) = Rational(1, 3);
    Metric g(std::move(gmat));
    Connection c2 = levi_civita(kt, g);
    CHECK(c2.torsion_free(kt));
    CHECK(c2.metric_compatible(g));
}

TEST_CASE("Killing fields") {
    LieModel a3 = abelian(3);
    Mat gm = Mat::identity(3);
    gm(0, 0) = 5;
    Metric g(std::move(gm));
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int iter = 0; iter < 10; ++iter) {
        Vec x = zero_vec(3);
        for (int i = 0; i < 3; ++i) x[i] = c(rng);
        CHECK(is_killing(a3, g, x));
    }

    ACMStructure s = models::kt_s1();
    CHECK(is_killing(s.model, s.g, s.xi));  // central field

    LieModel kt = models::kt_algebra();
    CHECK(!is_killing(kt, Metric::identity(4), basis_vec(4, 0)));
}

TEST_CASE("nilpotency detector") {
    CHECK(is_nilpotent(abelian(4)));
    CHECK(is_nilpotent(models::kt_algebra()));
    CHECK(is_nilpotent(models::heisenberg().model));

    // [e1, e2] = e2 is solvable, not nilpotent
    LieModel aff(2, "aff");
    Vec v = zero_vec(2);
    v[1] = 1;
    aff.set_bracket(0, 1, std::move(v));
    CHECK(!is_nilpotent(aff));
}
