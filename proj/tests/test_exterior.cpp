#include <cosy/kform.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace cosy;

namespace {

// Independent sign oracle: wedge of two strictly increasing index tuples by
// explicit bubble sort of the concatenation. Used to cross-check the
// bitmask crossing-count implementation.
std::pair<int, std::uint32_t> naive_wedge(std::vector<int> a, const std::vector<int>& b) {
    for (int x : b) {
        for (int y : a)
            if (x == y) return {0, 0};
        a.push_back(x);
    }
    int swaps = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j + 1 < a.size() - i; ++j)
            if (a[j] > a[j + 1]) {
                std::swap(a[j], a[j + 1]);
                ++swaps;
            }
    std::uint32_t mask = 0;
    for (int x : a) mask |= 1u << x;
    return {swaps % 2 == 0 ? 1 : -1, mask};
}

std::vector<int> mask_indices(std::uint32_t m) {
    std::vector<int> idx;
    while (m) {
        idx.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return idx;
}

KForm random_form(int n, int p, std::mt19937_64& rng) {
    KForm f(n, p);
    auto masks = basis_masks(n, p);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    for (auto m : masks)
        if (rng() % 2 == 0) f.add_term(m, Rational(num(rng), den(rng)));
    return f;
}

Vec random_vec(int n, std::mt19937_64& rng) {
    Vec v = zero_vec(n);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    for (int i = 0; i < n; ++i) v[i] = Rational(num(rng), den(rng));
    return v;
}

}  // namespace

TEST_CASE("wedge on basis forms") {
    // e^1 ^ e^2 = e^12
    KForm e1 = KForm::basis(4, {0});
    KForm e2 = KForm::basis(4, {1});
    CHECK(wedge(e1, e2) == KForm::basis(4, {0, 1}));

    // repeated index kills the product
    KForm e12 = KForm::basis(4, {0, 1});
    CHECK(wedge(e12, e12).is_zero());

    // (e^14 + e^23)^2 = 2 e^1234 (even crossing count)
    KForm om = KForm::basis(4, {0, 3}) + KForm::basis(4, {1, 2});
    KForm sq = wedge(om, om);
    auto [sign, mask] = naive_wedge({0, 3}, {1, 2});
    KForm expected(4, 4);
    expected.add_term(mask, 2 * sign);
    CHECK(sq == expected);
    CHECK(sq.coeff(0b1111) == 2);
}

TEST_CASE("wedge agrees with permutation-sign oracle") {
    std::mt19937_64 rng(12345);
    for (int n : {4, 6}) {
        for (int pa = 1; pa <= 3; ++pa)
            for (int pb = 1; pb + pa <= n; ++pb) {
                auto mas = basis_masks(n, pa);
                auto mbs = basis_masks(n, pb);
                for (auto ma : mas)
                    for (auto mb : mbs) {
                        KForm w = wedge(KForm(n, pa), KForm(n, pb));
                        KForm fa(n, pa), fb(n, pb);
                        fa.add_term(ma, 1);
                        fb.add_term(mb, 1);
                        w = wedge(fa, fb);
                        auto [sign, mask] = naive_wedge(mask_indices(ma), mask_indices(mb));
                        if (sign == 0)
                            CHECK(w.is_zero());
                        else
                            CHECK(w.coeff(mask) == sign);
                    }
            }
    }
    (void)rng;
}

TEST_CASE("graded commutativity and associativity") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 5;
        int p = 1 + static_cast<int>(rng() % 2);
        int q = 1 + static_cast<int>(rng() % 2);
        KForm a = random_form(n, p, rng);
        KForm b = random_form(n, q, rng);
        KForm c = random_form(n, 1, rng);
        int sgn = (p * q % 2 == 0) ? 1 : -1;
        CHECK(wedge(a, b) == Rational(sgn) * wedge(b, a));
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    }
}

TEST_CASE("contract basics") {
    Vec e3 = zero_vec(3);
    e3[2] = 1;
    // i_{e_3}(e^3 ^ e^1 ^ e^2): canonicalizes to +e^123, contraction drops e^3
    KForm f = wedge(KForm::basis(3, {2}), KForm::basis(3, {0, 1}));
    CHECK(f == KForm::basis(3, {0, 1, 2}));
    CHECK(contract(e3, f) == KForm::basis(3, {0, 1}));

    // index absent
    CHECK(contract(e3, KForm::basis(3, {0, 1})).is_zero());

    // i_{e_1 + e_2}(e^1 ^ e^2) = e^2 - e^1
    Vec v = zero_vec(3);
    v[0] = 1;
    v[1] = 1;
    KForm expected = KForm::basis(3, {1}) - KForm::basis(3, {0});
    CHECK(contract(v, KForm::basis(3, {0, 1})) == expected);

    // 0-form convention
    CHECK(contract(e3, KForm::basis(3, {})).is_zero());
}

TEST_CASE("contract is nilpotent and an antiderivation") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 60; ++iter) {
        int n = 5;
        int p = 1 + static_cast<int>(rng() % 3);
        int q = 1 + static_cast<int>(rng() % 2);
        KForm a = random_form(n, p, rng);
        KForm b = random_form(n, q, rng);
        Vec v = random_vec(n, rng);
        CHECK(contract(v, contract(v, a)).is_zero());
        KForm lhs = contract(v, wedge(a, b));
        KForm rhs = wedge(contract(v, a), b) +
                    Rational(p % 2 == 0 ? 1 : -1) * wedge(a, contract(v, b));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("evaluation pairs with wedge convention") {
    // (a ^ b)(X, Y) = a(X) b(Y) - a(Y) b(X) for 1-forms
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 40; ++iter) {
        int n = 4;
        KForm a = random_form(n, 1, rng);
        KForm b = random_form(n, 1, rng);
        Vec x = random_vec(n, rng), y = random_vec(n, rng);
        Rational lhs = eval(wedge(a, b), {x, y});
        Rational rhs = eval1(a, x) * eval1(b, y) - eval1(a, y) * eval1(b, x);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("endomorphism algebra") {
    // identity
    Mat id = Mat::identity(2);
    Vec v{Rational(3), Rational(-2)};
    CHECK(id.apply(v) == v);

    // rotation squares to -Id
    Mat rot(2, 2);
    rot(0, 1) = -1;
    rot(1, 0) = 1;
    Vec e1{Rational(1), Rational(0)};
    CHECK((rot * rot).apply(e1) == (Rational(-1) * e1));

    // eta (x) xi projector
    KForm eta = KForm::basis(3, {2});
    Vec xi = zero_vec(3);
    xi[2] = 1;
    Mat proj = tensor_product(xi, eta);
    Vec e3 = xi;
    CHECK(proj.apply(e3) == e3);
    Vec e1b = zero_vec(3);
    e1b[0] = 1;
    CHECK(is_zero(proj.apply(e1b)));
}

TEST_CASE("degree above ambient dimension collapses to zero") {
    KForm a = KForm::basis(2, {0, 1});
    CHECK(wedge(a, KForm::basis(2, {0})).is_zero());
    CHECK(wedge(a, a).is_zero());
}

TEST_CASE("exact rational linear algebra") {
    Mat m(3, 4);
    // rows: x + 2y = 1-ish system with known rank 2
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(0, 2) = 3;
    m(0, 3) = 4;
    m(1, 0) = 2;
    m(1, 1) = 4;
    m(1, 2) = 6;
    m(1, 3) = 8;
    m(2, 0) = 0;
    m(2, 1) = 1;
    m(2, 2) = 1;
    m(2, 3) = 0;
    CHECK(rank(m) == 2);
    auto ker = kernel_basis(m);
    REQUIRE(ker.size() == 2);
    for (const auto& v : ker) CHECK(is_zero(m.apply(v)));

    Mat a(2, 2);
    a(0, 0) = 2;
    a(0, 1) = 1;
    a(1, 0) = 1;
    a(1, 1) = 1;
    CHECK(det(a) == 1);
    auto ainv = inverse(a);
    REQUIRE(ainv.has_value());
    CHECK((*ainv * a) == Mat::identity(2));

    CHECK(positive_definite(a));
    Mat b = a;
    b(0, 0) = -1;
    CHECK(!positive_definite(b));

    Vec rhs{Rational(3), Rational(2)};
    auto x = solve(a, rhs);
    REQUIRE(x.has_value());
    CHECK(a.apply(*x) == rhs);
}
