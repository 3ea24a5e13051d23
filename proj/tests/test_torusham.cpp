#include <cosy/torusham.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace cosy;

namespace {

TorusModel t3_model() {
    // eta = dx3, omega = dx1 ^ dx2
    return make_torus_model(KForm::basis(3, {2}), KForm::basis(3, {0, 1}));
}

TorusModel t5_model() {
    return make_torus_model(KForm::basis(5, {4}),
                            KForm::basis(5, {0, 1}) + KForm::basis(5, {2, 3}));
}

TrigPoly random_poly(int m, std::mt19937_64& rng, int max_terms = 3) {
    TrigPoly p(m);
    std::uniform_int_distribution<int> freq(-3, 3);
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 2);
    int terms = 1 + static_cast<int>(rng() % max_terms);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> k(m);
        for (int i = 0; i < m; ++i) k[i] = freq(rng);
        p.add(FreqKey{std::move(k), rng() % 2 == 0}, Rational(num(rng), den(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("trig polynomial arithmetic") {
    // d(constant) = 0
    CHECK(trig_d(TrigPoly::constant(3, Rational(5, 7))).is_zero());

    // d(sin x1) = cos x1 dx1
    TrigPoly sinx1 = TrigPoly::harmonic(3, {1, 0, 0}, true, 1);
    TrigForm expect(3, 1);
    expect.add_term(1u << 0, TrigPoly::harmonic(3, {1, 0, 0}, false, 1));
    CHECK(trig_d(sinx1) == expect);

    // d(cos x1 sin x2) = -sin x1 sin x2 dx1 + cos x1 cos x2 dx2
    TrigPoly f = TrigPoly::harmonic(3, {1, 0, 0}, false, 1) *
                 TrigPoly::harmonic(3, {0, 1, 0}, true, 1);
    TrigForm df = trig_d(f);
    TrigPoly c1 = TrigPoly::harmonic(3, {1, 0, 0}, true, -1) *
                  TrigPoly::harmonic(3, {0, 1, 0}, true, 1);
    TrigPoly c2 = TrigPoly::harmonic(3, {1, 0, 0}, false, 1) *
                  TrigPoly::harmonic(3, {0, 1, 0}, false, 1);
    CHECK(df.coeff(1u << 0) == c1);
    CHECK(df.coeff(1u << 1) == c2);

    // product-to-sum has rational coefficients: sin^2 + cos^2 = 1
    TrigPoly s = TrigPoly::harmonic(2, {1, 1}, true, 1);
    TrigPoly c = TrigPoly::harmonic(2, {1, 1}, false, 1);
    CHECK(s * s + c * c == TrigPoly::constant(2, 1));

    // d.d = 0 on random polys
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 40; ++iter) {
        TrigPoly g = random_poly(3, rng);
        CHECK(trig_d(trig_d(g)).is_zero());
    }
}

TEST_CASE("trig parser") {
    CHECK(parse_trig_poly("sin(x1)", 3) == TrigPoly::harmonic(3, {1, 0, 0}, true, 1));
    CHECK(parse_trig_poly("2/3*cos(x1-2*x2)", 3) ==
          TrigPoly::harmonic(3, {1, -2, 0}, false, Rational(2, 3)));
    CHECK(parse_trig_poly("-cos(x1)+1/2", 2) ==
          TrigPoly::constant(2, Rational(1, 2)) + TrigPoly::harmonic(2, {1, 0}, false, -1));
    CHECK(parse_trig_poly("sin(-x1+3*x2)", 2) == TrigPoly::harmonic(2, {-1, 3}, true, 1));
    CHECK_THROWS_AS(parse_trig_poly("sin(x9)", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_trig_poly("tan(x1)", 3), std::invalid_argument);
    CHECK_THROWS_AS(parse_trig_poly("sin(x1", 3), std::invalid_argument);
}

TEST_CASE("Hamiltonian fields on T^3") {
    TorusModel t = t3_model();
    CHECK(t.xi == Vec{Rational(0), Rational(0), Rational(1)});

    // f = sin x1: X_f = -cos(x1) d/dx2
    TrigField xf = hamiltonian_field(t, parse_trig_poly("sin(x1)", 3));
    CHECK(xf.comp[0].is_zero());
    CHECK(xf.comp[1] == parse_trig_poly("-cos(x1)", 3));
    CHECK(xf.comp[2].is_zero());

    // constants give the zero field
    CHECK(hamiltonian_field(t, TrigPoly::constant(3, 7)).is_zero());

    // f = sin x3: xi(f) != 0, df - xi(f) eta = 0, so X_f = 0 (weak case)
    CHECK(hamiltonian_field(t, parse_trig_poly("sin(x3)", 3)).is_zero());
}

TEST_CASE("Poisson bracket") {
    TorusModel t = t3_model();
    TrigPoly f = parse_trig_poly("sin(x1)", 3);
    TrigPoly g = parse_trig_poly("sin(x2)", 3);

    // {f, f} = 0
    CHECK(poisson(t, f, f).is_zero());
    // {sin x1, sin x2} = -cos x1 cos x2
    CHECK(poisson(t, f, g) == parse_trig_poly("-cos(x1)", 3) * parse_trig_poly("cos(x2)", 3));
    // {f, c} = 0
    CHECK(poisson(t, f, TrigPoly::constant(3, Rational(1, 3))).is_zero());
}

TEST_CASE("field classification") {
    TorusModel t = t3_model();

    // X = xi: cosymplectic, not Hamiltonian (eta(X) = 1)
    FieldClass cx = classify_field(t, t.xi_field);
    CHECK(cx.kind == FieldKind::Cosymplectic);

    // X = d/dx1: cosymplectic with eta(X) = 0 but not Hamiltonian
    // (i_X omega = dx2 is closed with nonzero constant part, hence not exact)
    TrigField d1(3);
    d1.comp[0] = TrigPoly::constant(3, 1);
    FieldClass c1 = classify_field(t, d1);
    CHECK(c1.kind == FieldKind::Cosymplectic);

    // X = -cos(x1) d/dx2: Hamiltonian with f = sin x1 up to constant
    TrigField x(3);
    x.comp[1] = parse_trig_poly("-cos(x1)", 3);
    FieldClass ch = classify_field(t, x);
    REQUIRE(ch.kind == FieldKind::Hamiltonian);
    REQUIRE(ch.witness_f.has_value());
    TrigPoly diff = *ch.witness_f - parse_trig_poly("sin(x1)", 3);
    CHECK(diff.is_constant());

    // round trip: classify(hamiltonian_field(f)) = Hamiltonian with f up to
    // constant whenever xi(f) = 0
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 30; ++iter) {
        TrigPoly f = random_poly(3, rng);
        if (!t.xi_field.apply(f).is_zero()) continue;
        FieldClass k = classify_field(t, hamiltonian_field(t, f));
        REQUIRE(k.kind == FieldKind::Hamiltonian);
        CHECK((*k.witness_f - f).is_constant());
    }

    // constant horizontal fields are never Hamiltonian (b_1 > 1 cokernel)
    std::uniform_int_distribution<int> c(-3, 3);
    for (int iter = 0; iter < 20; ++iter) {
        TrigField v(3);
        v.comp[0] = TrigPoly::constant(3, c(rng));
        v.comp[1] = TrigPoly::constant(3, c(rng));
        if (v.is_zero()) continue;
        FieldClass k = classify_field(t, v);
        CHECK(k.kind == FieldKind::Cosymplectic);
    }

    // a field that moves eta: X = sin(x1) d/dx3 has L_X eta = cos x1 dx1 != 0
    TrigField bad(3);
    bad.comp[2] = parse_trig_poly("sin(x1)", 3);
    CHECK(classify_field(t, bad).kind == FieldKind::None);

    // weakly cosymplectic with genuine h: X = sin(x3) d/dx1
    // L_X eta = 0; L_X omega = d(sin x3 dx2) = cos x3 dx3 ^ dx2 = -dh ^ eta
    // with dh = cos x3 dx2 unsolvable... h must satisfy -dh ^ dx3 = -cos x3 dx2 ^ dx3
    // dh = cos x3 dx2 has no trig-poly solution, so expect none; use instead
    // X = sin(x3) d/dx1 - check the solver verdict matches a hand solve
    FieldClass w = classify_field(t, [&] {
        TrigField v(3);
        v.comp[0] = parse_trig_poly("sin(x3)", 3);
        return v;
    }());
    CHECK(w.kind == FieldKind::None);
}

TEST_CASE("weakly Hamiltonian fields exist") {
    TorusModel t = t3_model();
    // f = sin(x3) sin(x1): X_f is weakly Hamiltonian with xi(f) != 0
    TrigPoly f = parse_trig_poly("sin(x3)", 3) * parse_trig_poly("sin(x1)", 3);
    TrigField xf = hamiltonian_field(t, f);
    CHECK(!t.xi_field.apply(f).is_zero());
    FieldClass k = classify_field(t, xf);
    // X_f is weakly cosymplectic with h = xi(f); it may or may not be
    // strictly cosymplectic, but must not be "none"
    CHECK(k.kind != FieldKind::None);
}

TEST_CASE("Albert identities on worked examples") {
    TorusModel t = t3_model();

    // Z = d/dx1, f = sin x2: [Z, X_f] = 0 = X_{Z(f)}
    TrigField z(3);
    z.comp[0] = TrigPoly::constant(3, 1);
    auto rep = albert_identities(t, z, parse_trig_poly("sin(x2)", 3));
    CHECK(rep.z_weakly_cosymplectic);
    CHECK(rep.reeb_bracket_ok);
    CHECK(rep.bracket_hamiltonian_ok);
    CHECK(rep.witness_formula_ok);
    REQUIRE(rep.cosymplectic_pair_ok.has_value());
    CHECK(*rep.cosymplectic_pair_ok);

    // Z = xi with xi(f) = 0
    auto rep2 = albert_identities(t, t.xi_field, parse_trig_poly("cos(x1+x2)", 3));
    CHECK(rep2.all());

    // Z not weakly cosymplectic is rejected
    TrigField bad(3);
    bad.comp[2] = parse_trig_poly("sin(x1)", 3);
    CHECK_THROWS_AS(albert_identities(t, bad, parse_trig_poly("sin(x1)", 3)),
                    std::invalid_argument);
}

TEST_CASE("bracket of two cosymplectic fields, degenerate constant case") {
    // X = d/dx1, Y = d/dx2 are cosymplectic with [X, Y] = 0 and
    // -omega(X, Y) = -1 a constant, whose Hamiltonian field is zero: the
    // bracket-is-Hamiltonian statement holds degenerately.
    TorusModel t = t3_model();
    TrigField x(3), y(3);
    x.comp[0] = TrigPoly::constant(3, 1);
    y.comp[1] = TrigPoly::constant(3, 1);
    CHECK(classify_field(t, x).kind == FieldKind::Cosymplectic);
    CHECK(classify_field(t, y).kind == FieldKind::Cosymplectic);
    CHECK(field_bracket(x, y).is_zero());
    TrigPoly ham(3);
    for (const auto& [mask, c] : t.omega.terms()) {
        int i = std::countr_zero(mask);
        int j = std::countr_zero(mask & (mask - 1));
        ham = ham + (-c) * (x.comp[i] * y.comp[j] - x.comp[j] * y.comp[i]);
    }
    CHECK(ham == TrigPoly::constant(3, -1));
    CHECK(hamiltonian_field(t, ham).is_zero());
    CHECK(t.xi_field.apply(ham).is_zero());
}

TEST_CASE("Poisson properties on random inputs") {
    std::mt19937_64 rng(20240101);
    for (auto& t : {t3_model(), t5_model()}) {
        for (int iter = 0; iter < 25; ++iter) {
            TrigPoly f = random_poly(t.m, rng, 2);
            TrigPoly g = random_poly(t.m, rng, 2);
            TrigPoly h = random_poly(t.m, rng, 1);

            // additivity
            CHECK(poisson(t, f + g, h) == poisson(t, f, h) + poisson(t, g, h));
            // antisymmetry (and the -omega route inside poisson())
            CHECK(poisson(t, f, g) == -poisson(t, g, f));
            // Leibniz
            CHECK(poisson(t, f, g * h) == poisson(t, f, g) * h + g * poisson(t, f, h));
            // Jacobi
            TrigPoly jac = poisson(t, poisson(t, f, g), h) + poisson(t, poisson(t, g, h), f) +
                           poisson(t, poisson(t, h, f), g);
            CHECK(jac.is_zero());
            // morphism: [X_f, X_g] = X_{{f,g}}
            TrigField lhs = field_bracket(hamiltonian_field(t, f), hamiltonian_field(t, g));
            TrigField rhs = hamiltonian_field(t, poisson(t, f, g));
            CHECK(lhs == rhs);
            // the xi-invariant functions form a subalgebra
            if (t.xi_field.apply(f).is_zero() && t.xi_field.apply(g).is_zero())
                CHECK(t.xi_field.apply(poisson(t, f, g)).is_zero());
        }
    }
}

TEST_CASE("exactness criterion matches termwise integration") {
    std::mt19937_64 rng(909);
    TorusModel t = t3_model();
    for (int iter = 0; iter < 40; ++iter) {
        TrigPoly f = random_poly(3, rng);
        TrigForm df = trig_d(f);
        // d f is closed and has vanishing zero-frequency part
        CHECK(trig_d(df).is_zero());
        for (const auto& [mask, poly] : df.coeffs) CHECK(poly.constant_part() == 0);
    }
    // dx2 is closed, nonzero constant part, not exact: classify says so via
    // the d/dx1 example elsewhere; here check d applied to nothing hits it
    (void)t;
}
