#pragma once

#include <cosy/kform.hpp>
#include <cosy/lie_model.hpp>

#include <bit>

namespace cosy {

/// d of a basis covector: d e^k = -sum_{i<j} c^k_ij e^i ^ e^j, the
/// Chevalley-Eilenberg differential with the convention
/// (d a)(X, Y) = -a([X, Y]) on invariant 1-forms.
inline KForm ce_d_basis_covector(const LieModel& L, int k) {
    KForm r(L.dim, 2);
    for (const auto& [ij, v] : L.brackets.entries()) {
        auto [i, j] = ij;
        if (v[k] == 0) continue;
        r.add_term((1u << i) | (1u << j), -v[k]);
    }
    return r;
}

/// Chevalley-Eilenberg differential, extended to all degrees as a +1
/// antiderivation. d . d = 0 exactly when the Jacobi identity holds.
inline KForm ce_d(const LieModel& L, const KForm& a) {
    if (a.ambient_dim() != L.dim) throw std::invalid_argument("form over wrong model");
    KForm r(L.dim, a.degree() + 1);
    for (const auto& [mask, c] : a.terms()) {
        // d(e^{k_1}^...^e^{k_p}) = sum_a (-1)^{a-1} d(e^{k_a}) ^ e^{rest};
        // the 2-form d(e^{k_a}) commutes past the leading 1-forms.
        std::uint32_t rest = mask;
        int pos = 0;
        while (rest) {
            int k = std::countr_zero(rest);
            rest &= rest - 1;
            KForm dk = ce_d_basis_covector(L, k);
            if (!dk.is_zero()) {
                KForm tail(L.dim, a.degree() - 1);
                tail.add_term(mask & ~(1u << k), (pos % 2 == 0) ? c : -c);
                r = r + wedge(dk, tail);
            }
            ++pos;
        }
    }
    return r;
}

/// Lie derivative of an invariant form along an invariant field: the Cartan
/// formula L_X = i_X d + d i_X (the d i_X term drops on 0-forms).
inline KForm lie_derivative(const LieModel& L, const Vec& x, const KForm& a) {
    KForm r = contract(x, ce_d(L, a));
    if (a.degree() >= 1) r = r + ce_d(L, contract(x, a));
    return r;
}

/// Lie derivative of a vector: [X, Y].
inline Vec lie_derivative(const LieModel& L, const Vec& x, const Vec& y) {
    return L.bracket(x, y);
}

/// Lie derivative of a (1,1)-tensor: (L_X T)(Y) = [X, TY] - T[X, Y],
/// i.e. ad_X T - T ad_X on invariant data.
inline Mat lie_derivative(const LieModel& L, const Vec& x, const Mat& t) {
    Mat adx = L.ad(x);
    return adx * t - t * adx;
}

/// Nijenhuis torsion N_A(X, Y) = A^2 [X,Y] - A([AX,Y] + [X,AY]) + [AX,AY],
/// tabulated on basis pairs.
inline PairTable nijenhuis(const LieModel& L, const Mat& a) {
    PairTable n(L.dim);
    Mat a2 = a * a;
    for (int i = 0; i < L.dim; ++i) {
        Vec ei = zero_vec(L.dim);
        ei[i] = 1;
        Vec aei = a.apply(ei);
        for (int j = i + 1; j < L.dim; ++j) {
            Vec ej = zero_vec(L.dim);
            ej[j] = 1;
            Vec aej = a.apply(ej);
            Vec val = a2.apply(L.bracket_basis(i, j)) -
                      a.apply(L.bracket(aei, ej) + L.bracket(ei, aej)) + L.bracket(aei, aej);
            n.set(i, j, std::move(val));
        }
    }
    return n;
}

/// Levi-Civita connection of an invariant metric via the Koszul formula
/// 2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
inline Connection levi_civita(const LieModel& L, const Metric& g) {
    const int n = L.dim;
    Mat ginv = *inverse(g.g);
    Connection conn(n);
    for (int i = 0; i < n; ++i) {
        Vec ei = zero_vec(n);
        ei[i] = 1;
        for (int j = 0; j < n; ++j) {
            Vec ej = zero_vec(n);
            ej[j] = 1;
            Vec rhs(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) {
                Vec ek = zero_vec(n);
                ek[k] = 1;
                rhs[k] = g(L.bracket_basis(i, j), ek) - g(L.bracket_basis(j, k), ei) +
                         g(L.bracket_basis(k, i), ej);
            }
            conn.gamma[i][j] = Rational(1, 2) * ginv.apply(rhs);
        }
    }
    return conn;
}

/// Invariant Killing condition: g([X, e_i], e_j) + g(e_i, [X, e_j]) = 0.
inline bool is_killing(const LieModel& L, const Metric& g, const Vec& x) {
    for (int i = 0; i < L.dim; ++i) {
        Vec ei = zero_vec(L.dim);
        ei[i] = 1;
        for (int j = i; j < L.dim; ++j) {
            Vec ej = zero_vec(L.dim);
            ej[j] = 1;
            if (g(L.bracket(x, ei), ej) + g(ei, L.bracket(x, ej)) != 0) return false;
        }
    }
    return true;
}

}  // namespace cosy
