#pragma once

#include <cosy/acms.hpp>

#include <random>

namespace cosy {
namespace models {

/// Standard structure on the abelian model of T^{2n+1}: eta = e^{2n+1},
/// omega = e^12 + e^34 + ..., phi the block rotation with g(phi e_{2k-1}, e_{2k}) = 1.
inline ACMStructure torus_standard(int dim) {
    if (dim % 2 == 0 || dim < 3) throw std::invalid_argument("odd dim >= 3 required");
    LieModel L(dim, "T^" + std::to_string(dim));
    KForm eta = KForm::basis(dim, {dim - 1});
    Vec xi = zero_vec(dim);
    xi[dim - 1] = 1;
    Mat phi(dim, dim);
    for (int k = 0; k + 1 < dim; k += 2) {
        phi(k + 1, k) = 1;   // phi e_{2k-1} = e_{2k}
        phi(k, k + 1) = -1;  // phi e_{2k} = -e_{2k-1}
    }
    return ACMStructure(std::move(L), std::move(eta), std::move(xi), std::move(phi),
                        Metric::identity(dim));
}

inline ACMStructure t3() { return torus_standard(3); }
inline ACMStructure t5() { return torus_standard(5); }
inline ACMStructure t7() { return torus_standard(7); }

/// The Kodaira-Thurston algebra: nilpotent, dim 4, [e_1, e_2] = -e_4,
/// with the almost Kaehler data tau = e^14 + e^23, h = Id.
inline AlmostKaehler kt_almost_kaehler() {
    LieModel L(4, "KT");
    Vec b = zero_vec(4);
    b[3] = -1;
    L.set_bracket(0, 1, std::move(b));
    KForm tau = KForm::basis(4, {0, 3}) + KForm::basis(4, {1, 2});
    // J from tau(X, Y) = h(JX, Y): J e_1 = e_4, J e_4 = -e_1, J e_2 = e_3, J e_3 = -e_2
    Mat j(4, 4);
    j(3, 0) = 1;
    j(0, 3) = -1;
    j(2, 1) = 1;
    j(1, 2) = -1;
    return AlmostKaehler{std::move(L), std::move(tau), Metric::identity(4), std::move(j)};
}

inline LieModel kt_algebra() { return kt_almost_kaehler().model; }

/// KT x S^1: the dim-5 K-cosymplectic, non-coKaehler standard example.
inline ACMStructure kt_s1() { return product_with_circle(kt_almost_kaehler()); }

/// Heisenberg algebra [e_1, e_2] = -e_3 with the standard Sasakian
/// structure (omega = d eta = e^12). Exercises the contact-metric branch.
inline ACMStructure heisenberg() {
    LieModel L(3, "Heisenberg");
    Vec b = zero_vec(3);
    b[2] = -1;
    L.set_bracket(0, 1, std::move(b));
    KForm eta = KForm::basis(3, {2});
    Vec xi = zero_vec(3);
    xi[2] = 1;
    Mat phi(3, 3);
    phi(1, 0) = 1;
    phi(0, 1) = -1;
    return ACMStructure(std::move(L), std::move(eta), std::move(xi), std::move(phi),
                        Metric::identity(3));
}

/// Nilpotent dim-3 model [e_1, e_3] = e_2 carrying a cosymplectic structure
/// whose Reeb field is not Killing (N3 != 0): cosymplectic, not
/// K-cosymplectic. Distinguishes the Levi-Civita identity
/// nabla xi = -(1/2) phi . N3 from the trivial parallel case.
inline ACMStructure nil3_cosymplectic_non_k() {
    LieModel L(3, "nil3-nonK");
    Vec b = zero_vec(3);
    b[1] = 1;
    L.set_bracket(0, 2, std::move(b));
    KForm eta = KForm::basis(3, {2});
    Vec xi = zero_vec(3);
    xi[2] = 1;
    Mat phi(3, 3);
    phi(1, 0) = 1;
    phi(0, 1) = -1;
    return ACMStructure(std::move(L), std::move(eta), std::move(xi), std::move(phi),
                        Metric::identity(3));
}

/// Basis change by an invertible rational matrix p whose columns are the new
/// basis vectors in old coordinates. All tensors transform covariantly.
inline ACMStructure change_basis(const ACMStructure& s, const Mat& p) {
    auto pinv_opt = inverse(p);
    if (!pinv_opt) throw std::invalid_argument("basis change matrix is singular");
    const Mat& pinv = *pinv_opt;
    const int d = s.dim();
    LieModel L(d, s.model.name + "'");
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            L.set_bracket(i, j, pinv.apply(s.model.bracket(p.col(i), p.col(j))));
    KForm eta(d, 1);
    for (int i = 0; i < d; ++i) eta.add_term(1u << i, eval1(s.eta, p.col(i)));
    Vec xi = pinv.apply(s.xi);
    Mat phi = pinv * s.phi * p;
    Mat g = p.transpose() * s.g.g * p;
    return ACMStructure(std::move(L), std::move(eta), std::move(xi), std::move(phi),
                        Metric(std::move(g)));
}

/// Direct sum of almost Kaehler blocks (basis-aligned).
inline AlmostKaehler ak_sum(const AlmostKaehler& a, const AlmostKaehler& b) {
    const int da = a.model.dim, db = b.model.dim, d = da + db;
    LieModel L(d, a.model.name + "+" + b.model.name);
    for (const auto& [ij, v] : a.model.brackets.entries()) {
        Vec w = zero_vec(d);
        for (int t = 0; t < da; ++t) w[t] = v[t];
        L.set_bracket(ij.first, ij.second, std::move(w));
    }
    for (const auto& [ij, v] : b.model.brackets.entries()) {
        Vec w = zero_vec(d);
        for (int t = 0; t < db; ++t) w[da + t] = v[t];
        L.set_bracket(da + ij.first, da + ij.second, std::move(w));
    }
    KForm tau(d, 2);
    for (const auto& [m, c] : a.tau.terms()) tau.add_term(m, c);
    for (const auto& [m, c] : b.tau.terms()) tau.add_term(m << da, c);
    Mat h(d, d), j(d, d);
    for (int r = 0; r < da; ++r)
        for (int c = 0; c < da; ++c) {
            h(r, c) = a.h.g(r, c);
            j(r, c) = a.j(r, c);
        }
    for (int r = 0; r < db; ++r)
        for (int c = 0; c < db; ++c) {
            h(da + r, da + c) = b.h.g(r, c);
            j(da + r, da + c) = b.j(r, c);
        }
    return AlmostKaehler{std::move(L), std::move(tau), Metric(std::move(h)), std::move(j)};
}

/// Flat R^2 block with tau = e^12.
inline AlmostKaehler r2_block() {
    LieModel L(2, "R2");
    KForm tau = KForm::basis(2, {0, 1});
    Mat j(2, 2);
    j(1, 0) = 1;
    j(0, 1) = -1;
    return AlmostKaehler{std::move(L), std::move(tau), Metric::identity(2), std::move(j)};
}

/// Random small unimodular matrix: a short product of elementary shears.
/// Keeps structure constants small under conjugation.
inline Mat random_unimodular(int d, std::mt19937_64& rng) {
    Mat p = Mat::identity(d);
    std::uniform_int_distribution<int> idx(0, d - 1);
    std::uniform_int_distribution<int> val(-2, 2);
    int steps = 2 + static_cast<int>(rng() % 4);
    for (int s = 0; s < steps; ++s) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        Mat e = Mat::identity(d);
        int v = val(rng);
        if (v == 0) v = 1;
        e(i, j) = v;
        p = p * e;
    }
    return p;
}

/// Random nilpotent model with valid K-cosymplectic data: a random direct
/// sum of flat and KT-type almost Kaehler blocks, crossed with S^1 and put
/// in general position by a random unimodular change of basis.
inline ACMStructure random_k_cosymplectic(int max_dim, std::mt19937_64& rng) {
    int blocks2n = std::max(1, (max_dim - 1) / 2);  // number of 2-dim slots
    AlmostKaehler k = (rng() % 2 == 0 && blocks2n >= 2) ? kt_almost_kaehler() : r2_block();
    while (k.model.dim + 2 <= max_dim - 1) {
        switch (rng() % 3) {
            case 0:
                if (k.model.dim + 4 <= max_dim - 1) {
                    k = ak_sum(k, kt_almost_kaehler());
                    break;
                }
                [[fallthrough]];
            default:
                k = ak_sum(k, r2_block());
        }
        if (rng() % 2 == 0) break;
    }
    ACMStructure s = product_with_circle(k);
    return change_basis(s, random_unimodular(s.dim(), rng));
}

}  // namespace models
}  // namespace cosy
