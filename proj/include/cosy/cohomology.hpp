#pragma once

#include <cosy/acms.hpp>
#include <cosy/lie_calculus.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cosy {

/// A finite cochain complex of invariant forms: per-degree ordered bases and
/// exact differential matrices. Consecutive differentials are checked to
/// compose to zero at construction.
struct Complex {
    int dim = 0;                              // ambient model dimension
    std::vector<std::vector<KForm>> basis;    // basis[p]: ordered p-form basis
    std::vector<Mat> d;                       // d[p]: basis[p] -> basis[p+1]

    int degrees() const { return static_cast<int>(basis.size()); }

    void check_dd_zero() const {
        for (std::size_t p = 0; p + 1 < d.size(); ++p) {
            if (d[p].cols() == 0 || d[p + 1].cols() == 0) continue;
            if (!(d[p + 1] * d[p]).is_zero())
                throw std::logic_error("differentials do not compose to zero");
        }
    }

    std::vector<int> betti() const {
        std::vector<int> b;
        for (int p = 0; p < degrees(); ++p) {
            int dim_p = static_cast<int>(basis[p].size());
            int rank_dp = (p < static_cast<int>(d.size())) ? rank(d[p]) : 0;
            int rank_prev = (p > 0) ? rank(d[p - 1]) : 0;
            b.push_back(dim_p - rank_dp - rank_prev);
        }
        return b;
    }
};

/// Full invariant (Chevalley-Eilenberg) complex of a model.
inline Complex invariant_complex(const LieModel& L) {
    Complex c;
    c.dim = L.dim;
    c.basis.resize(L.dim + 1);
    std::vector<std::vector<std::uint32_t>> masks(L.dim + 2);
    for (int p = 0; p <= L.dim; ++p) {
        masks[p] = basis_masks(L.dim, p);
        for (auto m : masks[p]) {
            KForm f(L.dim, p);
            f.add_term(m, 1);
            c.basis[p].push_back(std::move(f));
        }
    }
    masks[L.dim + 1] = {};
    for (int p = 0; p <= L.dim; ++p) {
        const auto& src = masks[p];
        const auto& dst = masks[p + 1];
        Mat m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
        for (std::size_t j = 0; j < src.size(); ++j) {
            KForm df = ce_d(L, c.basis[p][j]);
            for (std::size_t i = 0; i < dst.size(); ++i) m(static_cast<int>(i), static_cast<int>(j)) = df.coeff(dst[i]);
        }
        c.d.push_back(std::move(m));
    }
    c.check_dd_zero();
    return c;
}

/// Betti numbers of the invariant complex, b_p = dim ker d_p - rank d_{p-1}.
inline std::vector<int> betti(const LieModel& L) {
    auto rep = check_jacobi(L);
    if (!rep.ok)
        throw std::invalid_argument("Jacobi identity fails at triple (" +
                                    std::to_string(rep.triple[0] + 1) + "," +
                                    std::to_string(rep.triple[1] + 1) + "," +
                                    std::to_string(rep.triple[2] + 1) + ")");
    return invariant_complex(L).betti();
}

/// Basic subcomplex of the characteristic foliation: invariant forms with
/// i_xi a = 0 and i_xi da = 0, with the restricted differential expressed in
/// the computed kernel bases.
inline Complex basic_complex(const LieModel& L, const Vec& xi, const KForm& eta) {
    if (eval1(eta, xi) != 1) throw std::invalid_argument("eta(xi) != 1");
    if (!ce_d(L, eta).is_zero()) throw std::invalid_argument("eta not closed");

    Complex c;
    c.dim = L.dim;
    c.basis.resize(L.dim + 1);

    std::vector<std::vector<std::uint32_t>> masks(L.dim + 1);
    for (int p = 0; p <= L.dim; ++p) masks[p] = basis_masks(L.dim, p);

    for (int p = 0; p <= L.dim; ++p) {
        const auto& src = masks[p];
        const int cols = static_cast<int>(src.size());
        const int rows_c = (p >= 1) ? static_cast<int>(masks[p - 1].size()) : 0;
        const int rows_cd = static_cast<int>(masks[p].size());
        Mat sys(rows_c + rows_cd, cols);
        for (int j = 0; j < cols; ++j) {
            KForm f(L.dim, p);
            f.add_term(src[j], 1);
            KForm cf = contract(xi, f);
            KForm cdf = contract(xi, ce_d(L, f));
            if (p >= 1) {
                Vec v = form_coords(cf, masks[p - 1]);
                for (int i = 0; i < rows_c; ++i) sys(i, j) = v[i];
            }
            Vec w = form_coords(cdf, masks[p]);
            for (int i = 0; i < rows_cd; ++i) sys(rows_c + i, j) = w[i];
        }
        for (auto& v : kernel_basis(std::move(sys)))
            c.basis[p].push_back(form_from_coords(L.dim, p, src, v));
    }

    // restricted differential: d maps basics to basics; express images in
    // the computed kernel bases
    for (int p = 0; p <= L.dim; ++p) {
        const auto& dst_basis = (p + 1 <= L.dim) ? c.basis[p + 1] : std::vector<KForm>{};
        const auto& dst_masks = (p + 1 <= L.dim) ? masks[p + 1] : std::vector<std::uint32_t>{};
        Mat cols_mat(static_cast<int>(dst_masks.size()), static_cast<int>(dst_basis.size()));
        for (std::size_t j = 0; j < dst_basis.size(); ++j)
            cols_mat.set_col(static_cast<int>(j), form_coords(dst_basis[j], dst_masks));
        Mat dmat(static_cast<int>(dst_basis.size()), static_cast<int>(c.basis[p].size()));
        for (std::size_t j = 0; j < c.basis[p].size(); ++j) {
            KForm df = ce_d(L, c.basis[p][j]);
            if (dst_basis.empty()) {
                if (!df.is_zero()) throw std::logic_error("basic differential escapes top degree");
                continue;
            }
            auto x = solve(cols_mat, form_coords(df, dst_masks));
            if (!x) throw std::logic_error("differential of a basic form is not basic");
            dmat.set_col(static_cast<int>(j), *x);
        }
        c.d.push_back(std::move(dmat));
    }
    c.check_dd_zero();
    return c;
}

/// Betti numbers of the basic complex in degrees 0..2n. Verifies the
/// linear-level splitting dim O^p = dim O^p_hor + dim O^{p-1}_hor of
/// invariant forms and that basic cohomology vanishes in the top degree.
inline std::vector<int> basic_betti(const LieModel& L, const Vec& xi, const KForm& eta) {
    Complex bc = basic_complex(L, xi, eta);
    auto b = bc.betti();
    auto hor_dim = [&](int q) -> int {
        if (q < 0) return 0;
        if (q == 0) return 1;  // constants are horizontal
        auto masks = basis_masks(L.dim, q);
        auto dst = basis_masks(L.dim, q - 1);
        Mat m(static_cast<int>(dst.size()), static_cast<int>(masks.size()));
        for (std::size_t j = 0; j < masks.size(); ++j) {
            KForm f(L.dim, q);
            f.add_term(masks[j], 1);
            m.set_col(static_cast<int>(j), form_coords(contract(xi, f), dst));
        }
        return static_cast<int>(masks.size()) - rank(m);
    };
    for (int p = 1; p <= L.dim; ++p) {
        int full = static_cast<int>(basis_masks(L.dim, p).size());
        if (full != hor_dim(p) + hor_dim(p - 1))
            throw std::logic_error("horizontal splitting fails at the linear level");
    }
    if (b[L.dim] != 0) throw std::logic_error("basic cohomology nonzero above codimension");
    b.resize(L.dim);  // degrees 0..2n
    return b;
}

/// Cohomology of one degree of a complex: deterministic representatives of
/// H^p obtained by extending a basis of im d_{p-1} inside ker d_p by exact
/// column reduction (lexicographic pivot order).
struct DegreeCohomology {
    std::vector<KForm> reps;
    std::vector<KForm> image;  // basis of im d_{p-1}
};

inline DegreeCohomology degree_cohomology(const Complex& c, int p) {
    DegreeCohomology out;
    const int np = static_cast<int>(c.basis[p].size());
    if (np == 0) return out;

    auto to_form = [&](const Vec& coords) {
        KForm f = KForm::zero(c.dim, c.basis[p].empty() ? 0 : c.basis[p][0].degree());
        for (int i = 0; i < np; ++i)
            if (coords[i] != 0) f = f + coords[i] * c.basis[p][i];
        return f;
    };

    SpanBuilder span(np);
    if (p >= 1) {
        const Mat& dprev = c.d[p - 1];
        for (int j = 0; j < dprev.cols(); ++j) {
            Vec col = dprev.col(j);
            if (span.try_add(col)) out.image.push_back(to_form(col));
        }
    }
    for (const auto& k : kernel_basis(c.d[p]))
        if (span.try_add(k)) out.reps.push_back(to_form(k));
    return out;
}

/// Coordinates of the class [f] in the representative basis of H^p, solving
/// f = sum x_i rep_i + exact. Returns nullopt if f is not closed-in-span.
inline std::optional<Vec> class_coordinates(const Complex& c, int p, const DegreeCohomology& h,
                                            const KForm& f) {
    auto masks = basis_masks(c.dim, c.basis[p].empty() ? 0 : c.basis[p][0].degree());
    // express everything in ambient coordinates of degree p
    const int rows = static_cast<int>(masks.size());
    const int nreps = static_cast<int>(h.reps.size());
    const int nim = static_cast<int>(h.image.size());
    Mat sys(rows, nreps + nim);
    for (int j = 0; j < nreps; ++j) sys.set_col(j, form_coords(h.reps[j], masks));
    for (int j = 0; j < nim; ++j) sys.set_col(nreps + j, form_coords(h.image[j], masks));
    auto x = solve(sys, form_coords(f, masks));
    if (!x) return std::nullopt;
    Vec coords(static_cast<std::size_t>(nreps));
    for (int i = 0; i < nreps; ++i) coords[i] = (*x)[i];
    return coords;
}

/// The Lefschetz map with an explicit power: omega^q ^ (omega ^ i_xi a + eta ^ a).
/// The canonical map on degree p uses q = n - p. Metric-free: only the
/// cosymplectic pair data enters.
inline KForm lefschetz_apply_power(const CosymplecticPair& s, const KForm& a, int q) {
    if (q < 0) throw std::invalid_argument("negative omega power in Lefschetz map");
    KForm inner = wedge(s.eta, a);
    if (a.degree() >= 1)  // i_xi of a 0-form is zero by convention
        inner = inner + wedge(s.omega, contract(s.xi, a));
    return wedge(wedge_power(s.omega, q), inner);
}

inline KForm lefschetz_apply_power(const ACMStructure& s, const KForm& a, int q) {
    return lefschetz_apply_power(CosymplecticPair{s.model, s.eta, s.omega, s.xi}, a, q);
}

/// L(a) = omega^{n-p} ^ (omega ^ i_xi a + eta ^ a), degree p -> 2n+1-p.
/// Defined for 0 <= p <= n (the omega power is negative otherwise).
inline KForm lefschetz_map(const CosymplecticPair& s, const KForm& a) {
    const int p = a.degree();
    const int n = (s.model.dim - 1) / 2;
    if (p < 0 || p > n)
        throw std::invalid_argument("Lefschetz map degree out of range (0..n)");
    return lefschetz_apply_power(s, a, n - p);
}

inline KForm lefschetz_map(const ACMStructure& s, const KForm& a) {
    return lefschetz_map(CosymplecticPair{s.model, s.eta, s.omega, s.xi}, a);
}

struct LefschetzMapResult {
    int degree = 0;
    Mat matrix;             // induced map H^p -> H^{2n+1-p} in quotient bases
    int rank = 0;
    bool is_isomorphism = false;
    std::optional<KForm> kernel_rep;       // a closed form whose class maps to zero
    std::optional<KForm> image_primitive;  // exact primitive of its Lefschetz image
};

/// Induced Lefschetz maps H^p -> H^{2n+1-p} on invariant cohomology for
/// p = 0..n. For any degree where the map fails to be an isomorphism a
/// kernel class and the exact primitive of its image are produced.
inline std::vector<LefschetzMapResult> lefschetz_ranks(const CosymplecticPair& s) {
    const Complex c = invariant_complex(s.model);
    const int n = (s.model.dim - 1) / 2;
    const int dim = s.model.dim;
    std::vector<LefschetzMapResult> out;
    for (int p = 0; p <= n; ++p) {
        const int q = dim - p;  // target degree 2n+1-p
        DegreeCohomology hp = degree_cohomology(c, p);
        DegreeCohomology hq = degree_cohomology(c, q);
        LefschetzMapResult r;
        r.degree = p;
        r.matrix = Mat(static_cast<int>(hq.reps.size()), static_cast<int>(hp.reps.size()));
        for (std::size_t j = 0; j < hp.reps.size(); ++j) {
            KForm img = lefschetz_map(s, hp.reps[j]);
            if (!ce_d(s.model, img).is_zero())
                throw std::logic_error("Lefschetz image of a closed form is not closed");
            auto coords = class_coordinates(c, q, hq, img);
            if (!coords) throw std::logic_error("Lefschetz image escapes the invariant complex");
            r.matrix.set_col(static_cast<int>(j), *coords);
        }
        r.rank = rank(r.matrix);
        r.is_isomorphism = (r.rank == static_cast<int>(hp.reps.size()) &&
                            r.rank == static_cast<int>(hq.reps.size()));
        if (!r.is_isomorphism && !hp.reps.empty()) {
            auto ker = kernel_basis(r.matrix);
            if (!ker.empty()) {
                KForm kf = KForm::zero(dim, p);
                for (std::size_t i = 0; i < hp.reps.size(); ++i)
                    if (ker[0][i] != 0) kf = kf + ker[0][i] * hp.reps[i];
                r.kernel_rep = kf;
                // certify exactness of the image by producing a primitive
                KForm img = lefschetz_map(s, kf);
                auto src_masks = basis_masks(dim, q - 1);
                auto dst_masks = basis_masks(dim, q);
                Mat dmat(static_cast<int>(dst_masks.size()), static_cast<int>(src_masks.size()));
                for (std::size_t j = 0; j < src_masks.size(); ++j) {
                    KForm f(dim, q - 1);
                    f.add_term(src_masks[j], 1);
                    dmat.set_col(static_cast<int>(j), form_coords(ce_d(s.model, f), dst_masks));
                }
                auto prim = solve(dmat, form_coords(img, dst_masks));
                if (!prim) throw std::logic_error("Lefschetz kernel image is not exact");
                r.image_primitive = form_from_coords(dim, q - 1, src_masks, *prim);
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<LefschetzMapResult> lefschetz_ranks(const ACMStructure& s) {
    return lefschetz_ranks(CosymplecticPair{s.model, s.eta, s.omega, s.xi});
}

/// b_p(F) from the alternating-sum recursion b_p(F) = sum_i (-1)^i b_{p-i},
/// together with the duality check b_{2n-p}(F) = b_p(F). A failure marker is
/// returned when the input is not realizable (negative entry or broken
/// duality).
struct BasicRecursion {
    bool ok = true;
    std::vector<int> basic;
    std::string failure;
};

inline BasicRecursion basic_betti_from_betti(const std::vector<int>& b) {
    BasicRecursion out;
    if (b.empty() || b[0] != 1) {
        out.ok = false;
        out.failure = "b_0 != 1";
        return out;
    }
    const int top = static_cast<int>(b.size()) - 1;  // 2n+1
    if (top % 2 == 0 || top < 1) {
        out.ok = false;
        out.failure = "betti vector length is not even (dim not odd)";
        return out;
    }
    const int two_n = top - 1;
    for (int p = 0; p <= two_n; ++p) {
        long v = 0;
        for (int i = 0; i <= p; ++i) v += (i % 2 == 0 ? 1 : -1) * b[p - i];
        if (v < 0) {
            out.ok = false;
            out.failure = "recursion yields b_" + std::to_string(p) + "(F) = " + std::to_string(v);
            out.basic.push_back(static_cast<int>(v));
            return out;
        }
        out.basic.push_back(static_cast<int>(v));
    }
    for (int p = 0; p <= two_n; ++p)
        if (out.basic[p] != out.basic[two_n - p]) {
            out.ok = false;
            out.failure = "basic duality fails at degree " + std::to_string(p);
            return out;
        }
    // consistency at the top: b_{2n+1} = b_{2n}(F) must close the recursion
    if (out.basic[two_n] != b[top]) {
        out.ok = false;
        out.failure = "top-degree consistency fails";
    }
    return out;
}

/// Splitting of invariant cohomology: b_p = b_p(F) + b_{p-1}(F) for all p,
/// with [a] -> [eta ^ a] injective from basic classes into H^{p+1}.
inline bool verify_splitting(const LieModel& L, const Vec& xi, const KForm& eta) {
    Complex full = invariant_complex(L);
    Complex bc = basic_complex(L, xi, eta);
    auto b = full.betti();
    auto bf = bc.betti();
    for (int p = 0; p <= L.dim; ++p) {
        // bf[dim] = 0: basic cohomology vanishes in the top degree
        int expect = bf[p] + (p >= 1 ? bf[p - 1] : 0);
        if (b[p] != expect) return false;
    }
    // injectivity of eta ^ - on basic classes
    for (int p = 0; p + 1 <= L.dim; ++p) {
        DegreeCohomology hb = degree_cohomology(bc, p);
        if (hb.reps.empty()) continue;
        auto masks = basis_masks(L.dim, p + 1);
        SpanBuilder span(static_cast<int>(masks.size()));
        DegreeCohomology hfull = degree_cohomology(full, p + 1);
        for (const auto& im : hfull.image) span.try_add(form_coords(im, masks));
        for (const auto& rep : hb.reps) {
            if (!span.try_add(form_coords(wedge(eta, rep), masks))) return false;
        }
    }
    return true;
}

/// Nondegeneracy of the Poincare-type pairing on basic cohomology,
/// Psi([a], [t]) = coefficient of the top form in a ^ eta ^ t.
inline bool pairing_check(const LieModel& L, const Vec& xi, const KForm& eta) {
    Complex bc = basic_complex(L, xi, eta);
    const int two_n = L.dim - 1;
    const std::uint32_t top_mask = (L.dim >= 31) ? 0 : ((1u << L.dim) - 1);
    for (int p = 0; p <= two_n; ++p) {
        DegreeCohomology hp = degree_cohomology(bc, p);
        DegreeCohomology hq = degree_cohomology(bc, two_n - p);
        if (hp.reps.size() != hq.reps.size()) return false;
        const int k = static_cast<int>(hp.reps.size());
        if (k == 0) continue;
        Mat pairing(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                pairing(i, j) = wedge(hp.reps[i], wedge(eta, hq.reps[j])).coeff(top_mask);
        if (rank(pairing) != k) return false;
    }
    return true;
}

/// [omega]^p nontrivial in basic cohomology for 1 <= p <= n: omega^p is
/// basic, closed, and not in the image of the basic differential.
inline bool omega_power_check(const CosymplecticPair& s) {
    Complex bc = basic_complex(s.model, s.xi, s.eta);
    const int n = (s.model.dim - 1) / 2;
    for (int p = 1; p <= n; ++p) {
        KForm op = wedge_power(s.omega, p);
        if (!contract(s.xi, op).is_zero()) return false;
        if (!ce_d(s.model, op).is_zero()) return false;
        if (op.is_zero()) return false;
        auto masks = basis_masks(s.model.dim, 2 * p);
        SpanBuilder span(static_cast<int>(masks.size()));
        DegreeCohomology h = degree_cohomology(bc, 2 * p);
        for (const auto& im : h.image) span.try_add(form_coords(im, masks));
        if (span.contains(form_coords(op, masks))) return false;
    }
    return true;
}

inline bool omega_power_check(const ACMStructure& s) {
    return omega_power_check(CosymplecticPair{s.model, s.eta, s.omega, s.xi});
}

/// Aggregated cohomology verdicts for reports.
struct CohomologyReport {
    std::vector<int> betti;
    std::vector<int> basic;
    bool splitting_ok = false;
    bool recursion_ok = false;
    bool pairing_nondegenerate = false;
    bool omega_powers_nontrivial = false;
    std::vector<LefschetzMapResult> lefschetz;
    bool lefschetz_all_iso = false;
};

inline CohomologyReport cohomology_report(const CosymplecticPair& s, bool with_lefschetz) {
    CohomologyReport rep;
    rep.betti = betti(s.model);
    rep.basic = basic_betti(s.model, s.xi, s.eta);
    rep.splitting_ok = verify_splitting(s.model, s.xi, s.eta);
    auto rec = basic_betti_from_betti(rep.betti);
    rep.recursion_ok = rec.ok && rec.basic == rep.basic;
    rep.pairing_nondegenerate = pairing_check(s.model, s.xi, s.eta);
    rep.omega_powers_nontrivial = omega_power_check(s);
    if (with_lefschetz) {
        rep.lefschetz = lefschetz_ranks(s);
        rep.lefschetz_all_iso = true;
        for (const auto& r : rep.lefschetz)
            if (!r.is_isomorphism) rep.lefschetz_all_iso = false;
    }
    return rep;
}

inline CohomologyReport cohomology_report(const ACMStructure& s, bool with_lefschetz) {
    return cohomology_report(CosymplecticPair{s.model, s.eta, s.omega, s.xi}, with_lefschetz);
}

}  // namespace cosy
