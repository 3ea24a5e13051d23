#pragma once

#include <cosy/linalg.hpp>
#include <cosy/rational.hpp>

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cosy {

/// Exterior form of homogeneous degree over an n-dimensional rational vector
/// space. Index sets are stored as bitmasks of the (0-based) basis indices,
/// which keeps every key strictly increasing and makes the wedge sign a
/// crossing count. Only nonzero coefficients are stored.
class KForm {
public:
    KForm() = default;
    KForm(int ambient_dim, int degree) : dim_(ambient_dim), degree_(degree) {
        if (ambient_dim < 0 || ambient_dim > 31) throw std::invalid_argument("ambient dim out of range");
        if (degree < 0) throw std::invalid_argument("negative form degree");
    }

    /// e^{i1} ^ ... ^ e^{ip} for 0-based, strictly increasing indices.
    static KForm basis(int ambient_dim, std::initializer_list<int> idx) {
        KForm f(ambient_dim, static_cast<int>(idx.size()));
        std::uint32_t mask = 0;
        int prev = -1;
        for (int i : idx) {
            if (i <= prev || i >= ambient_dim) throw std::invalid_argument("bad basis index tuple");
            mask |= 1u << i;
            prev = i;
        }
        f.add_term(mask, 1);
        return f;
    }

    static KForm zero(int ambient_dim, int degree) { return KForm(ambient_dim, degree); }

    int ambient_dim() const { return dim_; }
    int degree() const { return degree_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<std::uint32_t, Rational>& terms() const { return coeffs_; }

    Rational coeff(std::uint32_t mask) const {
        auto it = coeffs_.find(mask);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    void add_term(std::uint32_t mask, const Rational& c) {
        if (c == 0) return;
        if (std::popcount(mask) != degree_) throw std::invalid_argument("term degree mismatch");
        if (degree_ > dim_) return;  // above top degree everything is zero
        auto [it, inserted] = coeffs_.emplace(mask, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    bool operator==(const KForm& o) const {
        return dim_ == o.dim_ && degree_ == o.degree_ && coeffs_ == o.coeffs_;
    }

    friend KForm operator+(const KForm& a, const KForm& b) {
        a.require_compatible(b);
        KForm r = a;
        for (const auto& [m, c] : b.coeffs_) r.add_term(m, c);
        return r;
    }

    friend KForm operator-(const KForm& a, const KForm& b) {
        a.require_compatible(b);
        KForm r = a;
        for (const auto& [m, c] : b.coeffs_) r.add_term(m, -c);
        return r;
    }

    friend KForm operator*(const Rational& c, const KForm& a) {
        KForm r(a.dim_, a.degree_);
        if (c == 0) return r;
        for (const auto& [m, x] : a.coeffs_) r.coeffs_.emplace(m, c * x);
        return r;
    }

    friend KForm operator-(const KForm& a) { return Rational(-1) * a; }

    std::string str() const;

private:
    void require_compatible(const KForm& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("ambient dimension mismatch");
        if (degree_ != o.degree_) throw std::invalid_argument("form degree mismatch");
    }

    int dim_ = 0;
    int degree_ = 0;
    std::map<std::uint32_t, Rational> coeffs_;
};

namespace detail {
// Crossings made when merging index set b past index set a: pairs (i in a,
// j in b) with i > j.
inline int merge_sign(std::uint32_t a, std::uint32_t b) {
    int crossings = 0;
    while (b) {
        int j = std::countr_zero(b);
        crossings += std::popcount(a >> (j + 1));
        b &= b - 1;
    }
    return (crossings % 2 == 0) ? 1 : -1;
}
}  // namespace detail

inline KForm wedge(const KForm& a, const KForm& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
    KForm r(a.ambient_dim(), a.degree() + b.degree());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            if (ma & mb) continue;
            r.add_term(ma | mb, Rational(detail::merge_sign(ma, mb)) * ca * cb);
        }
    return r;
}

inline KForm wedge_power(const KForm& a, int k) {
    KForm r = KForm::basis(a.ambient_dim(), {});  // the constant 1
    for (int i = 0; i < k; ++i) r = wedge(r, a);
    return r;
}

/// Interior product i_v a. On 0-forms returns the zero form (convention).
inline KForm contract(const Vec& v, const KForm& a) {
    if (static_cast<int>(v.size()) != a.ambient_dim())
        throw std::invalid_argument("ambient dimension mismatch");
    if (a.degree() == 0) return KForm::zero(a.ambient_dim(), 0);
    KForm r(a.ambient_dim(), a.degree() - 1);
    for (const auto& [mask, c] : a.terms()) {
        std::uint32_t rest = mask;
        while (rest) {
            int i = std::countr_zero(rest);
            rest &= rest - 1;
            if (v[i] == 0) continue;
            int sign = (std::popcount(mask & ((1u << i) - 1)) % 2 == 0) ? 1 : -1;
            r.add_term(mask & ~(1u << i), Rational(sign) * v[i] * c);
        }
    }
    return r;
}

/// a(v_1, ..., v_p) by determinant expansion over the stored index sets.
inline Rational eval(const KForm& a, const std::vector<Vec>& vs) {
    if (static_cast<int>(vs.size()) != a.degree()) throw std::invalid_argument("wrong number of arguments");
    if (a.degree() == 0) return a.coeff(0);
    const int p = a.degree();
    Rational total = 0;
    for (const auto& [mask, c] : a.terms()) {
        std::vector<int> idx;
        std::uint32_t rest = mask;
        while (rest) {
            idx.push_back(std::countr_zero(rest));
            rest &= rest - 1;
        }
        Mat m(p, p);
        for (int r = 0; r < p; ++r)
            for (int s = 0; s < p; ++s) m(r, s) = vs[s][idx[r]];
        total += c * det(std::move(m));
    }
    return total;
}

/// All degree-p index masks over n indices, ascending by numeric mask value.
/// This is the fixed basis enumeration used for matrices of operators.
inline std::vector<std::uint32_t> basis_masks(int n, int p) {
    std::vector<std::uint32_t> out;
    if (p < 0 || p > n) return out;
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        if (std::popcount(m) == p) out.push_back(m);
    return out;
}

inline Vec form_coords(const KForm& f, const std::vector<std::uint32_t>& basis) {
    Vec v(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) v[i] = f.coeff(basis[i]);
    return v;
}

inline KForm form_from_coords(int n, int p, const std::vector<std::uint32_t>& basis, const Vec& v) {
    KForm f(n, p);
    for (std::size_t i = 0; i < basis.size(); ++i) f.add_term(basis[i], v[i]);
    return f;
}

inline std::string KForm::str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mask, c] : coeffs_) {
        std::string term;
        if (c == 1 && mask != 0)
            term = "";
        else if (c == -1 && mask != 0)
            term = "-";
        else
            term = to_string(c) + (mask ? "*" : "");
        if (mask) {
            term += "e^{";
            std::uint32_t rest = mask;
            while (rest) {
                int i = std::countr_zero(rest);
                rest &= rest - 1;
                term += std::to_string(i + 1);
            }
            term += "}";
        }
        if (!first && term[0] != '-') out += "+";
        out += term;
        first = false;
    }
    return out;
}

/// Rank-one endomorphism eta (x) xi: X -> eta(X) xi, as a matrix.
inline Mat tensor_product(const Vec& xi, const KForm& eta) {
    const int n = static_cast<int>(xi.size());
    Mat m(n, n);
    for (int j = 0; j < n; ++j) {
        Rational ej = eta.coeff(1u << j);
        if (ej == 0) continue;
        for (int i = 0; i < n; ++i) m(i, j) = xi[i] * ej;
    }
    return m;
}

inline Rational eval1(const KForm& a, const Vec& v) { return eval(a, {v}); }

inline KForm one_form(const Vec& coeffs) {
    KForm f(static_cast<int>(coeffs.size()), 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) f.add_term(1u << i, coeffs[i]);
    return f;
}

inline Vec one_form_coords(const KForm& f) {
    Vec v(static_cast<std::size_t>(f.ambient_dim()));
    for (int i = 0; i < f.ambient_dim(); ++i) v[i] = f.coeff(1u << i);
    return v;
}

/// 2-form with omega(e_i, e_j) = m(i, j) for an antisymmetric matrix m.
inline KForm two_form_from_matrix(const Mat& m) {
    KForm f(m.rows(), 2);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j) f.add_term((1u << i) | (1u << j), m(i, j));
    return f;
}

/// Matrix of a 2-form, m(i, j) = omega(e_i, e_j).
inline Mat two_form_matrix(const KForm& f) {
    Mat m(f.ambient_dim(), f.ambient_dim());
    for (const auto& [mask, c] : f.terms()) {
        int i = std::countr_zero(mask);
        int j = std::countr_zero(mask & (mask - 1));
        m(i, j) = c;
        m(j, i) = -c;
    }
    return m;
}

}  // namespace cosy
