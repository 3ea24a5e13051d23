#pragma once

#include <cosy/kform.hpp>
#include <cosy/linalg.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace cosy {

/// Table of vectors indexed by ordered basis pairs i < j, with antisymmetric
/// lookup. Used for bracket tables and (2,1)-tensors such as the Nijenhuis
/// torsion.
class PairTable {
public:
    PairTable() = default;
    explicit PairTable(int dim) : dim_(dim) {}

    int dim() const { return dim_; }

    void set(int i, int j, Vec v) {
        if (i == j || i < 0 || j < 0 || i >= dim_ || j >= dim_)
            throw std::invalid_argument("bad pair index");
        if (i > j) {
            std::swap(i, j);
            v = Rational(-1) * v;
        }
        if (cosy::is_zero(v))
            table_.erase({i, j});
        else
            table_[{i, j}] = std::move(v);
    }

    /// value at (i, j); antisymmetric in the arguments.
    Vec at(int i, int j) const {
        if (i == j) return zero_vec(dim_);
        bool flip = i > j;
        if (flip) std::swap(i, j);
        auto it = table_.find({i, j});
        if (it == table_.end()) return zero_vec(dim_);
        return flip ? Rational(-1) * it->second : it->second;
    }

    bool is_zero() const { return table_.empty(); }
    const std::map<std::pair<int, int>, Vec>& entries() const { return table_; }

private:
    int dim_ = 0;
    std::map<std::pair<int, int>, Vec> table_;
};

/// Finite-dimensional Lie algebra with rational structure constants,
/// [e_i, e_j] = sum_k c^k_ij e_k, stored for i < j only.
struct LieModel {
    int dim = 0;
    std::string name;
    PairTable brackets{0};

    LieModel(int n, std::string label = "") : dim(n), name(std::move(label)), brackets(n) {}

    void set_bracket(int i, int j, Vec v) { brackets.set(i, j, std::move(v)); }

    Vec bracket_basis(int i, int j) const { return brackets.at(i, j); }

    Vec bracket(const Vec& x, const Vec& y) const {
        Vec r = zero_vec(dim);
        for (const auto& [ij, v] : brackets.entries()) {
            auto [i, j] = ij;
            Rational c = x[i] * y[j] - x[j] * y[i];
            if (c == 0) continue;
            for (int k = 0; k < dim; ++k) r[k] += c * v[k];
        }
        return r;
    }

    /// Matrix of ad_x, column j = [x, e_j].
    Mat ad(const Vec& x) const {
        Mat m(dim, dim);
        for (int j = 0; j < dim; ++j) {
            Vec ej = zero_vec(dim);
            ej[j] = 1;
            m.set_col(j, bracket(x, ej));
        }
        return m;
    }

    bool is_abelian() const { return brackets.is_zero(); }
};

struct JacobiReport {
    bool ok = true;
    std::array<int, 3> triple{};  // first violating (i, j, k), 0-based
    Vec defect;
};

/// Checks the Jacobi identity on all basis triples; reports the first
/// violation.
inline JacobiReport check_jacobi(const LieModel& L) {
    for (int i = 0; i < L.dim; ++i)
        for (int j = i + 1; j < L.dim; ++j)
            for (int k = j + 1; k < L.dim; ++k) {
                Vec ei = zero_vec(L.dim), ej = zero_vec(L.dim), ek = zero_vec(L.dim);
                ei[i] = 1;
                ej[j] = 1;
                ek[k] = 1;
                Vec s = L.bracket(L.bracket_basis(i, j), ek) + L.bracket(L.bracket_basis(j, k), ei) +
                        L.bracket(L.bracket_basis(k, i), ej);
                if (!cosy::is_zero(s)) return {false, {i, j, k}, std::move(s)};
            }
    return {};
}

/// Derived series test: L is nilpotent iff the lower central series reaches
/// zero. Used for the invariant-cohomology disclaimer flag.
inline bool is_nilpotent(const LieModel& L) {
    // span of the current term of the lower central series
    std::vector<Vec> current;
    for (int i = 0; i < L.dim; ++i)
        for (int j = i + 1; j < L.dim; ++j) {
            Vec v = L.bracket_basis(i, j);
            if (!cosy::is_zero(v)) current.push_back(std::move(v));
        }
    for (int step = 0; step < L.dim + 1; ++step) {
        if (current.empty()) return true;
        SpanBuilder prev(L.dim);
        for (const auto& v : current) prev.try_add(v);
        std::vector<Vec> next;
        SpanBuilder next_span(L.dim);
        for (int i = 0; i < L.dim; ++i) {
            Vec ei = zero_vec(L.dim);
            ei[i] = 1;
            for (const auto& v : current) {
                Vec w = L.bracket(ei, v);
                if (!cosy::is_zero(w) && next_span.try_add(w)) next.push_back(std::move(w));
            }
        }
        if (next_span.rank() >= prev.rank()) return false;  // series stalled
        current = std::move(next);
    }
    return current.empty();
}

/// Riemannian metric on the model: symmetric positive-definite matrix.
struct Metric {
    Mat g;

    explicit Metric(Mat m) : g(std::move(m)) {
        if (!is_symmetric(g)) throw std::invalid_argument("metric not symmetric");
        if (!positive_definite(g)) throw std::invalid_argument("metric not positive definite");
    }

    static Metric identity(int n) { return Metric(Mat::identity(n)); }

    Rational operator()(const Vec& x, const Vec& y) const { return dot(x, g.apply(y)); }
    Rational at(int i, int j) const { return g(i, j); }
    int dim() const { return g.rows(); }
};

/// Invariant connection, nabla_{e_i} e_j = sum_k Gamma^k_ij e_k.
struct Connection {
    int dim = 0;
    std::vector<std::vector<Vec>> gamma;  // gamma[i][j] = nabla_{e_i} e_j

    explicit Connection(int n) : dim(n), gamma(n, std::vector<Vec>(n, zero_vec(n))) {}

    Vec nabla_basis(int i, int j) const { return gamma[i][j]; }

    Vec nabla(const Vec& x, const Vec& y) const {
        Vec r = zero_vec(dim);
        for (int i = 0; i < dim; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < dim; ++j) {
                if (y[j] == 0) continue;
                Rational c = x[i] * y[j];
                for (int k = 0; k < dim; ++k) r[k] += c * gamma[i][j][k];
            }
        }
        return r;
    }

    /// Endomorphism X -> nabla_X v for a fixed vector v.
    Mat nabla_of_vector(const Vec& v) const {
        Mat m(dim, dim);
        for (int i = 0; i < dim; ++i) {
            Vec ei = zero_vec(dim);
            ei[i] = 1;
            m.set_col(i, nabla(ei, v));
        }
        return m;
    }

    bool torsion_free(const LieModel& L) const {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (!cosy::is_zero(gamma[i][j] - gamma[j][i] - L.bracket_basis(i, j))) return false;
        return true;
    }

    bool metric_compatible(const Metric& g) const {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (int k = j; k < dim; ++k) {
                    Vec ej = zero_vec(dim), ek = zero_vec(dim);
                    ej[j] = 1;
                    ek[k] = 1;
                    if (g(gamma[i][j], ek) + g(ej, gamma[i][k]) != 0) return false;
                }
        return true;
    }
};

}  // namespace cosy
