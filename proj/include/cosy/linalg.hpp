#pragma once

#include <cosy/rational.hpp>

#include <concepts>
#include <optional>
#include <utility>
#include <vector>

namespace cosy {

using Vec = std::vector<Rational>;

inline Vec zero_vec(int n) { return Vec(static_cast<std::size_t>(n)); }

inline bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline Vec operator+(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

// deduced scalar type keeps this overload out of unrelated expressions
// (e.g. Eigen products elsewhere in the namespace)
template <std::same_as<Rational> R>
inline Vec operator*(const R& c, const Vec& v) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

inline Rational dot(const Vec& a, const Vec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Dense matrix over the exact rationals. Row-major; acts on column vectors.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    const Rational& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Vec apply(const Vec& v) const {
        Vec r(static_cast<std::size_t>(rows_));
        for (int i = 0; i < rows_; ++i) {
            Rational s = 0;
            for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }

    Vec col(int j) const {
        Vec c(static_cast<std::size_t>(rows_));
        for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void set_col(int j, const Vec& v) {
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat r(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const Rational& xik = x(i, k);
                if (xik == 0) continue;
                for (int j = 0; j < y.cols_; ++j) r(i, j) += xik * y(k, j);
            }
        return r;
    }

    friend Mat operator+(const Mat& x, const Mat& y) {
        Mat r(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
        return r;
    }

    friend Mat operator-(const Mat& x, const Mat& y) {
        Mat r(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
        return r;
    }

    friend Mat operator*(const Rational& c, const Mat& x) {
        Mat r(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = c * x.a_[i];
        return r;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

/// In-place reduced row echelon form with lexicographic pivoting (first
/// nonzero column, topmost usable row). Returns pivot column indices.
inline std::vector<int> rref(Mat& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (m(i, col) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        Rational inv = 1 / m(row, col);
        for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Rational f = m(i, col);
            for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int rank(Mat m) { return static_cast<int>(rref(m).size()); }

/// Basis of the null space {x : m x = 0}, in the deterministic order induced
/// by the free columns of the rref.
inline std::vector<Vec> kernel_basis(Mat m) {
    const int n = m.cols();
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vec v = zero_vec(n);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One solution of A x = b, or nullopt if inconsistent. Free variables are
/// set to zero.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
    Mat aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    std::vector<int> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    Vec x = zero_vec(a.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(static_cast<int>(r), a.cols());
    return x;
}

inline std::optional<Mat> inverse(const Mat& a) {
    const int n = a.rows();
    Mat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<int> pivots = rref(aug);
    if (static_cast<int>(pivots.size()) != n || pivots[n - 1] != n - 1) return std::nullopt;
    Mat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

inline Rational det(Mat m) {
    const int n = m.rows();
    Rational d = 1;
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int i = col; i < n; ++i)
            if (m(i, col) != 0) {
                p = i;
                break;
            }
        if (p < 0) return 0;
        if (p != col) {
            for (int j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
            d = -d;
        }
        d *= m(col, col);
        Rational inv = 1 / m(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (m(i, col) == 0) continue;
            Rational f = m(i, col) * inv;
            for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return d;
}

/// Exact positive-definiteness via leading principal minors.
inline bool positive_definite(const Mat& g) {
    for (int k = 1; k <= g.rows(); ++k) {
        Mat minor(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) minor(i, j) = g(i, j);
        if (det(std::move(minor)) <= 0) return false;
    }
    return true;
}

inline bool is_symmetric(const Mat& g) {
    for (int i = 0; i < g.rows(); ++i)
        for (int j = i + 1; j < g.cols(); ++j)
            if (g(i, j) != g(j, i)) return false;
    return true;
}

/// Incremental span tracker: feeds vectors one at a time and reports whether
/// each enlarges the span. Deterministic (no pivot heuristics beyond first
/// usable coordinate).
class SpanBuilder {
public:
    explicit SpanBuilder(int dim) : dim_(dim) {}

    bool try_add(Vec v) {
        for (const auto& [lead, row] : rows_) {
            if (v[lead] == 0) continue;
            Rational f = v[lead];
            for (int j = 0; j < dim_; ++j) v[j] -= f * row[j];
        }
        int lead = -1;
        for (int j = 0; j < dim_; ++j)
            if (v[j] != 0) {
                lead = j;
                break;
            }
        if (lead < 0) return false;
        Rational inv = 1 / v[lead];
        for (int j = 0; j < dim_; ++j) v[j] *= inv;
        rows_.emplace_back(lead, std::move(v));
        return true;
    }

    bool contains(Vec v) const {
        for (const auto& [lead, row] : rows_) {
            if (v[lead] == 0) continue;
            Rational f = v[lead];
            for (int j = 0; j < dim_; ++j) v[j] -= f * row[j];
        }
        return cosy::is_zero(v);
    }

    int rank() const { return static_cast<int>(rows_.size()); }

private:
    int dim_;
    std::vector<std::pair<int, Vec>> rows_;
};

}  // namespace cosy
