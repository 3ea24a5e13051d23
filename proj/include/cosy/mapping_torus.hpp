#pragma once

#include <cosy/rational.hpp>

#include <map>
#include <stdexcept>
#include <vector>

namespace cosy {

/// Square integer matrix with arbitrary-precision entries, for gluing maps
/// of mapping tori.
using IntMat = std::vector<std::vector<BigInt>>;

inline int mat_dim(const IntMat& a) {
    int n = static_cast<int>(a.size());
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("matrix not square");
    return n;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
    int n = static_cast<int>(a.size());
    IntMat r(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (int j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

inline bool is_identity(const IntMat& a) {
    int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a[i][j] != (i == j ? 1 : 0)) return false;
    return true;
}

inline BigInt int_det(IntMat a) {
    // fraction-free via rationals; matrices are tiny
    int n = mat_dim(a);
    Rational d = 1;
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int i = col; i < n; ++i)
            if (m[i][col] != 0) {
                p = i;
                break;
            }
        if (p < 0) return 0;
        if (p != col) {
            std::swap(m[p], m[col]);
            d = -d;
        }
        d *= m[col][col];
        for (int i = col + 1; i < n; ++i) {
            if (m[i][col] == 0) continue;
            Rational f = m[i][col] / m[col][col];
            for (int j = col; j < n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return boost::multiprecision::numerator(d);
}

namespace detail {

inline long euler_phi(long m) {
    long result = m;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

/// m is a possible order of a finite-order element of GL(N, Z) iff the sum
/// of phi(p^a) over the maximal prime powers p^a | m is at most N, where a
/// bare factor 2 rides along for free (m == 2 mod 4: the order-2 block -1
/// shares the space of the odd part).
inline bool admissible_order(long m, int N) {
    if (m == 1) return true;
    long sum = 0;
    long rest = m;
    for (long p = 2; rest > 1 && p <= rest; ++p) {
        if (rest % p) continue;
        long pk = 1;
        while (rest % p == 0) {
            rest /= p;
            pk *= p;
        }
        if (pk == 2) continue;  // free factor
        sum += euler_phi(pk);
        if (sum > N) return false;
    }
    return sum <= N;
}

/// Orders to probe for an N x N matrix, ascending. Cached per dimension;
/// the scan cap of 10^4 is far above the true maximal finite order for the
/// dimensions in scope (6 for N = 2, 60 for N = 8).
inline const std::vector<long>& admissible_orders(int N) {
    static std::map<int, std::vector<long>> cache;
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    std::vector<long> orders;
    for (long m = 1; m <= 10000; ++m)
        if (admissible_order(m, N)) orders.push_back(m);
    return cache.emplace(N, std::move(orders)).first->second;
}

}  // namespace detail

struct TorusOrderResult {
    bool infinite = false;
    long order = 0;  // smallest k >= 1 with A^k = Id, when finite
    /// regularity of the characteristic foliation of the mapping-torus
    /// structure: "regular" (k = 1), "quasi-regular" (finite k), "irregular"
    const char* foliation = "";
};

/// Decides finite vs infinite order of an integer matrix with det = +-1.
/// A finite-order element of GL(N, Z) has order bounded by a function of N
/// alone (for N = 2 the possible orders are 1, 2, 3, 4, 6), so bounded
/// powering over the admissible orders is a complete decision procedure.
inline TorusOrderResult mapping_torus_order(const IntMat& a) {
    int n = mat_dim(a);
    BigInt d = int_det(a);
    if (d != 1 && d != -1) throw std::invalid_argument("gluing matrix must have det = +-1");

    const std::vector<long>& candidates = detail::admissible_orders(n);

    IntMat p = a;
    long k = 1;
    for (long m : candidates) {
        while (k < m) {
            p = mat_mul(p, a);
            ++k;
        }
        if (is_identity(p)) {
            TorusOrderResult r;
            r.order = m;
            r.foliation = (m == 1) ? "regular" : "quasi-regular";
            return r;
        }
    }
    TorusOrderResult r;
    r.infinite = true;
    r.foliation = "irregular";
    return r;
}

}  // namespace cosy
