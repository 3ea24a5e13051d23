#pragma once

#include <cosy/cohomology.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cosy {

/// Closed-Reeb-orbit count under the finiteness hypothesis: the total basic
/// Betti number sum_p b_p(F). The verdict is conditional; callers must
/// surface the hypothesis (finitely many closed orbits, canonical subtorus
/// action Hamiltonian) alongside the number.
inline int orbit_count_from_basic(const std::vector<int>& basic) {
    if (basic.empty() || basic[0] != 1)
        throw std::invalid_argument("invalid basic Betti data: b_0(F) != 1");
    const int two_n = static_cast<int>(basic.size()) - 1;
    int total = 0;
    for (int p = 0; p <= two_n; ++p) {
        if (basic[p] < 0) throw std::invalid_argument("invalid basic Betti data: negative entry");
        if (basic[p] != basic[two_n - p])
            throw std::invalid_argument("invalid basic Betti data: duality fails");
        total += basic[p];
    }
    return total;
}

/// Lower bound on closed Reeb orbits in dimension 2n+1: n + 1.
inline int min_orbit_bound(int dim) {
    if (dim < 3 || dim % 2 == 0)
        throw std::invalid_argument("dimension must be odd and at least 3");
    return (dim - 1) / 2 + 1;
}

/// Betti-vector test for the real cohomology of CP^n x S^1: all ones of
/// even length 2n+2 (n >= 1), with the basic recursion giving 1,0,1,...,0,1.
/// Ring structure is only checked when a model is supplied (via the
/// omega-power ranks); on bare Betti data this is the dimension-level test.
inline bool cpn_characterization(const std::vector<int>& betti) {
    const int len = static_cast<int>(betti.size());
    if (len < 4 || len % 2 != 0) return false;
    for (int b : betti)
        if (b != 1) return false;
    auto rec = basic_betti_from_betti(betti);
    if (!rec.ok) return false;
    for (std::size_t p = 0; p < rec.basic.size(); ++p)
        if (rec.basic[p] != (p % 2 == 0 ? 1 : 0)) return false;
    return true;
}

/// Registry entry for a known space, with Betti data and (when the counting
/// hypotheses pin it) the closed-Reeb-orbit count of the deformed structure.
struct KnownSpace {
    std::string name;
    std::vector<int> betti;
    std::optional<std::vector<int>> basic_betti;
    std::optional<int> closed_orbit_count;
    std::string source;
};

inline std::vector<KnownSpace> known_spaces() {
    std::vector<KnownSpace> reg;

    auto binom = [](int n) {
        std::vector<int> b(n + 1, 1);
        for (int p = 1; p <= n; ++p) b[p] = b[p - 1] * (n - p + 1) / p;
        return b;
    };

    // CP^n x S^1: H*(CP^n) = R[x]/x^{n+1}, so the product has all Betti
    // numbers 1; the torus-deformed structure has exactly n+1 closed orbits.
    for (int n = 1; n <= 8; ++n) {
        KnownSpace k;
        k.name = "CP^" + std::to_string(n) + " x S^1";
        k.betti = std::vector<int>(2 * n + 2, 1);
        std::vector<int> basic(2 * n + 1, 0);
        for (int p = 0; p <= 2 * n; p += 2) basic[p] = 1;
        k.basic_betti = basic;
        k.closed_orbit_count = n + 1;
        k.source = "H*(CP^n;R) = R[x]/x^{n+1}, deg x = 2; Kuenneth with S^1";
        reg.push_back(std::move(k));
    }

    // Q^{2m-1} x S^1: the odd complex quadric is a real-cohomology CP^{2m-1}
    // (H* = R[x]/x^{2m}), not homeomorphic to it; 2m closed orbits.
    for (int m = 2; m <= 4; ++m) {
        KnownSpace k;
        k.name = "Q^" + std::to_string(2 * m - 1) + " x S^1";
        k.betti = std::vector<int>(4 * m, 1);
        std::vector<int> basic(4 * m - 1, 0);
        for (int p = 0; p <= 4 * m - 2; p += 2) basic[p] = 1;
        k.basic_betti = basic;
        k.closed_orbit_count = 2 * m;
        k.source = "odd quadric SO(2m+1)/(SO(2m-1) x SO(2)): H* = R[x]/x^{2m}, "
                   "Euler characteristic 2m; not homeomorphic to CP^{2m-1}";
        reg.push_back(std::move(k));
    }

    // flat tori
    for (int n = 1; n <= 7; ++n) {
        KnownSpace k;
        k.name = "T^" + std::to_string(n);
        k.betti = binom(n);
        if (n % 2 == 1 && n >= 3) k.basic_betti = binom(n - 1);
        k.source = "H*(T^n) = Lambda(x_1..x_n)";
        reg.push_back(std::move(k));
    }

    // Kodaira-Thurston manifold and its circle product
    {
        KnownSpace kt{"KT", {1, 3, 4, 3, 1}, std::nullopt, std::nullopt,
                      "nilmanifold of [e1,e2] = -e4; invariant cohomology"};
        reg.push_back(std::move(kt));
        KnownSpace kts{"KT x S^1",
                       {1, 4, 7, 7, 4, 1},
                       std::vector<int>{1, 3, 4, 3, 1},
                       std::nullopt,
                       "Kuenneth product of KT with S^1; invariant cohomology"};
        reg.push_back(std::move(kts));
    }
    return reg;
}

}  // namespace cosy
