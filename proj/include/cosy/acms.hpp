#pragma once

#include <cosy/lie_calculus.hpp>
#include <cosy/lie_model.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cosy {

/// Kaehler form of (g, phi): omega(X, Y) = g(phi X, Y). This is the sign
/// convention used engine-wide; see the README convention sheet.
inline Mat kaehler_form_matrix(const Metric& g, const Mat& phi) {
    return phi.transpose() * g.g;
}

struct ACMStructure {
    LieModel model;
    KForm eta;   // degree 1
    Vec xi;
    Mat phi;
    Metric g;
    KForm omega;  // degree 2, derived from (g, phi) and cached

    ACMStructure(LieModel m, KForm eta_, Vec xi_, Mat phi_, Metric g_)
        : model(std::move(m)),
          eta(std::move(eta_)),
          xi(std::move(xi_)),
          phi(std::move(phi_)),
          g(std::move(g_)),
          omega(derive_omega()) {}

    int dim() const { return model.dim; }
    int n() const { return (model.dim - 1) / 2; }

    KForm derive_omega() const {
        Mat om = kaehler_form_matrix(g, phi);
        // antisymmetrize; validate() reports if the raw matrix was not skew
        Mat skew = Rational(1, 2) * (om - om.transpose());
        return two_form_from_matrix(skew);
    }
};

/// Metric-free cosymplectic data (eta, omega) with derived Reeb field.
struct CosymplecticPair {
    LieModel model;
    KForm eta;
    KForm omega;
    Vec xi;
};

/// Unique xi with i_xi omega = 0 and eta(xi) = 1, from the exact linear
/// system. Throws when eta ^ omega^n is degenerate (no unique solution).
inline Vec reeb_field(const LieModel& L, const KForm& eta, const KForm& omega) {
    const int d = L.dim;
    Mat sys(d + 1, d);
    Mat om = two_form_matrix(omega);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) sys(j, i) = om(i, j);  // row j: omega(xi, e_j) = 0
    for (int i = 0; i < d; ++i) sys(d, i) = eta.coeff(1u << i);
    Vec rhs = zero_vec(d + 1);
    rhs[d] = 1;
    auto sol = solve(sys, rhs);
    if (!sol) throw std::runtime_error("degenerate (eta, omega): no Reeb field");
    Mat hom(d + 1, d);
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j < d; ++j) hom(i, j) = sys(i, j);
    if (!kernel_basis(std::move(hom)).empty())
        throw std::runtime_error("degenerate (eta, omega): Reeb field not unique");
    return *sol;
}

/// Builds a CosymplecticPair after checking the Libermann axioms exactly:
/// d eta = 0, d omega = 0, eta ^ omega^n != 0.
inline CosymplecticPair make_cosymplectic_pair(LieModel L, KForm eta, KForm omega) {
    if (L.dim % 2 == 0) throw std::invalid_argument("cosymplectic model must be odd-dimensional");
    if (!ce_d(L, eta).is_zero()) throw std::invalid_argument("eta is not closed");
    if (!ce_d(L, omega).is_zero()) throw std::invalid_argument("omega is not closed");
    int n = (L.dim - 1) / 2;
    if (wedge(eta, wedge_power(omega, n)).is_zero())
        throw std::invalid_argument("eta ^ omega^n vanishes");
    Vec xi = reeb_field(L, eta, omega);
    return CosymplecticPair{std::move(L), std::move(eta), std::move(omega), std::move(xi)};
}

/// Exact check of the structure axioms. Violations are returned as data,
/// one human-readable line each; empty means valid.
inline std::vector<std::string> validate(const ACMStructure& s) {
    std::vector<std::string> bad;
    const int d = s.dim();
    if (d % 2 == 0) bad.push_back("dimension is even");
    if (eval1(s.eta, s.xi) != 1) bad.push_back("eta(xi) != 1");

    Mat expected = Rational(-1) * Mat::identity(d) + tensor_product(s.xi, s.eta);
    if (!(s.phi * s.phi == expected)) bad.push_back("phi^2 != -Id + eta (x) xi");

    for (int i = 0; i < d; ++i) {
        Vec ei = zero_vec(d);
        ei[i] = 1;
        for (int j = i; j < d; ++j) {
            Vec ej = zero_vec(d);
            ej[j] = 1;
            Rational lhs = s.g(s.phi.apply(ei), s.phi.apply(ej));
            Rational rhs = s.g(ei, ej) - eval1(s.eta, ei) * eval1(s.eta, ej);
            if (lhs != rhs) {
                bad.push_back("metric compatibility fails at basis pair (" + std::to_string(i + 1) +
                              "," + std::to_string(j + 1) + ")");
            }
        }
    }

    Mat om = kaehler_form_matrix(s.g, s.phi);
    if (!(om + om.transpose()).is_zero())
        bad.push_back("g(phi X, Y) is not antisymmetric");
    else if (!(two_form_from_matrix(om) == s.omega))
        bad.push_back("cached omega differs from g(phi ., .)");

    if (d % 2 == 1) {
        int n = (d - 1) / 2;
        if (wedge(s.eta, wedge_power(s.omega, n)).is_zero()) bad.push_back("eta ^ omega^n = 0");
    }
    return bad;
}

struct NTensors {
    PairTable n1{0};  // N_phi + d eta (x) xi
    Mat n2;        // scalar table, entry (i, j) = (L_{phi e_i} eta)(e_j) - (L_{phi e_j} eta)(e_i)
    Mat n3;        // L_xi phi
    KForm n4;      // L_xi eta

    bool n1_zero() const { return n1.is_zero(); }
    bool n2_zero() const { return n2.is_zero(); }
    bool n3_zero() const { return n3.is_zero(); }
    bool n4_zero() const { return n4.is_zero(); }
};

inline NTensors n_tensors(const ACMStructure& s) {
    const int d = s.dim();
    const LieModel& L = s.model;
    KForm deta = ce_d(L, s.eta);

    PairTable n1 = nijenhuis(L, s.phi);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            Vec ei = zero_vec(d), ej = zero_vec(d);
            ei[i] = 1;
            ej[j] = 1;
            Vec v = n1.at(i, j) + eval(deta, {ei, ej}) * s.xi;
            n1.set(i, j, std::move(v));
        }

    Mat n2(d, d);
    std::vector<KForm> lie_eta;
    lie_eta.reserve(d);
    for (int i = 0; i < d; ++i) {
        Vec ei = zero_vec(d);
        ei[i] = 1;
        lie_eta.push_back(lie_derivative(L, s.phi.apply(ei), s.eta));
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Vec ej = zero_vec(d);
            ej[j] = 1;
            Vec ei = zero_vec(d);
            ei[i] = 1;
            n2(i, j) = eval1(lie_eta[i], ej) - eval1(lie_eta[j], ei);
        }

    Mat n3 = lie_derivative(L, s.xi, s.phi);
    KForm n4 = lie_derivative(L, s.xi, s.eta);
    return NTensors{std::move(n1), std::move(n2), std::move(n3), std::move(n4)};
}

enum class StructureFlag {
    AlmostContactMetric,
    Cosymplectic,
    ContactMetric,
    Normal,
    CoKaehler,
    Sasakian,
    KCosymplectic,
};

inline const char* flag_name(StructureFlag f) {
    switch (f) {
        case StructureFlag::AlmostContactMetric: return "almost-contact-metric";
        case StructureFlag::Cosymplectic: return "cosymplectic";
        case StructureFlag::ContactMetric: return "contact-metric";
        case StructureFlag::Normal: return "normal";
        case StructureFlag::CoKaehler: return "coKaehler";
        case StructureFlag::Sasakian: return "Sasakian";
        case StructureFlag::KCosymplectic: return "K-cosymplectic";
    }
    return "?";
}

struct ClassificationReport {
    std::set<StructureFlag> flags;
    NTensors tensors;
    std::map<StructureFlag, std::string> witness;  // first violated identity per absent flag

    bool has(StructureFlag f) const { return flags.count(f) > 0; }
};

/// Classification per the defining identities:
///   cosymplectic    <=> d eta = 0 and d omega = 0
///   contact metric  <=> omega = d eta
///   normal          <=> N1 = 0
///   coKaehler       <=> cosymplectic and normal
///   Sasakian        <=> contact metric and normal
///   K-cosymplectic  <=> cosymplectic and N3 = 0
inline ClassificationReport classify(const ACMStructure& s) {
    ClassificationReport rep;
    rep.tensors = n_tensors(s);
    const LieModel& L = s.model;

    if (validate(s).empty()) rep.flags.insert(StructureFlag::AlmostContactMetric);

    KForm deta = ce_d(L, s.eta);
    KForm domega = ce_d(L, s.omega);

    bool cosy_flag = deta.is_zero() && domega.is_zero();
    if (cosy_flag)
        rep.flags.insert(StructureFlag::Cosymplectic);
    else
        rep.witness[StructureFlag::Cosymplectic] =
            !deta.is_zero() ? "d eta = " + deta.str() : "d omega = " + domega.str();

    bool contact = (s.omega == deta);
    if (contact)
        rep.flags.insert(StructureFlag::ContactMetric);
    else
        rep.witness[StructureFlag::ContactMetric] = "omega - d eta = " + (s.omega - deta).str();

    bool normal = rep.tensors.n1_zero();
    if (normal)
        rep.flags.insert(StructureFlag::Normal);
    else {
        const auto& first = *rep.tensors.n1.entries().begin();
        rep.witness[StructureFlag::Normal] = "N1(e_" + std::to_string(first.first.first + 1) +
                                             ", e_" + std::to_string(first.first.second + 1) +
                                             ") != 0";
    }

    if (cosy_flag && normal) rep.flags.insert(StructureFlag::CoKaehler);
    if (contact && normal) rep.flags.insert(StructureFlag::Sasakian);

    if (cosy_flag && rep.tensors.n3_zero())
        rep.flags.insert(StructureFlag::KCosymplectic);
    else if (cosy_flag)
        rep.witness[StructureFlag::KCosymplectic] = "N3 = L_xi phi != 0";
    else
        rep.witness[StructureFlag::KCosymplectic] = "not cosymplectic";

    return rep;
}

/// Almost Kaehler input data for the product constructor: an even model with
/// tau(X, Y) = h(JX, Y), J^2 = -Id, h(JX, JY) = h(X, Y), d tau = 0.
struct AlmostKaehler {
    LieModel model;
    KForm tau;
    Metric h;
    Mat j;
};

inline std::vector<std::string> validate_almost_kaehler(const AlmostKaehler& k) {
    std::vector<std::string> bad;
    const int d = k.model.dim;
    if (d % 2 != 0) bad.push_back("almost Kaehler model must be even-dimensional");
    if (!(k.j * k.j == Rational(-1) * Mat::identity(d))) bad.push_back("J^2 != -Id");
    Mat tau_mat = k.j.transpose() * k.h.g;
    if (!(two_form_from_matrix(Rational(1, 2) * (tau_mat - tau_mat.transpose())) == k.tau) ||
        !(tau_mat + tau_mat.transpose()).is_zero())
        bad.push_back("tau(X, Y) != h(JX, Y)");
    if (!(k.j.transpose() * k.h.g * k.j == k.h.g)) bad.push_back("h(JX, JY) != h(X, Y)");
    if (!ce_d(k.model, k.tau).is_zero()) bad.push_back("tau is not closed");
    if (wedge_power(k.tau, d / 2).is_zero()) bad.push_back("tau^n = 0");
    return bad;
}

/// K x S^1: extends the algebra by a central direction e_{2n+1} and sets
/// eta = e^{2n+1}, xi = e_{2n+1}, phi = J (+) 0, g = h (+) 1.
inline ACMStructure product_with_circle(const AlmostKaehler& k) {
    auto bad = validate_almost_kaehler(k);
    if (!bad.empty()) throw std::invalid_argument("incompatible almost Kaehler data: " + bad.front());
    const int d2 = k.model.dim;
    const int d = d2 + 1;
    LieModel L(d, k.model.name.empty() ? "K x S^1" : k.model.name + " x S^1");
    for (const auto& [ij, v] : k.model.brackets.entries()) {
        Vec w = zero_vec(d);
        for (int t = 0; t < d2; ++t) w[t] = v[t];
        L.set_bracket(ij.first, ij.second, std::move(w));
    }
    KForm eta = KForm::basis(d, {d - 1});
    Vec xi = zero_vec(d);
    xi[d - 1] = 1;
    Mat phi(d, d);
    Mat g(d, d);
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j) {
            phi(i, j) = k.j(i, j);
            g(i, j) = k.h.g(i, j);
        }
    g(d - 1, d - 1) = 1;
    return ACMStructure(std::move(L), std::move(eta), std::move(xi), std::move(phi),
                        Metric(std::move(g)));
}

}  // namespace cosy
