#pragma once

#include <cosy/acms.hpp>
#include <cosy/lie_calculus.hpp>

#include <string>
#include <vector>

namespace cosy {

/// Type I deformation direction. Admissibility (exact checks):
/// 1 + eta(theta) > 0, [xi, theta] = 0, L_theta g = 0 and L_theta omega = 0.
struct TypeIParams {
    Vec theta;
};

/// Type II deformation form. Admissibility: d beta = 0 and i_xi beta = 0.
struct TypeIIParams {
    KForm beta;
};

inline std::vector<std::string> check_type1(const ACMStructure& s, const TypeIParams& p) {
    std::vector<std::string> bad;
    if (1 + eval1(s.eta, p.theta) <= 0) bad.push_back("1 + eta(theta) <= 0");
    if (!is_zero(s.model.bracket(s.xi, p.theta))) bad.push_back("[xi, theta] != 0");
    if (!is_killing(s.model, s.g, p.theta)) bad.push_back("L_theta g != 0");
    if (!lie_derivative(s.model, p.theta, s.omega).is_zero()) bad.push_back("L_theta omega != 0");
    return bad;
}

inline std::vector<std::string> check_type2(const CosymplecticPair& p, const TypeIIParams& q) {
    std::vector<std::string> bad;
    if (q.beta.degree() != 1) bad.push_back("beta is not a 1-form");
    if (!ce_d(p.model, q.beta).is_zero()) bad.push_back("d beta != 0");
    if (q.beta.degree() == 1 && eval1(q.beta, p.xi) != 0) bad.push_back("i_xi beta != 0");
    return bad;
}

/// Deformed Kaehler form omega' = (1/eta(xi')) (omega + (i_theta omega) ^ eta').
inline KForm deformed_kaehler_form(const ACMStructure& s, const TypeIParams& p) {
    Rational c = eval1(s.eta, s.xi + p.theta);
    KForm eta_prime = (1 / c) * s.eta;
    return (1 / c) * (s.omega + wedge(contract(p.theta, s.omega), eta_prime));
}

/// Type I deformation:
///   xi'  = xi + theta
///   eta' = eta / eta(xi')
///   phi' = phi . (Id - eta' (x) xi')
///   g'   = (1/eta(xi')) g(P., P.) + eta' (x) eta',   P = Id - eta' (x) xi'
/// Throws listing the first violated admissibility condition.
inline ACMStructure deform_type1(const ACMStructure& s, const TypeIParams& p) {
    auto bad = check_type1(s, p);
    if (!bad.empty()) throw std::invalid_argument("inadmissible type I deformation: " + bad.front());

    const int d = s.dim();
    Vec xi_prime = s.xi + p.theta;
    Rational c = eval1(s.eta, xi_prime);  // constant, = 1 + eta(theta)
    KForm eta_prime = (1 / c) * s.eta;
    Mat proj = Mat::identity(d) - tensor_product(xi_prime, eta_prime);
    Mat phi_prime = s.phi * proj;
    Mat g_prime = (1 / c) * (proj.transpose() * s.g.g * proj);
    Vec etap = one_form_coords(eta_prime);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g_prime(i, j) += etap[i] * etap[j];

    ACMStructure out(s.model, std::move(eta_prime), std::move(xi_prime), std::move(phi_prime),
                     Metric(std::move(g_prime)));
    if (!(out.omega == deformed_kaehler_form(s, p)))
        throw std::logic_error("deformed Kaehler form does not match the closed formula");
    return out;
}

/// Type II deformation: (eta + beta, omega); the Reeb field is unchanged.
inline CosymplecticPair deform_type2(const CosymplecticPair& p, const TypeIIParams& q) {
    auto bad = check_type2(p, q);
    if (!bad.empty()) throw std::invalid_argument("inadmissible type II deformation: " + bad.front());
    CosymplecticPair out = make_cosymplectic_pair(p.model, p.eta + q.beta, p.omega);
    if (!(out.xi == p.xi)) throw std::logic_error("type II deformation moved the Reeb field");
    return out;
}

struct PreservationReport {
    bool pass = true;
    std::vector<std::string> lines;  // one verdict per tracked flag
};

/// Prop.-level preservation audit: the flags cosymplectic, K-cosymplectic
/// and coKaehler survive an admissible type I deformation.
inline PreservationReport verify_preservation(const ACMStructure& s, const TypeIParams& p) {
    PreservationReport rep;
    auto before = classify(s);
    ACMStructure deformed = deform_type1(s, p);
    auto after = classify(deformed);
    for (StructureFlag f :
         {StructureFlag::Cosymplectic, StructureFlag::KCosymplectic, StructureFlag::CoKaehler}) {
        bool was = before.has(f), is_now = after.has(f);
        bool ok = !was || is_now;
        rep.pass = rep.pass && ok;
        rep.lines.push_back(std::string(flag_name(f)) + ": " + (was ? "yes" : "no") + " -> " +
                            (is_now ? "yes" : "no") + (ok ? "" : "  [NOT PRESERVED]"));
    }
    if (!validate(deformed).empty()) {
        rep.pass = false;
        rep.lines.push_back("deformed structure fails validation");
    }
    return rep;
}

/// Exact basis of the admissible type I directions
/// {theta : [xi, theta] = 0, L_theta g = 0, L_theta omega = 0}.
/// (The open condition 1 + eta(theta) > 0 is checked per sample.)
inline std::vector<Vec> type1_admissible_space(const ACMStructure& s) {
    const int d = s.dim();
    std::vector<Vec> rows;
    auto add_row = [&](const Vec& r) { rows.push_back(r); };

    // [xi, theta] = 0: row per output coordinate
    for (int k = 0; k < d; ++k) {
        Vec row = zero_vec(d);
        for (int j = 0; j < d; ++j) {
            Vec ej = zero_vec(d);
            ej[j] = 1;
            row[j] = s.model.bracket(s.xi, ej)[k];
        }
        add_row(row);
    }
    // L_theta g = 0: g([theta,e_i],e_j) + g(e_i,[theta,e_j]) = 0, i <= j
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            Vec ei = zero_vec(d), ej = zero_vec(d);
            ei[i] = 1;
            ej[j] = 1;
            Vec row = zero_vec(d);
            for (int t = 0; t < d; ++t) {
                Vec et = zero_vec(d);
                et[t] = 1;
                row[t] = s.g(s.model.bracket(et, ei), ej) + s.g(ei, s.model.bracket(et, ej));
            }
            add_row(row);
        }
    // L_theta omega = 0 coefficientwise
    auto masks2 = basis_masks(d, 2);
    for (std::size_t mi = 0; mi < masks2.size(); ++mi) {
        Vec row = zero_vec(d);
        bool nonzero = false;
        for (int t = 0; t < d; ++t) {
            Vec et = zero_vec(d);
            et[t] = 1;
            row[t] = lie_derivative(s.model, et, s.omega).coeff(masks2[mi]);
            if (row[t] != 0) nonzero = true;
        }
        if (nonzero) add_row(row);
    }

    Mat sys(static_cast<int>(rows.size()), d);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < d; ++j) sys(static_cast<int>(i), j) = rows[i][j];
    return kernel_basis(std::move(sys));
}

}  // namespace cosy
