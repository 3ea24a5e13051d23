#pragma once

#include <cosy/cohomology.hpp>
#include <cosy/model_io.hpp>
#include <cosy/orbits.hpp>

#include <optional>
#include <sstream>
#include <string>

namespace cosy {

inline const char* orbit_hypothesis_banner() {
    return "conditional: assumes finitely many closed Reeb orbits and a Hamiltonian "
           "canonical subtorus action; the engine does not decide either hypothesis";
}

/// Report envelope. Every numeric entry is produced by an exact operation;
/// the flags record what the invariant model can and cannot certify.
struct Report {
    std::string model_name;
    int dim = 0;
    std::optional<std::uint64_t> seed;

    bool invariant_cohomology_only = false;  // model not nilpotent: invariant != de Rham a priori
    bool lattice_unverified = false;         // cocompact lattice existence not checked
    bool density_by_declaration = false;     // irregularity verdicts come from declarations

    json sections = json::object();

    void set_flags_from(const LieModel& L, const ModelFile* mf = nullptr) {
        invariant_cohomology_only = !is_nilpotent(L);
        lattice_unverified = !L.is_abelian();
        density_by_declaration = mf && !mf->rationally_independent.empty();
    }
};

inline json classification_json(const ACMStructure& s) {
    json out;
    auto violations = validate(s);
    out["valid"] = violations.empty();
    out["violations"] = violations;
    auto rep = classify(s);
    json flags = json::array();
    for (auto f : rep.flags) flags.push_back(flag_name(f));
    out["flags"] = flags;
    json witnesses = json::object();
    for (const auto& [f, w] : rep.witness) witnesses[flag_name(f)] = w;
    out["witnesses"] = witnesses;
    out["n_tensors"] = {{"N1_zero", rep.tensors.n1_zero()},
                        {"N2_zero", rep.tensors.n2_zero()},
                        {"N3_zero", rep.tensors.n3_zero()},
                        {"N4_zero", rep.tensors.n4_zero()}};
    return out;
}

inline json cohomology_json(const CohomologyReport& c, bool with_lefschetz) {
    json out;
    out["betti"] = c.betti;
    out["basic_betti"] = c.basic;
    out["splitting_ok"] = c.splitting_ok;
    out["recursion_ok"] = c.recursion_ok;
    out["pairing_nondegenerate"] = c.pairing_nondegenerate;
    out["omega_powers_nontrivial"] = c.omega_powers_nontrivial;
    if (with_lefschetz) {
        json lef = json::array();
        for (const auto& r : c.lefschetz) {
            json e;
            e["degree"] = r.degree;
            e["rank"] = r.rank;
            e["is_isomorphism"] = r.is_isomorphism;
            if (r.kernel_rep) e["kernel_class"] = r.kernel_rep->str();
            if (r.image_primitive) e["image_primitive"] = r.image_primitive->str();
            lef.push_back(e);
        }
        out["lefschetz"] = lef;
        out["lefschetz_isomorphism"] = c.lefschetz_all_iso;
    }
    return out;
}

inline json orbits_json(const std::vector<int>& basic, int dim) {
    json out;
    out["basic_betti"] = basic;
    out["orbit_count_if_finite"] = orbit_count_from_basic(basic);
    out["min_orbit_bound"] = min_orbit_bound(dim);
    out["hypothesis"] = orbit_hypothesis_banner();
    return out;
}

inline json report_json(const Report& r) {
    json doc;
    doc["tool"] = {{"name", "cosy"}, {"version", "0.1.0"}};
    if (r.seed) doc["tool"]["seed"] = *r.seed;
    doc["model"] = {{"name", r.model_name}, {"dim", r.dim}};
    doc["flags"] = {{"invariant_cohomology_only", r.invariant_cohomology_only},
                    {"lattice_unverified", r.lattice_unverified},
                    {"density_by_declaration", r.density_by_declaration}};
    for (auto it = r.sections.begin(); it != r.sections.end(); ++it) doc[it.key()] = it.value();
    return doc;
}

namespace detail_report {

inline void text_value(std::ostream& os, const json& v, int indent);

inline void text_object(std::ostream& os, const json& v, int indent) {
    for (auto it = v.begin(); it != v.end(); ++it) {
        os << std::string(indent, ' ') << it.key() << ":";
        if (it.value().is_object() || (it.value().is_array() && !it.value().empty() &&
                                       it.value().front().is_structured())) {
            os << "\n";
            text_value(os, it.value(), indent + 2);
        } else {
            os << " ";
            text_value(os, it.value(), 0);
            os << "\n";
        }
    }
}

inline void text_value(std::ostream& os, const json& v, int indent) {
    if (v.is_object()) {
        text_object(os, v, indent);
    } else if (v.is_array()) {
        if (!v.empty() && v.front().is_structured()) {
            for (const auto& e : v) {
                os << std::string(indent, ' ') << "-\n";
                text_value(os, e, indent + 2);
            }
        } else {
            os << "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) os << ", ";
                if (v[i].is_string())
                    os << v[i].get<std::string>();
                else
                    os << v[i].dump();
            }
            os << "]";
        }
    } else if (v.is_string()) {
        os << v.get<std::string>();
    } else {
        os << v.dump();
    }
}

}  // namespace detail_report

/// "json": stable key order, byte-identical for identical inputs and seed.
/// "text": indented human-readable rendering of the same data.
inline std::string emit_report(const Report& r, const std::string& format) {
    json doc = report_json(r);
    if (format == "json") return doc.dump(2) + "\n";
    if (format != "text") throw std::invalid_argument("unknown format: " + format);
    std::ostringstream os;
    detail_report::text_object(os, doc, 0);
    return os.str();
}

}  // namespace cosy
