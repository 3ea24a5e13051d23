#pragma once

#include <cosy/acms.hpp>

#include <json.hpp>

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace cosy {

using json = nlohmann::ordered_json;

/// Structured schema violation with a field path for diagnostics.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& field, const std::string& why)
        : std::runtime_error("model file error at '" + field + "': " + why) {}
};

/// Parsed model file: the Lie model with the cosymplectic pair data and any
/// optional tensors. Rationals are carried bit-exactly as canonical "p/q"
/// strings in the file.
struct ModelFile {
    std::string name;
    LieModel model{0};
    KForm eta;
    KForm omega;
    std::optional<Vec> xi;
    std::optional<Mat> phi;
    std::optional<Mat> g;
    std::vector<std::vector<std::string>> rationally_independent;  // declarations

    /// builds the full structure when phi and g are present
    std::optional<ACMStructure> structure() const {
        if (!phi || !g) return std::nullopt;
        Vec reeb = xi ? *xi : reeb_field(model, eta, omega);
        return ACMStructure(model, eta, reeb, *phi, Metric(*g));
    }

    CosymplecticPair pair() const { return make_cosymplectic_pair(model, eta, omega); }
};

namespace detail_io {

inline Rational parse_rat_field(const json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::exception& e) {
            throw SchemaError(path, e.what());
        }
    }
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw SchemaError(path, "expected rational string \"p/q\"");
}

inline void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                                const std::string& path) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw SchemaError(path + "." + it.key(), "unknown key");
}

// sparse index map {"i": "p/q"} with 1-based indices
inline Vec parse_indexed(const json& j, int dim, const std::string& path) {
    Vec v = zero_vec(dim);
    if (!j.is_object()) throw SchemaError(path, "expected an object of index -> rational");
    for (auto it = j.begin(); it != j.end(); ++it) {
        int idx;
        try {
            idx = std::stoi(it.key());
        } catch (...) {
            throw SchemaError(path + "." + it.key(), "index is not a number");
        }
        if (idx < 1 || idx > dim) throw SchemaError(path + "." + it.key(), "index out of range");
        v[idx - 1] = parse_rat_field(it.value(), path + "." + it.key());
    }
    return v;
}

inline Mat parse_matrix(const json& j, int dim, const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw SchemaError(path, "expected a " + std::to_string(dim) + "-row matrix");
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw SchemaError(path, "row " + std::to_string(i + 1) + " has wrong length");
        for (int c = 0; c < dim; ++c)
            m(i, c) = parse_rat_field(row[c], path + "[" + std::to_string(i + 1) + "][" +
                                                  std::to_string(c + 1) + "]");
    }
    return m;
}

// "ij" (adjacent digits, dims <= 9) or "i,j"
inline std::pair<int, int> parse_pair_key(const std::string& key, int dim,
                                          const std::string& path) {
    int i = 0, j = 0;
    auto comma = key.find(',');
    try {
        if (comma != std::string::npos) {
            i = std::stoi(key.substr(0, comma));
            j = std::stoi(key.substr(comma + 1));
        } else if (key.size() == 2) {
            i = key[0] - '0';
            j = key[1] - '0';
        } else {
            throw std::invalid_argument("bad");
        }
    } catch (...) {
        throw SchemaError(path + "." + key, "expected index pair \"ij\" or \"i,j\"");
    }
    if (i < 1 || j < 1 || i > dim || j > dim || i >= j)
        throw SchemaError(path + "." + key, "indices must satisfy 1 <= i < j <= dim");
    return {i, j};
}

}  // namespace detail_io

inline ModelFile parse_model(const json& doc) {
    using namespace detail_io;
    if (!doc.is_object()) throw SchemaError("$", "top level must be an object");
    reject_unknown_keys(doc, {"name", "dim", "brackets", "eta", "omega", "xi", "phi", "g",
                              "declarations"},
                        "$");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        throw SchemaError("dim", "required integer");
    int dim = doc["dim"].get<int>();
    if (dim < 1 || dim > 9) throw SchemaError("dim", "dimension out of supported range 1..9");

    ModelFile mf;
    mf.name = doc.value("name", std::string("unnamed"));
    mf.model = LieModel(dim, mf.name);

    if (doc.contains("brackets")) {
        const json& br = doc["brackets"];
        if (!br.is_array()) throw SchemaError("brackets", "expected an array");
        for (std::size_t t = 0; t < br.size(); ++t) {
            const std::string path = "brackets[" + std::to_string(t) + "]";
            const json& e = br[t];
            reject_unknown_keys(e, {"i", "j", "coeffs"}, path);
            if (!e.contains("i") || !e.contains("j") || !e["i"].is_number_integer() ||
                !e["j"].is_number_integer())
                throw SchemaError(path, "need integer fields i and j");
            int i = e["i"].get<int>(), j = e["j"].get<int>();
            if (i < 1 || j < 1 || i > dim || j > dim || i >= j)
                throw SchemaError(path, "indices must satisfy 1 <= i < j <= dim");
            if (!e.contains("coeffs")) throw SchemaError(path, "missing coeffs");
            Vec v = parse_indexed(e["coeffs"], dim, path + ".coeffs");
            mf.model.set_bracket(i - 1, j - 1, std::move(v));
        }
    }

    if (!doc.contains("eta")) throw SchemaError("eta", "required");
    mf.eta = one_form(parse_indexed(doc["eta"], dim, "eta"));

    if (!doc.contains("omega")) throw SchemaError("omega", "required");
    {
        const json& om = doc["omega"];
        if (!om.is_object()) throw SchemaError("omega", "expected an object of pair -> rational");
        KForm w(dim, 2);
        for (auto it = om.begin(); it != om.end(); ++it) {
            auto [i, j] = parse_pair_key(it.key(), dim, "omega");
            w.add_term((1u << (i - 1)) | (1u << (j - 1)),
                       parse_rat_field(it.value(), "omega." + it.key()));
        }
        mf.omega = w;
    }

    if (doc.contains("xi")) mf.xi = parse_indexed(doc["xi"], dim, "xi");
    if (doc.contains("phi")) mf.phi = parse_matrix(doc["phi"], dim, "phi");
    if (doc.contains("g")) mf.g = parse_matrix(doc["g"], dim, "g");

    if (doc.contains("declarations")) {
        const json& dec = doc["declarations"];
        reject_unknown_keys(dec, {"rationally_independent"}, "declarations");
        if (dec.contains("rationally_independent")) {
            for (const auto& group : dec["rationally_independent"]) {
                std::vector<std::string> names;
                for (const auto& n : group) names.push_back(n.get<std::string>());
                mf.rationally_independent.push_back(std::move(names));
            }
        }
    }

    auto jac = check_jacobi(mf.model);
    if (!jac.ok)
        throw SchemaError("brackets", "Jacobi identity fails at triple (" +
                                          std::to_string(jac.triple[0] + 1) + "," +
                                          std::to_string(jac.triple[1] + 1) + "," +
                                          std::to_string(jac.triple[2] + 1) + ")");
    return mf;
}

inline ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path, "cannot open model file");
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw SchemaError(path, std::string("invalid JSON: ") + e.what());
    }
    return parse_model(doc);
}

inline json emit_model(const ModelFile& mf) {
    json doc;
    doc["name"] = mf.name;
    doc["dim"] = mf.model.dim;
    json br = json::array();
    for (const auto& [ij, v] : mf.model.brackets.entries()) {
        json e;
        e["i"] = ij.first + 1;
        e["j"] = ij.second + 1;
        json coeffs;
        for (int k = 0; k < mf.model.dim; ++k)
            if (v[k] != 0) coeffs[std::to_string(k + 1)] = to_string(v[k]);
        e["coeffs"] = coeffs;
        br.push_back(e);
    }
    doc["brackets"] = br;
    json eta;
    for (int i = 0; i < mf.model.dim; ++i) {
        Rational c = mf.eta.coeff(1u << i);
        if (c != 0) eta[std::to_string(i + 1)] = to_string(c);
    }
    doc["eta"] = eta;
    json om;
    for (const auto& [mask, c] : mf.omega.terms()) {
        int i = std::countr_zero(mask);
        int j = std::countr_zero(mask & (mask - 1));
        om[std::to_string(i + 1) + std::to_string(j + 1)] = to_string(c);
    }
    doc["omega"] = om;
    if (mf.xi) {
        json xi;
        for (int i = 0; i < mf.model.dim; ++i)
            if ((*mf.xi)[i] != 0) xi[std::to_string(i + 1)] = to_string((*mf.xi)[i]);
        doc["xi"] = xi;
    }
    auto matrix_json = [&](const Mat& m) {
        json rows = json::array();
        for (int i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
            rows.push_back(row);
        }
        return rows;
    };
    if (mf.phi) doc["phi"] = matrix_json(*mf.phi);
    if (mf.g) doc["g"] = matrix_json(*mf.g);
    if (!mf.rationally_independent.empty()) {
        doc["declarations"] = json::object();
        doc["declarations"]["rationally_independent"] = mf.rationally_independent;
    }
    return doc;
}

inline ModelFile model_file_of(const ACMStructure& s, const std::string& name) {
    ModelFile mf;
    mf.name = name;
    mf.model = s.model;
    mf.eta = s.eta;
    mf.omega = s.omega;
    mf.xi = s.xi;
    mf.phi = s.phi;
    mf.g = s.g.g;
    return mf;
}

}  // namespace cosy
