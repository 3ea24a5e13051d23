// cosy: exact classification, cohomology, deformation and Hamiltonian
// calculus for invariant cosymplectic structures on Lie-group models.

#include <cosy/adapted.hpp>
#include <cosy/cohomology.hpp>
#include <cosy/deform.hpp>
#include <cosy/mapping_torus.hpp>
#include <cosy/model_io.hpp>
#include <cosy/orbits.hpp>
#include <cosy/report.hpp>
#include <cosy/torusham.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace cosy;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitVerificationFailure = 2;

// data that parsed fine but fails its exact mathematical checks
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CosymplecticPair checked_pair(const ModelFile& mf) {
    try {
        return mf.pair();
    } catch (const std::invalid_argument& e) {
        throw VerificationError(e.what());
    }
}

struct GlobalOpts {
    std::string format = "text";
    std::optional<std::uint64_t> seed;
};

void print_report(const Report& rep, const GlobalOpts& g) { std::cout << emit_report(rep, g.format); }

Vec parse_vec_literal(const std::string& s, int dim) {
    Vec v = zero_vec(dim);
    std::size_t pos = 0;
    int idx = 0;
    while (pos <= s.size() && idx < dim) {
        auto comma = s.find(',', pos);
        std::string piece = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (piece.empty()) piece = "0";
        v[idx++] = parse_rational(piece);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (idx != dim)
        throw std::invalid_argument("expected " + std::to_string(dim) +
                                    " comma-separated rationals, got " + std::to_string(idx));
    return v;
}

Mat parse_matrix_literal(const std::string& s, int dim) {
    Mat m(dim, dim);
    std::size_t pos = 0;
    int row = 0;
    while (row < dim) {
        auto semi = s.find(';', pos);
        std::string rowstr = s.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        Vec r = parse_vec_literal(rowstr, dim);
        for (int j = 0; j < dim; ++j) m(row, j) = r[j];
        ++row;
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    if (row != dim) throw std::invalid_argument("expected " + std::to_string(dim) + " matrix rows");
    return m;
}

TorusModel torus_model_of(const ModelFile& mf) {
    if (!mf.model.is_abelian())
        throw std::invalid_argument(
            "trig-polynomial calculus is only defined on flat tori (abelian models)");
    return make_torus_model(mf.eta, mf.omega);
}

TrigField parse_field_literal(const std::string& s, int m) {
    // comma-separated component polynomials over the frame d/dx_1..d/dx_m
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (static_cast<int>(parts.size()) != m)
        throw std::invalid_argument("expected " + std::to_string(m) +
                                    " comma-separated components");
    TrigField x(m);
    for (int i = 0; i < m; ++i) {
        std::string p = parts[i];
        if (p.find_first_not_of(" \t") == std::string::npos) p = "0";
        x.comp[i] = parse_trig_poly(p, m);
    }
    return x;
}

int run_check(const std::string& path, const GlobalOpts& g) {
    ModelFile mf = load_model(path);
    Report rep;
    rep.model_name = mf.name;
    rep.dim = mf.model.dim;
    rep.seed = g.seed;
    rep.set_flags_from(mf.model, &mf);

    bool pass = true;
    auto s = mf.structure();
    if (s) {
        json cls = classification_json(*s);
        pass = cls["valid"].get<bool>();
        rep.sections["classification"] = cls;
    } else {
        json pairj;
        try {
            CosymplecticPair p = mf.pair();
            pairj["cosymplectic_pair"] = true;
            json xi = json::array();
            for (const auto& c : p.xi) xi.push_back(to_string(c));
            pairj["reeb_field"] = xi;
        } catch (const std::exception& e) {
            pairj["cosymplectic_pair"] = false;
            pairj["violation"] = e.what();
            pass = false;
        }
        rep.sections["pair_check"] = pairj;
    }
    print_report(rep, g);
    return pass ? kExitOk : kExitVerificationFailure;
}

int run_cohomology(const std::string& path, bool with_basic, bool with_lefschetz,
                   const GlobalOpts& g) {
    ModelFile mf = load_model(path);
    Report rep;
    rep.model_name = mf.name;
    rep.dim = mf.model.dim;
    rep.seed = g.seed;
    rep.set_flags_from(mf.model, &mf);

    bool pass = true;
    if (with_basic || with_lefschetz) {
        CosymplecticPair p = checked_pair(mf);
        CohomologyReport c = cohomology_report(p, with_lefschetz);
        rep.sections["cohomology"] = cohomology_json(c, with_lefschetz);
        pass = c.splitting_ok && c.recursion_ok && c.pairing_nondegenerate &&
               c.omega_powers_nontrivial;
    } else {
        json cj;
        cj["betti"] = betti(mf.model);
        rep.sections["cohomology"] = cj;
    }
    print_report(rep, g);
    return pass ? kExitOk : kExitVerificationFailure;
}

int run_deform(const std::string& path, const std::vector<std::pair<char, std::string>>& steps,
               const std::string& out_path, const GlobalOpts& g) {
    ModelFile mf = load_model(path);
    Report rep;
    rep.model_name = mf.name;
    rep.dim = mf.model.dim;
    rep.seed = g.seed;
    rep.set_flags_from(mf.model, &mf);

    json audit = json::array();
    std::optional<ACMStructure> s = mf.structure();
    std::optional<CosymplecticPair> pair;
    if (!s) pair = checked_pair(mf);

    for (const auto& [kind, literal] : steps) {
        if (kind == '1') {
            if (!s)
                throw std::invalid_argument(
                    "type I deformation needs the metric structure (phi, g); it is no longer "
                    "available after a type II step");
            Vec theta = parse_vec_literal(literal, s->dim());
            PreservationReport pres = [&] {
                try {
                    return verify_preservation(*s, {theta});
                } catch (const std::invalid_argument& e) {
                    throw VerificationError(e.what());
                }
            }();
            json e;
            e["type"] = "I";
            e["theta"] = literal;
            e["flags_preserved"] = pres.pass;
            e["audit"] = pres.lines;
            audit.push_back(e);
            if (!pres.pass) {
                rep.sections["deformation_audit"] = audit;
                print_report(rep, g);
                return kExitVerificationFailure;
            }
            s = deform_type1(*s, {theta});
        } else {
            if (s) {
                pair = make_cosymplectic_pair(s->model, s->eta, s->omega);
                s.reset();
            }
            KForm beta = one_form(parse_vec_literal(literal, pair->model.dim));
            CosymplecticPair next = [&] {
                try {
                    return deform_type2(*pair, {beta});
                } catch (const std::invalid_argument& e) {
                    throw VerificationError(e.what());
                }
            }();
            json e;
            e["type"] = "II";
            e["beta"] = literal;
            e["reeb_field_unchanged"] = (next.xi == pair->xi);
            audit.push_back(e);
            pair = next;
        }
    }

    ModelFile out;
    if (s) {
        out = model_file_of(*s, mf.name + " (deformed)");
    } else {
        out.name = mf.name + " (deformed)";
        out.model = pair->model;
        out.eta = pair->eta;
        out.omega = pair->omega;
        out.xi = pair->xi;
    }
    out.rationally_independent = mf.rationally_independent;
    json outdoc = emit_model(out);

    rep.sections["deformation_audit"] = audit;
    rep.sections["deformed_model"] = outdoc;
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot write " + out_path);
        f << outdoc.dump(2) << "\n";
    }
    print_report(rep, g);
    return kExitOk;
}

int run_adapted(const std::string& path, const std::string& gbar_lit, double tol,
                const GlobalOpts& g) {
    ModelFile mf = load_model(path);
    CosymplecticPair p = checked_pair(mf);
    Metric gbar = gbar_lit.empty() ? Metric::identity(mf.model.dim)
                                   : Metric(parse_matrix_literal(gbar_lit, mf.model.dim));

    Report rep;
    rep.model_name = mf.name;
    rep.dim = mf.model.dim;
    rep.seed = g.seed;
    rep.set_flags_from(mf.model, &mf);

    FloatACMS out = [&] {
        try {
            return adapted_structure(p, gbar, tol);
        } catch (const std::invalid_argument& e) {
            if (std::string(e.what()).find("Killing") != std::string::npos)
                throw VerificationError(e.what());
            throw;
        }
    }();
    FloatResiduals res = float_validate(mf.model, out);
    json a;
    auto dump_matrix = [](const Eigen::MatrixXd& m) {
        json rows = json::array();
        for (int i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
            rows.push_back(row);
        }
        return rows;
    };
    a["phi"] = dump_matrix(out.phi);
    a["g"] = dump_matrix(out.g);
    a["b_root"] = dump_matrix(out.b_root);
    a["sqrt_residual"] = out.sqrt_residual;
    a["max_residual"] = res.max();
    a["n3_residual"] = res.n3;
    a["tolerance"] = tol;
    a["k_cosymplectic_within_tol"] = (res.max() <= tol);
    rep.sections["adapted"] = a;
    print_report(rep, g);
    return res.max() <= tol ? kExitOk : kExitVerificationFailure;
}

int run_field(const std::string& path, const std::string& field_lit, const GlobalOpts& g) {
    ModelFile mf = load_model(path);
    TorusModel t = torus_model_of(mf);
    TrigField x = parse_field_literal(field_lit, t.m);
    FieldClass cls = classify_field(t, x);

    Report rep;
    rep.model_name = mf.name;
    rep.dim = mf.model.dim;
    rep.seed = g.seed;
    rep.set_flags_from(mf.model, &mf);
    json fj;
    fj["field"] = field_lit;
    fj["class"] = field_kind_name(cls.kind);
    if (cls.witness_h) fj["h"] = cls.witness_h->str();
    if (cls.witness_f) fj["f"] = cls.witness_f->str();
    rep.sections["field_classification"] = fj;
    print_report(rep, g);
    return cls.kind == FieldKind::None ? kExitVerificationFailure : kExitOk;
}

int run_poisson(const std::string& path, const std::string& f_lit, const std::string& g_lit,
                const GlobalOpts& g) {
    ModelFile mf = load_model(path);
    TorusModel t = torus_model_of(mf);
    TrigPoly f = parse_trig_poly(f_lit, t.m);
    TrigPoly h = parse_trig_poly(g_lit, t.m);
    TrigPoly bracket = poisson(t, f, h);

    Report rep;
    rep.model_name = mf.name;
    rep.dim = mf.model.dim;
    rep.seed = g.seed;
    rep.set_flags_from(mf.model, &mf);
    json pj;
    pj["f"] = f_lit;
    pj["g"] = g_lit;
    pj["poisson_bracket"] = bracket.str();
    pj["xi_invariant"] = t.xi_field.apply(bracket).is_zero();
    rep.sections["poisson"] = pj;
    print_report(rep, g);
    return kExitOk;
}

int run_orbits(const std::string& path, const std::string& betti_lit, const GlobalOpts& g) {
    Report rep;
    rep.seed = g.seed;
    std::vector<int> basic;
    std::vector<int> betti_vec;
    bool ring_checked = false;

    if (!betti_lit.empty()) {
        std::size_t pos = 0;
        while (pos <= betti_lit.size()) {
            auto comma = betti_lit.find(',', pos);
            betti_vec.push_back(std::stoi(betti_lit.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        rep.model_name = "(betti data)";
        rep.dim = static_cast<int>(betti_vec.size()) - 1;
        auto rec = basic_betti_from_betti(betti_vec);
        if (!rec.ok) {
            json oj;
            oj["error"] = "betti vector not realizable: " + rec.failure;
            rep.sections["orbits"] = oj;
            print_report(rep, g);
            return kExitVerificationFailure;
        }
        basic = rec.basic;
    } else {
        ModelFile mf = load_model(path);
        rep.model_name = mf.name;
        rep.dim = mf.model.dim;
        rep.set_flags_from(mf.model, &mf);
        CosymplecticPair p = checked_pair(mf);
        basic = basic_betti(mf.model, p.xi, p.eta);
        betti_vec = betti(mf.model);
        ring_checked = omega_power_check(p);
    }

    json oj = orbits_json(basic, rep.dim);
    oj["cpn_x_s1_betti_profile"] = cpn_characterization(betti_vec);
    if (ring_checked) oj["omega_powers_nontrivial"] = true;
    rep.sections["orbits"] = oj;
    print_report(rep, g);
    return kExitOk;
}

int run_torus_order(const std::string& matrix_lit, const GlobalOpts& g) {
    // comma-separated integers, row-major square matrix
    std::vector<long long> entries;
    std::size_t pos = 0;
    while (pos <= matrix_lit.size()) {
        auto comma = matrix_lit.find(',', pos);
        entries.push_back(std::stoll(matrix_lit.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    int n = 1;
    while (n * n < static_cast<int>(entries.size())) ++n;
    if (n * n != static_cast<int>(entries.size()))
        throw std::invalid_argument("matrix entry count is not a perfect square");
    IntMat a(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = entries[i * n + j];

    TorusOrderResult r = mapping_torus_order(a);
    Report rep;
    rep.model_name = "(gluing matrix)";
    rep.dim = n;
    rep.seed = g.seed;
    json tj;
    tj["matrix"] = matrix_lit;
    if (r.infinite) {
        tj["order"] = "infinite";
        tj["verdict"] = "infinite (irregular characteristic foliation)";
    } else {
        tj["order"] = r.order;
        tj["verdict"] = std::to_string(r.order) + " (" + r.foliation +
                        " characteristic foliation)";
    }
    rep.sections["torus_order"] = tj;
    print_report(rep, g);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cosy: exact calculus on invariant cosymplectic structures"};
    app.require_subcommand(1);

    GlobalOpts g;
    std::int64_t seed_arg = -1;
    app.add_option("--format", g.format, "output format: json|text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_option("--seed", seed_arg, "seed recorded in reports and used by randomized runs");

    std::string model_path, out_path, gbar_lit, field_lit, f_lit, g_lit, betti_lit, matrix_lit;
    bool with_basic = false, with_lefschetz = false;
    double tol = 1e-9;

    auto* check = app.add_subcommand("check", "validate and classify a model");
    check->add_option("model", model_path, "model file")->required();

    auto* coh = app.add_subcommand("cohomology", "Betti numbers and cohomological checks");
    coh->add_option("model", model_path, "model file")->required();
    coh->add_flag("--basic", with_basic, "basic cohomology, splitting, recursion, pairing");
    coh->add_flag("--lefschetz", with_lefschetz, "Lefschetz map ranks per degree");

    auto* def = app.add_subcommand("deform", "apply type I / type II deformations (chainable)");
    def->add_option("model", model_path, "model file")->required();
    auto* t1opt = def->add_option("--type1", "type I direction, theta=<comma rationals>")
                      ->expected(1)
                      ->allow_extra_args(false)
                      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    auto* t2opt = def->add_option("--type2", "type II form, beta=<comma rationals>")
                      ->expected(1)
                      ->allow_extra_args(false)
                      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    def->add_option("-o,--output", out_path, "write the deformed model file here");

    auto* ada = app.add_subcommand("adapted", "adapted-metric construction (floating backend)");
    ada->add_option("model", model_path, "model file")->required();
    ada->add_option("--gbar", gbar_lit, "metric rows 'a,b,..;c,d,..' (default: identity)");
    ada->add_option("--tol", tol, "residual tolerance")->capture_default_str();

    auto* fld = app.add_subcommand("field", "classify a trig-polynomial vector field on a torus");
    fld->add_option("model", model_path, "model file (abelian)")->required();
    fld->add_option("--classify", field_lit, "field components 'p1, p2, ...'")->required();

    auto* poi = app.add_subcommand("poisson", "Poisson bracket of two trig polynomials");
    poi->add_option("model", model_path, "model file (abelian)")->required();
    poi->add_option("f", f_lit, "first function")->required();
    poi->add_option("g", g_lit, "second function")->required();

    auto* orb = app.add_subcommand("orbits", "closed-Reeb-orbit checkers");
    orb->add_option("model", model_path, "model file");
    orb->add_option("--betti", betti_lit, "comma-separated Betti numbers instead of a model");

    auto* tor = app.add_subcommand("torus-order", "order of a mapping-torus gluing matrix");
    tor->add_option("--matrix", matrix_lit, "row-major integer entries, e.g. 2,1,1,1")->required();

    for (CLI::App* sub : {check, coh, def, ada, fld, poi, orb, tor}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    if (const char* env_seed = std::getenv("COSY_SEED")) {
        g.seed = std::strtoull(env_seed, nullptr, 10);
    } else if (seed_arg >= 0) {
        g.seed = static_cast<std::uint64_t>(seed_arg);
    }

    try {
        if (*check) return run_check(model_path, g);
        if (*coh) return run_cohomology(model_path, with_basic, with_lefschetz, g);
        if (*def) {
            // interleave type I / type II steps in command-line order
            std::vector<std::pair<char, std::string>> steps;
            auto strip = [](std::string v, const char* prefix) {
                if (v.rfind(prefix, 0) == 0) v = v.substr(std::string(prefix).size());
                return v;
            };
            std::size_t i1 = 0, i2 = 0;
            for (const CLI::Option* o : def->parse_order()) {
                if (o == t1opt) steps.emplace_back('1', strip(t1opt->results()[i1++], "theta="));
                if (o == t2opt) steps.emplace_back('2', strip(t2opt->results()[i2++], "beta="));
            }
            if (steps.empty()) throw std::invalid_argument("no deformation steps given");
            return run_deform(model_path, steps, out_path, g);
        }
        if (*ada) return run_adapted(model_path, gbar_lit, tol, g);
        if (*fld) return run_field(model_path, field_lit, g);
        if (*poi) return run_poisson(model_path, f_lit, g_lit, g);
        if (*orb) {
            if (betti_lit.empty() && model_path.empty())
                throw std::invalid_argument("orbits needs a model file or --betti");
            return run_orbits(model_path, betti_lit, g);
        }
        if (*tor) return run_torus_order(matrix_lit, g);
    } catch (const SchemaError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerificationFailure;
    }
    return kExitInputError;
}
