#pragma once

// JSON (de)serialization for the file formats the CLI speaks: parameter
// files, count data, probability tensors, generator sets, geometry reports
// and fit reports. Rationals travel as strings ("3/4"), reals as numbers.

#include <json.hpp>

#include <fstream>
#include <string>

#include "mtd/arrangement.hpp"
#include "mtd/binary_geom.hpp"
#include "mtd/ideal.hpp"
#include "mtd/likelihood.hpp"
#include "mtd/model.hpp"

namespace mtd {

using Json = nlohmann::ordered_json;

inline Json params_to_json(const ModelShape& shape, const MTDParams& params) {
    Json j;
    j["l"] = shape.l;
    j["m"] = shape.m;
    Json q = Json::array();
    for (const auto& row : params.Q) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(to_string(x));
        q.push_back(r);
    }
    j["Q"] = q;
    Json lam = Json::array();
    for (const auto& x : params.lambda) lam.push_back(to_string(x));
    j["lambda"] = lam;
    return j;
}

inline std::pair<ModelShape, MTDParams> params_from_json(const Json& j) {
    ModelShape shape(j.at("l").get<int>(), j.at("m").get<int>());
    MTDParams params;
    for (const auto& row : j.at("Q")) {
        std::vector<Rational> r;
        for (const auto& x : row) r.push_back(parse_rational(x.get<std::string>()));
        params.Q.push_back(std::move(r));
    }
    for (const auto& x : j.at("lambda"))
        params.lambda.push_back(parse_rational(x.get<std::string>()));
    validate_params(shape, params);
    return {shape, params};
}

inline Json counts_to_json(const CountsTensor& u) {
    Json j;
    j["l"] = u.shape.l;
    j["m"] = u.shape.m;
    Json c = Json::object();
    for (std::size_t w = 0; w < u.counts.size(); ++w)
        c[state_string(state_of_index(u.shape, w))] = u.counts[w];
    j["counts"] = c;
    return j;
}

inline CountsTensor counts_from_json(const Json& j) {
    ModelShape shape(j.at("l").get<int>(), j.at("m").get<int>());
    CountsTensor u;
    u.shape = shape;
    u.counts.assign(shape.num_states(), 0);
    for (const auto& [key, val] : j.at("counts").items()) {
        auto digits = state_from_string(shape, key);
        std::int64_t c = val.get<std::int64_t>();
        if (c < 0) throw ParseError("counts must be nonnegative");
        u.counts[index_of_state(shape, digits)] = c;
    }
    return u;
}

inline Json tensor_to_json(const ProbTensor& t) {
    Json j;
    j["l"] = t.shape.l;
    j["m"] = t.shape.m;
    Json v = Json::array();
    for (const auto& x : t.values) v.push_back(to_string(x));
    j["values"] = v;
    return j;
}

inline Json tensor_to_json(const ProbTensorD& t) {
    Json j;
    j["l"] = t.shape.l;
    j["m"] = t.shape.m;
    j["values"] = t.values;
    return j;
}

inline ProbTensor tensor_from_json(const Json& j) {
    ModelShape shape(j.at("l").get<int>(), j.at("m").get<int>());
    ProbTensor t;
    t.shape = shape;
    for (const auto& x : j.at("values")) t.values.push_back(parse_rational(x.get<std::string>()));
    if (t.values.size() != shape.num_states()) throw ParseError("tensor has wrong length");
    return t;
}

inline Json generators_to_json(const GeneratorSet& gs) {
    Json j;
    j["l"] = gs.shape.l;
    j["m"] = gs.shape.m;
    auto fam = [&](const std::vector<Polynomial>& polys) {
        Json arr = Json::array();
        for (const auto& f : polys) arr.push_back(to_text(f, gs.order));
        return arr;
    };
    j["linear1"] = fam(gs.linear1);
    j["linear2"] = fam(gs.linear2);
    Json a = Json::array();
    for (const auto& row : gs.matrixA) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(to_text(e, gs.order));
        a.push_back(r);
    }
    j["A"] = a;
    j["minors"] = fam(gs.minors);
    return j;
}

inline std::string generators_to_text(const GeneratorSet& gs) {
    std::string out;
    out += "# linear relations (family I): " + std::to_string(gs.linear1.size()) + "\n";
    for (const auto& f : gs.linear1) out += to_text(f, gs.order) + "\n";
    out += "# linear relations (family II): " + std::to_string(gs.linear2.size()) + "\n";
    for (const auto& f : gs.linear2) out += to_text(f, gs.order) + "\n";
    out += "# matrix A (" + std::to_string(gs.matrixA.size()) + " x " +
           std::to_string(gs.matrixA.empty() ? 0 : gs.matrixA[0].size()) + ")\n";
    for (const auto& row : gs.matrixA) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) line += " | ";
            line += to_text(row[c], gs.order);
        }
        out += line + "\n";
    }
    out += "# 2x2 minors: " + std::to_string(gs.minors.size()) + "\n";
    for (const auto& f : gs.minors) out += to_text(f, gs.order) + "\n";
    return out;
}

inline Json geometry_to_json(int l) {
    CrossPolytope cp = cross_polytope(l);
    Json j;
    j["l"] = l;
    Json verts = Json::object();
    auto vec = [](const VecR& v) {
        Json a = Json::array();
        for (const auto& x : v) a.push_back(to_string(x));
        return a;
    };
    std::vector<std::string> names;
    for (int r = 0; r < l; ++r)
        for (int s = 1; s <= 2; ++s) {
            std::string name = "E_" + std::to_string(r) + "_" + std::to_string(s);
            names.push_back(name);
            verts[name] = vec(cp.e(r, s));
        }
    verts["u1"] = vec(cp.u1);
    verts["u2"] = vec(cp.u2);
    j["vertices"] = verts;
    Json s1 = Json::array({"u1", "u2"}), s2 = Json::array({"u1", "u2"});
    for (int r = 0; r < l; ++r) {
        s1.push_back("E_" + std::to_string(r) + "_1");
        s2.push_back("E_" + std::to_string(r) + "_2");
    }
    j["simplex1"] = s1;
    j["simplex2"] = s2;
    j["volume_ratio"] = to_string(volume_ratio(l));
    return j;
}

inline Json membership_to_json(const MembershipResult<Rational>& res) {
    Json j;
    const char* names[] = {"outside_closure", "closure_only", "in_simplex1", "in_simplex2",
                           "on_diagonal"};
    j["kind"] = names[static_cast<int>(res.kind)];
    Json b = Json::array();
    for (const auto& x : res.barycentric) b.push_back(to_string(x));
    j["barycentric"] = b;
    return j;
}

inline Json fit_to_json(const LocalMaxCensus& cen, const MLEResult& mle,
                        const RankCertificate& cert, bool census_ok) {
    Json j;
    Json clusters = Json::array();
    for (const auto& c : cen.maxima) {
        Json e;
        e["loglik"] = c.loglik;
        e["basin_count"] = c.basin_count;
        e["point"] = c.point.values;
        Json q = Json::array();
        for (const auto& row : c.params.Q) q.push_back(row);
        e["params"] = Json{{"Q", q}, {"lambda", c.params.lambda}};
        clusters.push_back(e);
    }
    j["clusters"] = clusters;
    j["cluster_tol"] = cen.cluster_tol;
    Json tri;
    tri["kind"] = mle.kind == MLEKind::PStarInterior ? "p_star_interior" : "boundary_local";
    tri["side"] = mle.side;
    tri["p_star"] = mle.p_star.values;
    tri["p_star_loglik"] = mle.p_star_loglik;
    tri["global"] = mle.global.values;
    tri["global_loglik"] = mle.global_loglik;
    tri["side_max_loglik"] = Json::array({mle.side_max1.loglik, mle.side_max2.loglik});
    j["trichotomy"] = tri;
    Json c;
    c["singular_values"] = cert.singular_values;
    c["rank"] = cert.rank;
    c["relative_gap"] = cert.relative_gap;
    j["certificate"] = c;
    j["census_ok"] = census_ok;
    return j;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << content;
}

}  // namespace mtd
