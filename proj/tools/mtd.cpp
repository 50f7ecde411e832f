// Command-line interface: every capability of the library behind one binary
// with stable, machine-readable output. Exit codes: 0 success, 1 when a
// verified claim fails, 2 on usage or input errors.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "mtd/io.hpp"
#include "mtd/repro.hpp"

namespace {

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        if (content.empty() || content.back() != '\n') std::cout << "\n";
    } else {
        mtd::write_text_file(out_path, content);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and statistical toolkit for mixture transition distribution models"};
    app.require_subcommand(1);

    int l = 2, m = 2;
    long long n = 400;
    unsigned long long seed = 0;
    int restarts = 100;
    std::string format = "text", out_path, data_path, tensor_path, params_path, kind;
    bool balanced = false;
    int exit_code = 0;

    auto* gen = app.add_subcommand("generate-ideal", "emit the ideal generators");
    gen->add_option("--l", l)->required();
    gen->add_option("--m", m)->required();
    gen->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    gen->add_option("--out", out_path);
    gen->callback([&] {
        auto gs = mtd::full_basis(mtd::ModelShape(l, m));
        emit(format == "json" ? mtd::generators_to_json(gs).dump(2)
                              : mtd::generators_to_text(gs),
             out_path);
    });

    auto* vv = app.add_subcommand("verify-vanishing",
                                  "check every generator vanishes under the parametrization");
    vv->add_option("--l", l)->required();
    vv->add_option("--m", m)->required();
    vv->callback([&] {
        bool ok = mtd::verify_vanishing(mtd::ModelShape(l, m));
        std::cout << (ok ? "PASS" : "FAIL") << " vanishing (l=" << l << ", m=" << m << ")\n";
        if (!ok) exit_code = 1;
    });

    auto* vg = app.add_subcommand("verify-groebner",
                                  "check leading terms and the Buchberger criterion");
    vg->add_option("--l", l)->required();
    vg->add_option("--m", m)->required();
    vg->callback([&] {
        bool ok = mtd::verify_groebner(mtd::ModelShape(l, m));
        std::cout << (ok ? "PASS" : "FAIL") << " groebner (l=" << l << ", m=" << m << ")\n";
        if (!ok) exit_code = 1;
    });

    auto* vd = app.add_subcommand("verify-dims", "span dimension and variety dimension/degree");
    vd->add_option("--l", l)->required();
    vd->add_option("--m", m)->required();
    vd->callback([&] {
        mtd::ModelShape shape(l, m);
        auto span = mtd::span_dimension(shape);
        auto [dim, deg] = mtd::variety_dim_degree(shape);
        std::cout << "span " << span << ", projective dimension " << dim << ", degree "
                  << deg.get_str() << "\n";
    });

    auto* geo = app.add_subcommand("geometry", "cross-polytope vertices and model simplices");
    geo->add_option("--l", l)->required();
    geo->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    geo->add_option("--out", out_path);
    geo->callback([&] {
        auto j = mtd::geometry_to_json(l);
        if (format == "json") {
            emit(j.dump(2), out_path);
        } else {
            std::string s;
            for (const auto& [name, coords] : j.at("vertices").items()) {
                s += name + ":";
                for (const auto& c : coords) s += " " + c.get<std::string>();
                s += "\n";
            }
            s += "volume_ratio: " + j.at("volume_ratio").get<std::string>() + "\n";
            emit(s, out_path);
        }
    });

    auto* vr = app.add_subcommand("volume-ratio", "vol(model) / vol(closure cap simplex)");
    vr->add_option("--l", l)->required();
    vr->callback([&] { std::cout << mtd::to_string(mtd::volume_ratio(l)) << "\n"; });

    auto* mem = app.add_subcommand("membership", "classify a distribution against the model");
    mem->add_option("--l", l)->required();
    mem->add_option("--tensor", tensor_path, "probability tensor JSON")->required();
    mem->callback([&] {
        auto t = mtd::tensor_from_json(mtd::read_json_file(tensor_path));
        auto res = mtd::membership(l, t);
        std::cout << mtd::membership_to_json(res).dump(2) << "\n";
    });

    auto* ev = app.add_subcommand("model-eval", "apply the parametrization to parameters");
    ev->add_option("--params", params_path)->required();
    ev->add_option("--out", out_path);
    ev->callback([&] {
        auto [shape, params] = mtd::params_from_json(mtd::read_json_file(params_path));
        emit(mtd::tensor_to_json(mtd::parametrize(shape, params)).dump(2), out_path);
    });

    auto* inv = app.add_subcommand("invert", "recover parameters from a model point");
    inv->add_option("--tensor", tensor_path)->required();
    inv->add_option("--m", m)->required();
    inv->callback([&] {
        auto t = mtd::tensor_from_json(mtd::read_json_file(tensor_path));
        auto params = mtd::invert(t.shape, t);
        std::cout << mtd::params_to_json(t.shape, params).dump(2) << "\n";
    });

    auto* smp = app.add_subcommand("sample", "sample parameters or data");
    smp->add_option("--kind", kind)->check(CLI::IsMember({"params", "data"}))->required();
    smp->add_option("--l", l);
    smp->add_option("--m", m);
    smp->add_option("--seed", seed);
    smp->add_option("--n", n);
    smp->add_flag("--balanced", balanced);
    smp->add_option("--params", params_path, "parameter file for data sampling");
    smp->add_option("--out", out_path);
    smp->callback([&] {
        if (kind == "params") {
            mtd::ModelShape shape(l, m);
            emit(mtd::params_to_json(shape, mtd::sample_params(shape, seed)).dump(2), out_path);
        } else {
            mtd::ModelShape shape(l, m);
            mtd::MTDParams params;
            if (!params_path.empty()) {
                auto loaded = mtd::params_from_json(mtd::read_json_file(params_path));
                shape = loaded.first;
                params = loaded.second;
            } else {
                params = mtd::sample_params(shape, seed + 1);
            }
            auto u = mtd::sample_data(shape, params, n, balanced, seed);
            emit(mtd::counts_to_json(u).dump(2), out_path);
        }
    });

    auto* fit = app.add_subcommand("fit-em", "multistart EM with census and trichotomy report");
    fit->add_option("--data", data_path)->required();
    fit->add_option("--restarts", restarts);
    fit->add_option("--seed", seed);
    fit->add_option("--out", out_path);
    fit->callback([&] {
        auto u = mtd::counts_from_json(mtd::read_json_file(data_path));
        mtd::EMOptions opts;
        opts.restarts = restarts;
        opts.seed = seed;
        opts.loglik_tol = 1e-12;
        opts.max_iter = 200000;
        auto cen = mtd::census(u, opts);
        auto mle = mtd::mle_binary(u);
        mtd::RankCertificate cert;
        if (u.counts.size() == 8) {
            bool positive = true;
            for (double v : mle.p_star.values)
                if (v <= 0) positive = false;
            if (positive) cert = mtd::rank_certificate(u, mle.p_star);
        }
        const bool census_ok = u.shape.m != 2 || cen.maxima.size() <= 2;
        emit(mtd::fit_to_json(cen, mle, cert, census_ok).dump(2), out_path);
        if (!census_ok) exit_code = 1;
    });

    auto* mle_cmd = app.add_subcommand("mle", "global maximizer and trichotomy");
    mle_cmd->add_option("--data", data_path)->required();
    mle_cmd->callback([&] {
        auto u = mtd::counts_from_json(mtd::read_json_file(data_path));
        auto mle = mtd::mle_binary(u);
        mtd::Json j;
        j["kind"] = mle.kind == mtd::MLEKind::PStarInterior ? "p_star_interior" : "boundary_local";
        j["side"] = mle.side;
        j["global"] = mle.global.values;
        j["global_loglik"] = mle.global_loglik;
        j["p_star"] = mle.p_star.values;
        j["p_star_loglik"] = mle.p_star_loglik;
        std::cout << j.dump(2) << "\n";
    });

    auto* cen_cmd = app.add_subcommand("census", "cluster the EM limit points");
    cen_cmd->add_option("--data", data_path)->required();
    cen_cmd->add_option("--restarts", restarts);
    cen_cmd->add_option("--seed", seed);
    cen_cmd->callback([&] {
        auto u = mtd::counts_from_json(mtd::read_json_file(data_path));
        mtd::EMOptions opts;
        opts.restarts = restarts;
        opts.seed = seed;
        opts.loglik_tol = 1e-12;
        opts.max_iter = 200000;
        auto cen = mtd::census(u, opts);
        mtd::Json j;
        mtd::Json clusters = mtd::Json::array();
        for (const auto& c : cen.maxima)
            clusters.push_back(mtd::Json{
                {"loglik", c.loglik}, {"basin_count", c.basin_count}, {"point", c.point.values}});
        j["clusters"] = clusters;
        std::cout << j.dump(2) << "\n";
        if (u.shape.m == 2 && cen.maxima.size() > 2) exit_code = 1;
    });

    auto* cert_cmd = app.add_subcommand("certificate", "criticality rank certificate");
    cert_cmd->add_option("--data", data_path)->required();
    cert_cmd->add_option("--tensor", tensor_path, "point to certify (default: p*)");
    cert_cmd->callback([&] {
        auto u = mtd::counts_from_json(mtd::read_json_file(data_path));
        mtd::ProbTensorD p;
        if (tensor_path.empty()) {
            p = mtd::maximize_over_cross_polytope(u, 1e-15).point;
        } else {
            p = mtd::to_real(mtd::tensor_from_json(mtd::read_json_file(tensor_path)));
        }
        auto cert = mtd::rank_certificate(u, p);
        mtd::Json j;
        j["singular_values"] = cert.singular_values;
        j["rank"] = cert.rank;
        j["relative_gap"] = cert.relative_gap;
        std::cout << j.dump(2) << "\n";
    });

    auto* mld = app.add_subcommand("ml-degree", "bounded-region count table");
    mld->add_option("--l", l)->required();
    mld->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    mld->callback([&] {
        if (l > 4) throw mtd::ShapeError("ml-degree: table capped at l = 4");
        auto table = mtd::ml_degree_table(l);
        auto chi = mtd::characteristic_polynomial(mtd::build_arrangement(l));
        if (format == "json") {
            mtd::Json counts = mtd::Json::object();
            for (auto [ll, c] : table) counts[std::to_string(ll)] = c;
            mtd::Json coeffs = mtd::Json::array();
            for (const auto& c : chi) coeffs.push_back(c.get_str());
            std::cout << mtd::Json{{"counts", counts}, {"chi", coeffs}}.dump(2) << "\n";
        } else {
            for (auto [ll, c] : table) std::cout << "l=" << ll << ": " << c << "\n";
        }
    });

    int em_datasets = 100;
    auto* rep = app.add_subcommand("repro", "run the full acceptance suite");
    rep->add_option("--datasets", em_datasets, "balanced datasets per l for the EM criteria");
    rep->callback([&] {
        auto results = mtd::run_acceptance(em_datasets);
        bool all = true;
        for (const auto& r : results) {
            std::cout << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << "\n"
                      << "      " << r.detail << "  (" << r.seconds << "s)\n";
            all = all && r.passed;
        }
        if (!all) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const mtd::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
