#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tissuefit/config.hpp"
#include "tissuefit/dataset.hpp"
#include "tissuefit/quality.hpp"
#include "tissuefit/report.hpp"

namespace fs = std::filesystem;
using namespace tissuefit;

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, double> out;
    for (const auto& kv : kvs) {
        const size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("expected name=value, got '" + kv + "'");
        out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    return out;
}

std::vector<Dataset> load_all(const std::vector<std::string>& paths) {
    std::vector<Dataset> data;
    for (const auto& p : paths) {
        auto curves = load_datasets(p);
        data.insert(data.end(), curves.begin(), curves.end());
    }
    return data;
}

// Missing inputs exit with a distinct code so scripted runs can tell
// bad paths from failed fits.
int check_paths(const std::vector<std::string>& paths) {
    for (const auto& p : paths)
        if (!fs::exists(p)) {
            std::cerr << "error: dataset file not found: " << p << "\n";
            return 2;
        }
    return 0;
}

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> models;
    std::vector<std::string> data;
    double phi_deg = 0.0;
    std::uint64_t seed = 0;
    int quad_order = 0;
    bool fix_weights = false;
    bool fit_phi = false;
    bool dbb_cutoff = false;
    double w1 = -1.0;
    std::string out;
};

void add_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--config", o.config_path, "INI-style run configuration file");
    sub->add_option("--model", o.models, "model name (repeatable)");
    sub->add_option("--data", o.data, "dataset CSV path (repeatable)");
    sub->add_option("--phi", o.phi_deg, "mean fiber angle in degrees");
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--quad-order", o.quad_order, "spherical quadrature order");
    sub->add_flag("--fix-weights", o.fix_weights, "freeze the curve weights at w1, 1-w1");
    sub->add_flag("--fit-phi", o.fit_phi, "treat the mean fiber angle as a fitted parameter");
    sub->add_flag("--dbb-cutoff", o.dbb_cutoff, "zero the DBB directional term under contraction");
    sub->add_option("--w1", o.w1, "weight of the first curve");
    sub->add_option("--out", o.out, "output directory (or file for synth)");
}

RunConfig build_config(const CLI::App* sub, const CommonOpts& o) {
    RunConfig cfg;
    if (!o.config_path.empty()) {
        if (!fs::exists(o.config_path))
            throw std::runtime_error("config file not found: " + o.config_path);
        cfg = load_run_config(o.config_path);
    }
    if (sub->count("--model")) {
        cfg.models.clear();
        for (const auto& name : o.models) cfg.models.push_back(model_from_name(name));
    }
    if (sub->count("--data")) cfg.data_paths = o.data;
    if (sub->count("--phi")) cfg.phi_deg = o.phi_deg;
    if (sub->count("--seed")) cfg.seed = o.seed;
    if (sub->count("--quad-order")) cfg.quad_order = o.quad_order;
    if (sub->count("--fix-weights")) cfg.fix_weights = true;
    if (sub->count("--fit-phi")) cfg.fit_phi = true;
    if (sub->count("--dbb-cutoff")) cfg.dbb_cutoff = true;
    if (sub->count("--w1")) cfg.w1 = o.w1;
    if (sub->count("--out")) cfg.out_dir = o.out;
    cfg.ga.seed = cfg.seed;
    return cfg;
}

// Pinned parameters for one model, from the config's per-model section
// overlaid with --params values.
ModelSpec pinned_spec(const RunConfig& cfg, ModelKind kind,
                      const std::map<std::string, double>& cli_params) {
    std::map<std::string, double> named;
    const auto it = cfg.overrides.find(kind);
    if (it != cfg.overrides.end()) named = it->second.fixed;
    for (const auto& [k, v] : cli_params) named[k] = v;
    ModelSpec m = ModelSpec::make(kind, named, cfg.phi_deg * kDegToRad);
    m.dbb_cutoff = cfg.dbb_cutoff;
    m.validate();
    return m;
}

int cmd_fit(const CLI::App* sub, const CommonOpts& o) {
    RunConfig cfg = build_config(sub, o);
    if (cfg.models.empty()) throw std::runtime_error("no models selected (use --model or config)");
    if (cfg.data_paths.empty()) throw std::runtime_error("no datasets given (use --data or config)");
    if (int rc = check_paths(cfg.data_paths)) return rc;
    const std::vector<Dataset> data = load_all(cfg.data_paths);
    const SphereQuadrature quad = SphereQuadrature::product_rule(cfg.quad_order);

    std::vector<RankEntry> entries;
    bool any_failed = false;
    for (ModelKind kind : cfg.models) {
        const std::string name = model_name(kind);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            FitProblem prob = problem_for(cfg, kind, data);
            const FitResult fit = hybrid_fit(prob, cfg.ga, cfg.refine);
            const QualityReport q = evaluate_quality(fit.model, data, &quad);
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            write_file(fs::path(cfg.out_dir) / (name + ".json"), fit_report_json(fit, q, cfg));
            write_file(fs::path(cfg.out_dir) / (name + ".txt"),
                       fit_report_text(fit, q, cfg, secs));
            write_file(fs::path(cfg.out_dir) / (name + "_curves.csv"),
                       fitted_curves_csv(fit.model, data, &quad));
            entries.push_back({kind, q.chi2_total, static_cast<int>(param_schema(kind).size())});
            std::cout << name << ": cost " << format_double(fit.cost_weighted) << ", chi2 "
                      << format_double(q.chi2_total) << (fit.converged ? "" : " (not converged)")
                      << "\n";
        } catch (const std::exception& e) {
            any_failed = true;
            write_file(fs::path(cfg.out_dir) / (name + ".json"),
                       failure_report_json(kind, e.what(), cfg));
            std::cout << name << ": failed (" << e.what() << ")\n";
        }
    }
    write_file(fs::path(cfg.out_dir) / "ranking.csv", ranking_csv(rank_models(entries)));
    std::cout << "reports written to " << cfg.out_dir << "\n";
    return entries.empty() && any_failed ? 1 : 0;
}

int cmd_eval(const CLI::App* sub, const CommonOpts& o,
             const std::vector<std::string>& param_kvs) {
    RunConfig cfg = build_config(sub, o);
    if (cfg.models.size() != 1) throw std::runtime_error("eval expects exactly one --model");
    if (cfg.data_paths.empty()) throw std::runtime_error("no datasets given (use --data or config)");
    if (int rc = check_paths(cfg.data_paths)) return rc;
    const std::vector<Dataset> data = load_all(cfg.data_paths);
    const SphereQuadrature quad = SphereQuadrature::product_rule(cfg.quad_order);
    const ModelSpec m = pinned_spec(cfg, cfg.models[0], parse_params(param_kvs));

    const QualityReport q = evaluate_quality(m, data, &quad);
    std::cout << "model " << model_name(m.kind) << "\n";
    for (const auto& c : q.curves)
        std::cout << "  " << c.label << ": chi2 regions " << format_double(c.chi2_region[0])
                  << ", " << format_double(c.chi2_region[1]) << ", "
                  << format_double(c.chi2_region[2]) << "\n";
    std::cout << "  total chi2 " << format_double(q.chi2_total) << "\n";
    if (q.excluded > 0) std::cout << "  excluded points " << q.excluded << "\n";
    if (sub->count("--out")) {
        const std::string name = model_name(m.kind);
        write_file(fs::path(cfg.out_dir) / (name + "_curves.csv"),
                   fitted_curves_csv(m, data, &quad));
        std::cout << "curves written to " << cfg.out_dir << "\n";
    }
    return 0;
}

int cmd_synth(const CLI::App* sub, const CommonOpts& o, const std::vector<std::string>& param_kvs,
              const std::string& mode_name_s, int component, double lambda_max, int n_points,
              double noise) {
    RunConfig cfg = build_config(sub, o);
    if (cfg.models.size() != 1) throw std::runtime_error("synth expects exactly one --model");
    if (!sub->count("--out")) throw std::runtime_error("synth requires --out <file.csv>");
    const SphereQuadrature quad = SphereQuadrature::product_rule(cfg.quad_order);
    const ModelSpec m = pinned_spec(cfg, cfg.models[0], parse_params(param_kvs));
    const Dataset ds = synth_dataset(m, mode_from_name(mode_name_s), component, lambda_max,
                                     n_points, noise, cfg.seed, &quad);
    if (fs::path(cfg.out_dir).has_parent_path())
        fs::create_directories(fs::path(cfg.out_dir).parent_path());
    save_datasets(cfg.out_dir, {ds});
    std::cout << "wrote " << ds.points.size() << " points to " << cfg.out_dir << "\n";
    return 0;
}

int cmd_polar(const CLI::App* sub, const CommonOpts& o,
              const std::vector<std::string>& param_kvs) {
    RunConfig cfg = build_config(sub, o);
    if (cfg.models.empty()) throw std::runtime_error("no models selected (use --model or config)");
    const SphereQuadrature quad = SphereQuadrature::product_rule(cfg.quad_order);
    const auto cli_params = parse_params(param_kvs);
    for (ModelKind kind : cfg.models) {
        const std::string name = model_name(kind);
        const ModelSpec m = pinned_spec(cfg, kind, cli_params);
        write_file(fs::path(cfg.out_dir) / (name + "_ds.csv"), polar_ds_csv(m, &quad));
        if (has_density(kind))
            write_file(fs::path(cfg.out_dir) / (name + "_density.csv"),
                       polar_density_csv(m, &quad));
    }
    std::cout << "polar data written to " << cfg.out_dir << "\n";
    return 0;
}

int cmd_rank(const CLI::App* sub, const CommonOpts& o) {
    RunConfig cfg = build_config(sub, o);
    if (cfg.models.empty()) throw std::runtime_error("no models selected (use --model or config)");
    if (cfg.data_paths.empty()) throw std::runtime_error("no datasets given (use --data or config)");
    if (int rc = check_paths(cfg.data_paths)) return rc;
    const std::vector<Dataset> data = load_all(cfg.data_paths);
    const SphereQuadrature quad = SphereQuadrature::product_rule(cfg.quad_order);

    std::vector<RankEntry> entries;
    for (ModelKind kind : cfg.models) {
        const ModelSpec m = pinned_spec(cfg, kind, {});
        const QualityReport q = evaluate_quality(m, data, &quad);
        entries.push_back({kind, q.chi2_total, static_cast<int>(param_schema(kind).size())});
    }
    const auto table = rank_models(std::move(entries));
    std::cout << "rank  model      type    chi2                    nop\n";
    for (size_t i = 0; i < table.size(); ++i) {
        std::string row = std::to_string(i + 1);
        row.resize(6, ' ');
        std::string name = model_name(table[i].kind);
        name.resize(11, ' ');
        std::string tag = formulation_tag(table[i].kind);
        tag.resize(8, ' ');
        std::string chi = format_double(table[i].chi2) + ' ';
        if (chi.size() < 24) chi.resize(24, ' ');
        std::cout << row << name << tag << chi << table[i].nop << "\n";
    }
    if (sub->count("--out"))
        write_file(fs::path(cfg.out_dir) / "ranking.csv", ranking_csv(table));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anisotropic hyperelastic model evaluation and identification"};
    app.require_subcommand(1);

    CommonOpts o_fit, o_eval, o_synth, o_polar, o_rank;
    std::vector<std::string> eval_params, synth_params, polar_params;
    std::string synth_mode = "ET";
    int synth_component = 1, synth_n = 20;
    double synth_lmax = 1.2, synth_noise = 0.0;

    auto* fit = app.add_subcommand("fit", "identify parameters for the selected models");
    add_common(fit, o_fit);

    auto* eval = app.add_subcommand("eval", "quality of fit for given parameters");
    add_common(eval, o_eval);
    eval->add_option("--params", eval_params, "parameter assignments name=value (repeatable)");

    auto* synth = app.add_subcommand("synth", "generate a model curve as a dataset CSV");
    add_common(synth, o_synth);
    synth->add_option("--params", synth_params, "parameter assignments name=value (repeatable)");
    synth->add_option("--mode", synth_mode, "deformation mode UT1|UT2|ET");
    synth->add_option("--component", synth_component, "observed stress component (1 or 2)");
    synth->add_option("--lambda-max", synth_lmax, "largest stretch");
    synth->add_option("--n", synth_n, "number of points");
    synth->add_option("--noise", synth_noise, "relative Gaussian noise level");

    auto* polar = app.add_subcommand("polar", "directional stiffness and density polar data");
    add_common(polar, o_polar);
    polar->add_option("--params", polar_params, "parameter assignments name=value (repeatable)");

    auto* rank = app.add_subcommand("rank", "rank configured models on a dataset");
    add_common(rank, o_rank);

    CLI11_PARSE(app, argc, argv);

    try {
        if (fit->parsed()) return cmd_fit(fit, o_fit);
        if (eval->parsed()) return cmd_eval(eval, o_eval, eval_params);
        if (synth->parsed())
            return cmd_synth(synth, o_synth, synth_params, synth_mode, synth_component,
                             synth_lmax, synth_n, synth_noise);
        if (polar->parsed()) return cmd_polar(polar, o_polar, polar_params);
        if (rank->parsed()) return cmd_rank(rank, o_rank);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
