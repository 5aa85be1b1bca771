#include "tissuefit/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tissuefit {

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& v, const std::string& origin, int line) {
    size_t pos = 0;
    double d = 0;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        fail(origin, line, "expected a number, got '" + v + "'");
    }
    if (pos != v.size()) fail(origin, line, "trailing characters after number in '" + v + "'");
    return d;
}

long long to_int(const std::string& v, const std::string& origin, int line) {
    size_t pos = 0;
    long long n = 0;
    try {
        n = std::stoll(v, &pos);
    } catch (const std::exception&) {
        fail(origin, line, "expected an integer, got '" + v + "'");
    }
    if (pos != v.size()) fail(origin, line, "trailing characters after integer in '" + v + "'");
    return n;
}

bool to_bool(const std::string& v, const std::string& origin, int line) {
    const std::string s = lower(v);
    if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0") return false;
    fail(origin, line, "expected a boolean, got '" + v + "'");
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section = "run";
    int ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        std::string line = raw;
        const size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(origin, ln, "unterminated section header");
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (section.empty()) fail(origin, ln, "empty section name");
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos) fail(origin, ln, "expected key = value");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail(origin, ln, "empty key");

        if (section == "run") {
            if (key == "models") {
                cfg.models.clear();
                for (const auto& name : split_list(val)) cfg.models.push_back(model_from_name(name));
            } else if (key == "data") {
                cfg.data_paths = split_list(val);
            } else if (key == "phi_deg") {
                cfg.phi_deg = to_double(val, origin, ln);
            } else if (key == "fit_phi") {
                cfg.fit_phi = to_bool(val, origin, ln);
            } else if (key == "fix_weights") {
                cfg.fix_weights = to_bool(val, origin, ln);
            } else if (key == "w1") {
                cfg.w1 = to_double(val, origin, ln);
            } else if (key == "quad_order") {
                cfg.quad_order = static_cast<int>(to_int(val, origin, ln));
            } else if (key == "dbb_cutoff") {
                cfg.dbb_cutoff = to_bool(val, origin, ln);
            } else if (key == "seed") {
                cfg.seed = static_cast<std::uint64_t>(to_int(val, origin, ln));
            } else if (key == "out") {
                cfg.out_dir = val;
            } else {
                fail(origin, ln, "unknown [run] key '" + key + "'");
            }
        } else if (section == "ga") {
            if (key == "population") cfg.ga.population = static_cast<int>(to_int(val, origin, ln));
            else if (key == "generations") cfg.ga.generations = static_cast<int>(to_int(val, origin, ln));
            else if (key == "crossover") cfg.ga.crossover = to_double(val, origin, ln);
            else if (key == "mutation_rate") cfg.ga.mutation_rate = to_double(val, origin, ln);
            else if (key == "mutation_scale") cfg.ga.mutation_scale = to_double(val, origin, ln);
            else if (key == "elites") cfg.ga.elites = static_cast<int>(to_int(val, origin, ln));
            else if (key == "tournament") cfg.ga.tournament = static_cast<int>(to_int(val, origin, ln));
            else if (key == "refine_top") cfg.ga.refine_top = static_cast<int>(to_int(val, origin, ln));
            else fail(origin, ln, "unknown [ga] key '" + key + "'");
        } else if (section == "refine") {
            if (key == "max_iters") cfg.refine.max_iters = static_cast<int>(to_int(val, origin, ln));
            else if (key == "grad_tol") cfg.refine.grad_tol = to_double(val, origin, ln);
            else if (key == "cost_tol") cfg.refine.cost_tol = to_double(val, origin, ln);
            else if (key == "fd_step") cfg.refine.fd_step = to_double(val, origin, ln);
            else fail(origin, ln, "unknown [refine] key '" + key + "'");
        } else {
            ModelKind kind;
            try {
                kind = model_from_name(section);
            } catch (const std::exception&) {
                fail(origin, ln, "unknown section [" + section + "]");
            }
            auto& ov = cfg.overrides[kind];
            const size_t dot = key.find('.');
            const std::string pname = dot == std::string::npos ? key : key.substr(0, dot);
            bool known = false;
            for (const auto& def : param_schema(kind)) known = known || def.name == pname;
            if (!known)
                fail(origin, ln, "model '" + section + "' has no parameter '" + pname + "'");
            if (dot == std::string::npos) {
                ov.fixed[pname] = to_double(val, origin, ln);
            } else {
                const std::string attr = key.substr(dot + 1);
                if (attr == "min") ov.lo[pname] = to_double(val, origin, ln);
                else if (attr == "max") ov.hi[pname] = to_double(val, origin, ln);
                else if (attr == "log") ov.log_scale[pname] = to_bool(val, origin, ln);
                else fail(origin, ln, "unknown attribute '" + attr + "' (use min/max/log)");
            }
        }
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str(), path);
}

FitProblem problem_for(const RunConfig& cfg, ModelKind kind, std::vector<Dataset> data) {
    FitProblem p = FitProblem::for_model(kind, cfg.phi_deg * kDegToRad, std::move(data));
    p.fix_weights = cfg.fix_weights;
    p.w1 = cfg.w1;
    p.quad_order = cfg.quad_order;
    p.dbb_cutoff = cfg.dbb_cutoff;
    p.fit_phi = cfg.fit_phi;
    const auto it = cfg.overrides.find(kind);
    if (it != cfg.overrides.end()) {
        const ModelOverrides& ov = it->second;
        std::vector<ParamBounds> kept;
        for (ParamBounds b : p.bounds) {
            if (ov.fixed.count(b.name)) continue;  // pinned, leaves the search
            if (ov.lo.count(b.name)) b.lo = ov.lo.at(b.name);
            if (ov.hi.count(b.name)) b.hi = ov.hi.at(b.name);
            if (ov.log_scale.count(b.name)) b.log_scale = ov.log_scale.at(b.name);
            if (!(b.lo < b.hi))
                throw std::runtime_error("bounds for '" + b.name + "' are not well ordered");
            if (b.log_scale && b.lo <= 0.0)
                throw std::runtime_error("log-scale bounds for '" + b.name +
                                         "' require a positive lower bound");
            kept.push_back(std::move(b));
        }
        p.bounds = std::move(kept);
        p.fixed = ov.fixed;
    }
    return p;
}

std::string canonical_config(const RunConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "run.models=";
    for (size_t i = 0; i < cfg.models.size(); ++i)
        os << (i ? "," : "") << model_name(cfg.models[i]);
    os << "\nrun.data=";
    for (size_t i = 0; i < cfg.data_paths.size(); ++i)
        os << (i ? "," : "") << cfg.data_paths[i];
    os << "\nrun.phi_deg=" << cfg.phi_deg;
    os << "\nrun.fit_phi=" << cfg.fit_phi;
    os << "\nrun.fix_weights=" << cfg.fix_weights;
    os << "\nrun.w1=" << cfg.w1;
    os << "\nrun.quad_order=" << cfg.quad_order;
    os << "\nrun.dbb_cutoff=" << cfg.dbb_cutoff;
    os << "\nrun.seed=" << cfg.seed;
    os << "\nga.population=" << cfg.ga.population;
    os << "\nga.generations=" << cfg.ga.generations;
    os << "\nga.crossover=" << cfg.ga.crossover;
    os << "\nga.mutation_rate=" << cfg.ga.mutation_rate;
    os << "\nga.mutation_scale=" << cfg.ga.mutation_scale;
    os << "\nga.elites=" << cfg.ga.elites;
    os << "\nga.tournament=" << cfg.ga.tournament;
    os << "\nga.refine_top=" << cfg.ga.refine_top;
    os << "\nrefine.max_iters=" << cfg.refine.max_iters;
    os << "\nrefine.grad_tol=" << cfg.refine.grad_tol;
    os << "\nrefine.cost_tol=" << cfg.refine.cost_tol;
    os << "\nrefine.fd_step=" << cfg.refine.fd_step;
    for (const auto& [kind, ov] : cfg.overrides) {
        const std::string tag = model_name(kind);
        for (const auto& [k, v] : ov.fixed) os << "\n" << tag << "." << k << "=" << v;
        for (const auto& [k, v] : ov.lo) os << "\n" << tag << "." << k << ".min=" << v;
        for (const auto& [k, v] : ov.hi) os << "\n" << tag << "." << k << ".max=" << v;
        for (const auto& [k, v] : ov.log_scale) os << "\n" << tag << "." << k << ".log=" << v;
    }
    os << "\n";
    return os.str();
}

}  // namespace tissuefit
