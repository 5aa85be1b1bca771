#include "tissuefit/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tissuefit/rng.hpp"

namespace tissuefit {

namespace {

const char* kHeader = "lambda,stress,kind,unit,direction,mode";

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        // trim whitespace
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    return out;
}

bool valid_direction(const std::string& d) {
    return d == "axial" || d == "circumferential" || d == "longitudinal" || d == "transverse";
}

[[noreturn]] void fail(const std::string& path, size_t line, const std::string& msg) {
    std::ostringstream os;
    os << path << ":" << line << ": " << msg;
    throw std::invalid_argument(os.str());
}

}  // namespace

double Dataset::lambda_max() const {
    double m = 1.0;
    for (const auto& p : points) m = std::max(m, p.lambda);
    return m;
}

int Dataset::component() const {
    if (mode == Mode::UT1) return 1;
    if (mode == Mode::UT2) return 2;
    // equibiaxial: the direction label picks the in-plane axis
    if (direction == "circumferential" || direction == "transverse") return 1;
    return 2;  // axial | longitudinal
}

std::vector<DataPoint> Dataset::nominal_points() const {
    std::vector<DataPoint> out = points;
    if (kind == StressKind::Cauchy)
        for (auto& p : out)
            p.stress = convert_stress(p.stress, StressKind::Cauchy, StressKind::Nominal, p.lambda);
    return out;
}

std::vector<Dataset> load_datasets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open dataset file " + path);
    std::string line;
    size_t lineno = 0;
    if (!std::getline(in, line)) fail(path, 1, "empty file");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (split_csv(line) != split_csv(kHeader))
        fail(path, 1, std::string("expected header '") + kHeader + "'");

    std::vector<Dataset> curves;
    auto curve_for = [&](const std::string& dir, Mode mode, StressKind kind) -> Dataset& {
        for (auto& c : curves)
            if (c.direction == dir && c.mode == mode) {
                if (c.kind != kind)
                    fail(path, lineno, "mixed stress kinds within one curve");
                return c;
            }
        Dataset d;
        d.direction = dir;
        d.mode = mode;
        d.kind = kind;
        curves.push_back(d);
        return curves.back();
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 6) fail(path, lineno, "expected 6 columns");
        double lambda = 0, stress = 0;
        try {
            lambda = std::stod(cells[0]);
            stress = std::stod(cells[1]);
        } catch (const std::exception&) {
            fail(path, lineno, "lambda/stress not numeric");
        }
        if (!std::isfinite(lambda) || lambda < 1.0)
            fail(path, lineno, "lambda must be finite and >= 1");
        if (!std::isfinite(stress)) fail(path, lineno, "stress must be finite");
        StressKind kind;
        try {
            kind = stress_kind_from_name(cells[2]);
        } catch (const std::exception& e) {
            fail(path, lineno, e.what());
        }
        double scale = 1.0;
        if (cells[3] == "kPa")
            scale = 1e-3;
        else if (cells[3] != "MPa")
            fail(path, lineno, "unit must be MPa or kPa");
        if (!valid_direction(cells[4]))
            fail(path, lineno,
                 "direction must be axial, circumferential, longitudinal or transverse");
        Mode mode;
        try {
            mode = mode_from_name(cells[5]);
        } catch (const std::exception& e) {
            fail(path, lineno, e.what());
        }
        Dataset& c = curve_for(cells[4], mode, kind);
        if (!c.points.empty() && lambda <= c.points.back().lambda)
            fail(path, lineno,
                 lambda == c.points.back().lambda ? "duplicate lambda in curve"
                                                  : "lambda must be strictly increasing");
        c.points.push_back({lambda, stress * scale});
    }
    if (curves.empty()) throw std::invalid_argument(path + ": no data rows");
    for (const auto& c : curves)
        if (c.points.size() < 2)
            throw std::invalid_argument(path + ": curve '" + c.direction + "/" +
                                        mode_name(c.mode) + "' has fewer than 2 points");
    return curves;
}

Dataset load_dataset(const std::string& path) {
    auto curves = load_datasets(path);
    if (curves.size() != 1)
        throw std::invalid_argument(path + ": expected exactly one curve, found " +
                                    std::to_string(curves.size()));
    return curves.front();
}

void save_datasets(const std::string& path, const std::vector<Dataset>& curves) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write dataset file " + path);
    out << kHeader << "\n";
    out.precision(17);
    for (const auto& c : curves)
        for (const auto& p : c.points)
            out << p.lambda << "," << p.stress << "," << stress_kind_name(c.kind) << ",MPa,"
                << c.direction << "," << mode_name(c.mode) << "\n";
    if (!out) throw std::runtime_error("failed writing " + path);
}

Dataset synth_dataset(const ModelSpec& m, Mode mode, int component, double lambda_max,
                      int n_points, double noise_rel, std::uint64_t seed,
                      const SphereQuadrature* quad) {
    if (n_points < 2) throw std::invalid_argument("need at least 2 synthetic points");
    if (!(lambda_max > 1.0)) throw std::invalid_argument("lambda_max must exceed 1");
    if (component != 1 && component != 2)
        throw std::invalid_argument("component must be 1 or 2");
    m.validate();
    Dataset d;
    d.mode = mode;
    d.kind = StressKind::Nominal;
    d.direction = component == 1 ? "circumferential" : "axial";
    Rng rng(seed);
    for (int i = 0; i < n_points; ++i) {
        const double lam = 1.0 + (lambda_max - 1.0) * (i + 1) / n_points;
        const StressResult sr = nominal_stress(m, {mode, lam}, quad);
        double stress = component == 1 ? sr.P1 : sr.P2;
        if (noise_rel > 0.0) stress *= 1.0 + noise_rel * rng.normal();
        d.points.push_back({lam, stress});
    }
    return d;
}

}  // namespace tissuefit
