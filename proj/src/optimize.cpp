#include "tissuefit/optimize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "tissuefit/rng.hpp"

namespace tissuefit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double decode_one(const ParamBounds& b, double x) {
    x = std::clamp(x, 0.0, 1.0);
    if (b.log_scale) {
        const double llo = std::log10(b.lo), lhi = std::log10(b.hi);
        return std::pow(10.0, llo + x * (lhi - llo));
    }
    return b.lo + x * (b.hi - b.lo);
}

double encode_one(const ParamBounds& b, double v) {
    v = std::clamp(v, b.lo, b.hi);
    if (b.log_scale) {
        const double llo = std::log10(b.lo), lhi = std::log10(b.hi);
        return (std::log10(v) - llo) / (lhi - llo);
    }
    return (v - b.lo) / (b.hi - b.lo);
}

// Shared evaluation state: quadrature, sample stretches and nominal
// experimental stresses are fixed over the whole search.
struct Evaluator {
    const FitProblem& prob;
    SphereQuadrature quad;
    std::vector<std::vector<double>> lambdas;
    std::vector<std::vector<double>> exp_nominal;
    bool free_weight = false;
    int n_eval = 0;

    explicit Evaluator(const FitProblem& p)
        : prob(p), quad(SphereQuadrature::product_rule(p.quad_order)) {
        if (p.data.empty() || p.data.size() > 2)
            throw std::invalid_argument("fit expects one or two experimental curves");
        for (const auto& ds : p.data) {
            std::vector<double> lam, pe;
            for (const auto& pt : ds.nominal_points()) {
                lam.push_back(pt.lambda);
                pe.push_back(pt.stress);
            }
            lambdas.push_back(std::move(lam));
            exp_nominal.push_back(std::move(pe));
        }
        free_weight = p.data.size() == 2 && !p.fix_weights;
    }

    int dim() const {
        return static_cast<int>(prob.bounds.size()) + (prob.fit_phi ? 1 : 0) +
               (free_weight ? 1 : 0);
    }

    std::vector<double> weights_from(const std::vector<double>& x) const {
        if (prob.data.size() == 1) return {1.0};
        const double w1 = free_weight ? std::clamp(x.back(), 0.0, 1.0) : prob.w1;
        return {w1, 1.0 - w1};
    }

    ModelSpec spec_from(const std::vector<double>& x) const {
        std::vector<double> vals(prob.bounds.size());
        for (size_t i = 0; i < prob.bounds.size(); ++i)
            vals[i] = decode_one(prob.bounds[i], x[i]);
        ModelSpec m = prob.spec_from(vals);
        if (prob.fit_phi) {
            const double t = std::clamp(x[prob.bounds.size()], 0.0, 1.0);
            m.fibers = FiberGeometry::at_angle(prob.phi_lo + t * (prob.phi_hi - prob.phi_lo));
        }
        return m;
    }

    // weighted squared-residual cost; infeasible parameter sets price out
    double cost(const std::vector<double>& x, std::vector<double>* errors = nullptr) {
        ++n_eval;
        try {
            const ModelSpec m = spec_from(x);
            m.validate();
            const std::vector<double> w = weights_from(x);
            double acc = 0.0;
            for (size_t k = 0; k < prob.data.size(); ++k) {
                const auto model =
                    nominal_stress_curve(m, prob.data[k].mode, prob.data[k].component(),
                                         lambdas[k], &quad);
                double e = 0.0;
                for (size_t i = 0; i < model.size(); ++i) {
                    const double d = model[i] - exp_nominal[k][i];
                    e += d * d;
                }
                if (errors) errors->push_back(e);
                acc += w[k] * e;
            }
            return std::isfinite(acc) ? acc : kInf;
        } catch (const std::exception&) {
            if (errors) errors->clear();
            return kInf;
        }
    }

    // sqrt(w_k)-scaled pointwise residuals; squared norm equals cost.
    // Returns false on infeasible parameters so trial steps can be rejected.
    bool residuals(const std::vector<double>& x, Eigen::VectorXd& r) {
        ++n_eval;
        try {
            const ModelSpec m = spec_from(x);
            m.validate();
            const std::vector<double> w = weights_from(x);
            size_t total = 0;
            for (const auto& lam : lambdas) total += lam.size();
            r.resize(static_cast<Eigen::Index>(total));
            Eigen::Index at = 0;
            for (size_t k = 0; k < prob.data.size(); ++k) {
                const auto model =
                    nominal_stress_curve(m, prob.data[k].mode, prob.data[k].component(),
                                         lambdas[k], &quad);
                const double sw = std::sqrt(std::max(w[k], 0.0));
                for (size_t i = 0; i < model.size(); ++i)
                    r(at++) = sw * (model[i] - exp_nominal[k][i]);
            }
            return r.allFinite();
        } catch (const std::exception&) {
            return false;
        }
    }

};

// Forward-difference residual Jacobian, stepping inward when a bound or an
// infeasible region blocks the forward side.
void build_jacobian(Evaluator& ev, const std::vector<double>& x, const Eigen::VectorXd& r,
                    double h, Eigen::MatrixXd& J) {
    const int d = ev.dim();
    J.resize(r.size(), d);
    Eigen::VectorXd rj;
    for (int j = 0; j < d; ++j) {
        bool ok = false;
        for (double sgn : {1.0, -1.0}) {
            const double room = sgn > 0 ? 1.0 - x[j] : x[j];
            const double hj = sgn * std::min(h, std::max(room, 0.0));
            if (std::abs(hj) < 1e-14) continue;
            std::vector<double> xj = x;
            xj[j] += hj;
            if (!ev.residuals(xj, rj)) continue;
            J.col(j) = (rj - r) / hj;
            ok = true;
            break;
        }
        if (!ok) J.col(j).setZero();
    }
}

std::vector<double> clamp01(std::vector<double> x) {
    for (auto& v : x) v = std::clamp(v, 0.0, 1.0);
    return x;
}

FitResult finalize(Evaluator& ev, const std::vector<double>& x, bool converged,
                   std::uint64_t seed, const RefineConfig& rc) {
    FitResult r;
    r.model = ev.spec_from(x);
    r.weights = ev.weights_from(x);
    std::vector<double> errors;
    r.cost_weighted = ev.cost(x, &errors);
    r.curve_errors = errors;
    r.cost_unweighted = std::accumulate(errors.begin(), errors.end(), 0.0);
    r.converged = converged;
    r.seed = seed;

    // first-order optimality on the box from the least-squares gradient
    // 2 J^T R, plus multiplier estimates for active bounds
    r.bound_multipliers.assign(x.size(), 0.0);
    Eigen::VectorXd res_vec;
    if (ev.residuals(x, res_vec)) {
        Eigen::MatrixXd J;
        build_jacobian(ev, x, res_vec, rc.fd_step, J);
        const Eigen::VectorXd g = 2.0 * J.transpose() * res_vec;
        double res = 0.0;
        for (size_t i = 0; i < x.size(); ++i) {
            const double proj = std::clamp(x[i] - g(i), 0.0, 1.0);
            res = std::max(res, std::abs(x[i] - proj));
            const bool at_lo = x[i] <= 1e-10, at_hi = x[i] >= 1.0 - 1e-10;
            if (at_lo) r.bound_multipliers[i] = std::max(0.0, g(i));
            if (at_hi) r.bound_multipliers[i] = std::max(0.0, -g(i));
        }
        r.kkt_residual = res;
    } else {
        r.kkt_residual = kInf;
    }
    return r;
}

struct GaState {
    std::vector<std::vector<double>> genomes;
    std::vector<double> costs;
    std::vector<double> trace;
};

GaState ga_run(Evaluator& ev, const GAConfig& cfg) {
    const int d = ev.dim();
    if (cfg.population < std::max(2, 2 * d))
        throw std::invalid_argument("GA population must be at least twice the search dimension");
    if (cfg.elites < 0 || cfg.elites >= cfg.population)
        throw std::invalid_argument("GA elite count must lie in [0, population)");
    if (cfg.tournament < 1) throw std::invalid_argument("GA tournament size must be >= 1");
    Rng rng(cfg.seed);

    GaState st;
    st.genomes.resize(cfg.population);
    st.costs.resize(cfg.population);
    for (int i = 0; i < cfg.population; ++i) {
        st.genomes[i].resize(d);
        for (double& v : st.genomes[i]) v = rng.uniform();
        st.costs[i] = ev.cost(st.genomes[i]);
    }

    auto order = [&]() {
        std::vector<int> idx(cfg.population);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            if (st.costs[a] != st.costs[b]) return st.costs[a] < st.costs[b];
            return a < b;
        });
        return idx;
    };

    auto tournament = [&]() -> const std::vector<double>& {
        int best = static_cast<int>(rng.integer(cfg.population));
        for (int t = 1; t < cfg.tournament; ++t) {
            const int c = static_cast<int>(rng.integer(cfg.population));
            if (st.costs[c] < st.costs[best]) best = c;
        }
        return st.genomes[best];
    };

    for (int gen = 0; gen < cfg.generations; ++gen) {
        const auto idx = order();
        std::vector<std::vector<double>> next;
        std::vector<double> next_cost;
        next.reserve(cfg.population);
        for (int e = 0; e < cfg.elites; ++e) {
            next.push_back(st.genomes[idx[e]]);
            next_cost.push_back(st.costs[idx[e]]);
        }
        while (static_cast<int>(next.size()) < cfg.population) {
            const auto& p1 = tournament();
            const auto& p2 = tournament();
            std::vector<double> child(d);
            if (rng.uniform() < cfg.crossover) {
                for (int i = 0; i < d; ++i) {
                    const double u = rng.uniform(-0.25, 1.25);  // blend crossover
                    child[i] = u * p1[i] + (1.0 - u) * p2[i];
                }
            } else {
                child = p1;
            }
            for (int i = 0; i < d; ++i)
                if (rng.uniform() < cfg.mutation_rate)
                    child[i] += cfg.mutation_scale * rng.normal();
            child = clamp01(std::move(child));
            next_cost.push_back(ev.cost(child));
            next.push_back(std::move(child));
        }
        st.genomes = std::move(next);
        st.costs = std::move(next_cost);
        st.trace.push_back(*std::min_element(st.costs.begin(), st.costs.end()));
    }
    return st;
}

// Projected Levenberg-Marquardt on the residual vector: Gauss-Newton steps
// with adaptive diagonal damping, clamped to the unit box. Far better suited
// to the stiff exponential least-squares surfaces here than plain descent.
std::vector<double> refine_path(Evaluator& ev, std::vector<double> x, const RefineConfig& cfg,
                                std::vector<double>& trace, bool& converged) {
    converged = false;
    Eigen::VectorXd r;
    if (!ev.residuals(x, r)) {  // infeasible start, nothing to refine
        trace.push_back(kInf);
        return x;
    }
    double fx = r.squaredNorm();
    trace.push_back(fx);
    const int d = ev.dim();
    double lam = 1e-3;
    Eigen::VectorXd rj;
    for (int it = 0; it < cfg.max_iters; ++it) {
        Eigen::MatrixXd J;
        build_jacobian(ev, x, r, cfg.fd_step, J);
        const Eigen::VectorXd g = 2.0 * J.transpose() * r;
        double pgnorm = 0.0;
        for (int j = 0; j < d; ++j)
            pgnorm = std::max(pgnorm, std::abs(x[j] - std::clamp(x[j] - g(j), 0.0, 1.0)));
        if (pgnorm < cfg.grad_tol) {
            converged = true;
            break;
        }

        const Eigen::MatrixXd JtJ = J.transpose() * J;
        bool accepted = false;
        double decrease = 0.0;
        for (int attempt = 0; attempt < 25 && !accepted; ++attempt) {
            Eigen::MatrixXd A = JtJ;
            for (int j = 0; j < d; ++j) A(j, j) += lam * std::max(JtJ(j, j), 1e-12);
            const Eigen::VectorXd delta = A.ldlt().solve(-0.5 * g);
            std::vector<double> xn(x.size());
            for (int j = 0; j < d; ++j) xn[j] = std::clamp(x[j] + delta(j), 0.0, 1.0);
            if (ev.residuals(xn, rj)) {
                const double fn = rj.squaredNorm();
                if (fn < fx) {
                    decrease = fx - fn;
                    x = std::move(xn);
                    r = rj;
                    fx = fn;
                    trace.push_back(fx);
                    lam = std::max(lam / 3.0, 1e-12);
                    accepted = true;
                    break;
                }
            }
            lam *= 4.0;
        }
        if (!accepted) break;  // damping exhausted without progress
        if (decrease < cfg.cost_tol) {
            converged = true;
            break;
        }
    }
    return x;
}

}  // namespace

FitProblem FitProblem::for_model(ModelKind kind, double phi_rad, std::vector<Dataset> data) {
    FitProblem p;
    p.kind = kind;
    p.phi = phi_rad;
    p.data = std::move(data);
    for (const auto& def : param_schema(kind)) {
        ParamBounds b;
        b.name = def.name;
        b.lo = def.lo;
        b.hi = def.hi;
        b.log_scale = def.lo > 0.0 && def.hi / def.lo > 100.0;
        p.bounds.push_back(b);
    }
    return p;
}

ModelSpec FitProblem::spec_from(const std::vector<double>& values) const {
    if (values.size() != bounds.size())
        throw std::invalid_argument("free parameter count mismatch");
    std::map<std::string, double> named = fixed;
    for (size_t i = 0; i < bounds.size(); ++i) named[bounds[i].name] = values[i];
    ModelSpec m = ModelSpec::make(kind, named, phi);
    m.dbb_cutoff = dbb_cutoff;
    return m;
}

double curve_error(const ModelSpec& m, const Dataset& ds, const SphereQuadrature* quad) {
    std::vector<double> lam, pe;
    for (const auto& pt : ds.nominal_points()) {
        lam.push_back(pt.lambda);
        pe.push_back(pt.stress);
    }
    const auto model = nominal_stress_curve(m, ds.mode, ds.component(), lam, quad);
    double e = 0.0;
    for (size_t i = 0; i < model.size(); ++i) {
        const double d = model[i] - pe[i];
        e += d * d;
    }
    return e;
}

double total_cost(const ModelSpec& m, const std::vector<Dataset>& data,
                  const std::vector<double>& weights, const SphereQuadrature* quad) {
    if (weights.size() != data.size())
        throw std::invalid_argument("one weight per curve required");
    double sum = 0.0;
    for (double w : weights) {
        if (w < -1e-12 || w > 1.0 + 1e-12)
            throw std::invalid_argument("curve weights must lie in [0, 1]");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("curve weights must sum to 1");
    double acc = 0.0;
    for (size_t k = 0; k < data.size(); ++k) acc += weights[k] * curve_error(m, data[k], quad);
    return acc;
}

FitResult ga_search(const FitProblem& prob, const GAConfig& cfg) {
    Evaluator ev(prob);
    GaState st = ga_run(ev, cfg);
    int best = 0;
    for (size_t i = 1; i < st.costs.size(); ++i)
        if (st.costs[i] < st.costs[best]) best = static_cast<int>(i);
    FitResult r = finalize(ev, st.genomes[best], false, cfg.seed, RefineConfig{});
    r.ga_trace = st.trace;
    r.cost_evaluations = ev.n_eval;
    return r;
}

FitResult gradient_refine(const FitProblem& prob, const FitResult& start,
                          const RefineConfig& cfg) {
    Evaluator ev(prob);
    std::vector<double> x;
    for (const auto& b : prob.bounds) x.push_back(encode_one(b, start.model.param(b.name)));
    if (prob.fit_phi) {
        const double span = prob.phi_hi - prob.phi_lo;
        x.push_back(std::clamp((start.model.fibers.phi - prob.phi_lo) / span, 0.0, 1.0));
    }
    if (ev.free_weight) x.push_back(start.weights.empty() ? 0.5 : start.weights[0]);
    std::vector<double> trace;
    bool conv = false;
    x = refine_path(ev, std::move(x), cfg, trace, conv);
    FitResult r = finalize(ev, x, conv, start.seed, cfg);
    r.refine_trace = trace;
    r.cost_evaluations = ev.n_eval;
    return r;
}

FitResult hybrid_fit(const FitProblem& prob, const GAConfig& ga, const RefineConfig& refine) {
    Evaluator ev(prob);
    GaState st = ga_run(ev, ga);

    // refine the distinct best GA candidates and keep the overall winner
    std::vector<int> idx(st.genomes.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (st.costs[a] != st.costs[b]) return st.costs[a] < st.costs[b];
        return a < b;
    });
    std::vector<std::vector<double>> starts;
    for (int i : idx) {
        if (static_cast<int>(starts.size()) >= std::max(1, ga.refine_top)) break;
        bool dup = false;
        for (const auto& s : starts) {
            double dist = 0.0;
            for (size_t j = 0; j < s.size(); ++j) dist = std::max(dist, std::abs(s[j] - st.genomes[i][j]));
            dup = dup || dist < 1e-6;
        }
        if (!dup) starts.push_back(st.genomes[i]);
    }

    std::vector<double> best_x;
    std::vector<double> best_trace;
    bool best_conv = false;
    double best_cost = kInf;
    for (const auto& s : starts) {
        std::vector<double> trace;
        bool conv = false;
        auto x = refine_path(ev, s, refine, trace, conv);
        const double c = trace.empty() ? kInf : trace.back();
        if (c < best_cost) {
            best_cost = c;
            best_x = std::move(x);
            best_trace = std::move(trace);
            best_conv = conv;
        }
    }
    if (best_x.empty()) {  // all refinements failed; fall back to GA best
        best_x = st.genomes[idx[0]];
        best_conv = false;
    }
    FitResult r = finalize(ev, best_x, best_conv, ga.seed, refine);
    r.ga_trace = st.trace;
    r.refine_trace = best_trace;
    r.cost_evaluations = ev.n_eval;
    return r;
}

}  // namespace tissuefit
