#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tissuefit/models.hpp"
#include "tissuefit/optimize.hpp"

using namespace tissuefit;

namespace {

constexpr double kPhi26 = 26.0 * std::numbers::pi / 180.0;

ModelSpec goh_truth() {
    return ModelSpec::make(ModelKind::GOH,
                           {{"mu", 1.7416}, {"k1", 4.4460}, {"k2", 161.3920},
                            {"kappa", 0.2256}},
                           kPhi26);
}

// 1-parameter toy: neo-Hookean stress is linear in mu, so the cost is an
// exact parabola with its minimum at the generating modulus.
FitProblem neo_problem(double mu_truth, double lo, double hi) {
    const auto truth = ModelSpec::make(ModelKind::NeoHooke, {{"mu", mu_truth}}, 0.0);
    auto prob = FitProblem::for_model(ModelKind::NeoHooke, 0.0,
                                      {synth_dataset(truth, Mode::UT1, 1, 1.3, 10, 0.0, 1)});
    prob.bounds = {{"mu", lo, hi, false}};
    return prob;
}

}  // namespace

TEST_CASE("default search domains follow the schema") {
    const auto prob = FitProblem::for_model(ModelKind::GOH, kPhi26, {});
    const auto& schema = param_schema(ModelKind::GOH);
    REQUIRE(prob.bounds.size() == schema.size());
    for (std::size_t i = 0; i < schema.size(); ++i) {
        CHECK(prob.bounds[i].name == schema[i].name);
        CHECK(prob.bounds[i].lo == schema[i].lo);
        CHECK(prob.bounds[i].hi == schema[i].hi);
        const auto& b = prob.bounds[i];
        CHECK(b.log_scale == (b.lo > 0.0 && b.hi / b.lo > 100.0));
    }
    CHECK(prob.spec_from({1.0, 2.0, 50.0, 0.1}).param("k2") == 50.0);
    CHECK_THROWS_AS(prob.spec_from({1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("fixed parameters are merged into candidate specs") {
    auto prob = FitProblem::for_model(ModelKind::GOH, kPhi26, {});
    prob.fixed["kappa"] = 0.2256;
    prob.bounds.erase(prob.bounds.begin() + 3);
    const auto m = prob.spec_from({1.7416, 4.4460, 161.3920});
    CHECK(m.param("kappa") == 0.2256);
    CHECK(m.param("mu") == 1.7416);
    CHECK(m.fibers.phi == doctest::Approx(kPhi26).epsilon(1e-15));
}

TEST_CASE("curve error and weighted cost") {
    const auto truth = ModelSpec::make(ModelKind::NeoHooke, {{"mu", 2.5}}, 0.0);
    const auto ds = synth_dataset(truth, Mode::UT1, 1, 1.3, 10, 0.0, 1);
    auto off = truth;
    off.set_param("mu", 3.0);
    double expect = 0.0;
    for (const auto& pt : ds.points) {
        const double model = nominal_stress(off, {Mode::UT1, pt.lambda}).P1;
        expect += (model - pt.stress) * (model - pt.stress);
    }
    CHECK(curve_error(truth, ds) == doctest::Approx(0.0).epsilon(1e-18));
    CHECK(curve_error(off, ds) == doctest::Approx(expect).epsilon(1e-12));

    const auto ds2 = synth_dataset(truth, Mode::ET, 1, 1.2, 6, 0.0, 2);
    const double e1 = curve_error(off, ds);
    const double e2 = curve_error(off, ds2);
    CHECK(total_cost(off, {ds, ds2}, {0.25, 0.75}) ==
          doctest::Approx(0.25 * e1 + 0.75 * e2).epsilon(1e-13));
    CHECK_THROWS_AS(total_cost(off, {ds, ds2}, {0.6, 0.3}), std::invalid_argument);
    CHECK_THROWS_AS(total_cost(off, {ds, ds2}, {1.2, -0.2}), std::invalid_argument);
    CHECK_THROWS_AS(total_cost(off, {ds, ds2}, {1.0}), std::invalid_argument);
}

TEST_CASE("saturation inside the objective surfaces as an exception") {
    const auto os = ModelSpec::make(ModelKind::OS,
                                    {{"mu", 2.5537}, {"k1", 3.38107}, {"Jf", 0.1149},
                                     {"Jm", 0.2369}},
                                    kPhi26);
    Dataset deep;
    deep.direction = "circumferential";
    deep.mode = Mode::ET;
    deep.points = {{1.05, 1.0}, {1.25, 5.0}};
    CHECK_THROWS_AS(curve_error(os, deep), SaturationError);
    CHECK_THROWS_AS(total_cost(os, {deep}, {1.0}), SaturationError);
}

TEST_CASE("genetic stage finds the toy basin") {
    const auto prob = neo_problem(2.5, 0.1, 10.0);
    GAConfig cfg;
    cfg.population = 40;
    cfg.generations = 50;
    cfg.seed = 3;
    const auto r = ga_search(prob, cfg);
    CHECK(r.model.param("mu") == doctest::Approx(2.5).epsilon(0.05));
    CHECK(r.ga_trace.size() == 50);  // one best-cost entry per generation
    for (std::size_t i = 1; i < r.ga_trace.size(); ++i)
        CHECK(r.ga_trace[i] <= r.ga_trace[i - 1] + 1e-15);
    CHECK(r.weights == std::vector<double>{1.0});
    CHECK(r.cost_evaluations > 0);
    CHECK(r.seed == 3);

    GAConfig tiny = cfg;
    tiny.population = 1;  // below twice the search dimension
    CHECK_THROWS_AS(ga_search(prob, tiny), std::invalid_argument);
}

TEST_CASE("gradient stage polishes to the analytic minimum") {
    const auto prob = neo_problem(2.5, 0.1, 10.0);
    FitResult start;
    start.model = prob.spec_from({1.0});
    start.seed = 42;
    const auto r = gradient_refine(prob, start, {});
    CHECK(r.model.param("mu") == doctest::Approx(2.5).epsilon(1e-8));
    CHECK(r.cost_weighted < 1e-16);
    CHECK(r.converged);
    CHECK(r.kkt_residual < 1e-6);
    CHECK(r.seed == 42);
    for (std::size_t i = 1; i < r.refine_trace.size(); ++i)
        CHECK(r.refine_trace[i] <= r.refine_trace[i - 1] + 1e-15);
}

TEST_CASE("active bounds carry positive multipliers") {
    // generating modulus 5 lies below the admissible box [6, 10]
    const auto prob = neo_problem(5.0, 6.0, 10.0);
    FitResult start;
    start.model = prob.spec_from({8.0});
    const auto r = gradient_refine(prob, start, {});
    CHECK(r.model.param("mu") == doctest::Approx(6.0).epsilon(1e-10));
    CHECK(r.kkt_residual < 1e-8);
    REQUIRE(r.bound_multipliers.size() == 1);
    CHECK(r.bound_multipliers[0] > 0.0);
    CHECK(r.converged);
}

TEST_CASE("hybrid pipeline recovers the toy modulus") {
    const auto prob = neo_problem(2.5, 0.1, 10.0);
    GAConfig ga;
    ga.population = 20;
    ga.generations = 15;
    ga.seed = 5;
    const auto hybrid = hybrid_fit(prob, ga, {});
    CHECK(hybrid.model.param("mu") == doctest::Approx(2.5).epsilon(1e-7));
    CHECK(hybrid.cost_weighted < 1e-14);
    const auto ga_only = ga_search(prob, ga);
    CHECK(hybrid.cost_weighted <= ga_only.cost_weighted + 1e-18);
    CHECK(hybrid.cost_evaluations > ga_only.cost_evaluations);
}

TEST_CASE("same seed reproduces the fit bit for bit") {
    const auto truth = goh_truth();
    std::vector<Dataset> data{synth_dataset(truth, Mode::ET, 1, 1.2, 8, 0.03, 21),
                              synth_dataset(truth, Mode::ET, 2, 1.2, 8, 0.03, 22)};
    auto prob = FitProblem::for_model(ModelKind::GOH, kPhi26, data);
    GAConfig ga;
    ga.population = 16;
    ga.generations = 10;
    ga.refine_top = 2;
    ga.seed = 9;
    RefineConfig rc;
    rc.max_iters = 60;
    const auto a = hybrid_fit(prob, ga, rc);
    const auto b = hybrid_fit(prob, ga, rc);
    CHECK(a.model.params == b.model.params);
    CHECK(a.weights == b.weights);
    CHECK(a.cost_weighted == b.cost_weighted);
    CHECK(a.ga_trace == b.ga_trace);
    CHECK(a.refine_trace == b.refine_trace);
    CHECK(a.cost_evaluations == b.cost_evaluations);

    ga.seed = 10;
    const auto c = hybrid_fit(prob, ga, rc);
    CHECK(a.ga_trace != c.ga_trace);
}

TEST_CASE("curve weights") {
    const auto truth = goh_truth();
    std::vector<Dataset> data{synth_dataset(truth, Mode::ET, 1, 1.2, 8, 0.02, 31),
                              synth_dataset(truth, Mode::ET, 2, 1.2, 8, 0.02, 32)};
    auto prob = FitProblem::for_model(ModelKind::GOH, kPhi26, data);
    GAConfig ga;
    ga.population = 16;
    ga.generations = 8;
    ga.refine_top = 1;
    ga.seed = 2;
    RefineConfig rc;
    rc.max_iters = 40;

    SUBCASE("free weights stay convex") {
        const auto r = hybrid_fit(prob, ga, rc);
        REQUIRE(r.weights.size() == 2);
        CHECK(r.weights[0] + r.weights[1] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.weights[0] >= 0.0);
        CHECK(r.weights[1] >= 0.0);
        REQUIRE(r.curve_errors.size() == 2);
        CHECK(r.cost_unweighted ==
              doctest::Approx(r.curve_errors[0] + r.curve_errors[1]).epsilon(1e-12));
        CHECK(r.cost_weighted ==
              doctest::Approx(r.weights[0] * r.curve_errors[0] +
                              r.weights[1] * r.curve_errors[1])
                  .epsilon(1e-10));
    }
    SUBCASE("fixed weights pass through") {
        prob.fix_weights = true;
        prob.w1 = 0.7;
        const auto r = hybrid_fit(prob, ga, rc);
        REQUIRE(r.weights.size() == 2);
        CHECK(r.weights[0] == 0.7);
        CHECK(r.weights[1] == doctest::Approx(0.3).epsilon(1e-15));
    }
}

TEST_CASE("optional fiber angle search") {
    const auto truth = goh_truth();
    auto prob = FitProblem::for_model(
        ModelKind::GOH, 20.0 * std::numbers::pi / 180.0,
        {synth_dataset(truth, Mode::ET, 1, 1.2, 12, 0.0, 41),
         synth_dataset(truth, Mode::ET, 2, 1.2, 12, 0.0, 42)});
    prob.fit_phi = true;
    FitResult start;
    start.model = truth;
    start.model.fibers = FiberGeometry::from_degrees(20.0);  // angle off, parameters exact
    RefineConfig rc;
    rc.max_iters = 300;
    const auto r = gradient_refine(prob, start, rc);
    CHECK(r.cost_weighted < 1e-8);
    CHECK(r.model.fibers.phi == doctest::Approx(kPhi26).epsilon(5e-3));
}
