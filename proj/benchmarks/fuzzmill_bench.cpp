#include <benchmark/benchmark.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fuzzmill/experiment.hpp"
#include "fuzzmill/inference.hpp"
#include "fuzzmill/pso.hpp"
#include "fuzzmill/rulebase_opt.hpp"
#include "fuzzmill/wpp.hpp"

namespace {

using namespace fuzzmill;

const RuleBase& controller_base() {
    static const RuleBase base = wpp::model_rulebase();
    return base;
}

void BM_fuzzify_inputs(benchmark::State& state) {
    const RuleBase& base = controller_base();
    const std::map<std::string, double> inputs{{"u0", 4.0}, {"psi", 35.0}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(fuzzify_inputs(base, inputs));
    }
}
BENCHMARK(BM_fuzzify_inputs);

void BM_rule_activation(benchmark::State& state) {
    const RuleBase& base = controller_base();
    const Fuzzified fuzzified = fuzzify_inputs(base, {{"u0", 4.0}, {"psi", 35.0}});
    const FuzzyRule& rule = base.rules().front();
    for (auto _ : state) {
        benchmark::DoNotOptimize(activation(rule, fuzzified));
    }
}
BENCHMARK(BM_rule_activation);

/// Full inference pass over the 16-rule controller base; the argument is the
/// defuzzification grid resolution.
void BM_infer_controller(benchmark::State& state) {
    const RuleBase& base = controller_base();
    const std::map<std::string, double> inputs{{"u0", 4.0}, {"psi", 35.0}};
    const InferenceOptions options{static_cast<std::size_t>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(infer(base, inputs, options));
    }
}
BENCHMARK(BM_infer_controller)->Arg(101)->Arg(1001)->Arg(10001);

void BM_controller_step(benchmark::State& state) {
    wpp::ControllerInput in{4.0, 35.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(wpp::control(controller_base(), in));
    }
}
BENCHMARK(BM_controller_step);

/// Scoring one candidate weight vector of the 200-rule experiment base: the
/// inner loop of the recovery optimization.
void BM_model_distance_200(benchmark::State& state) {
    const NoisyBase noisy = generate_noisy_base(controller_base(), 184, 1);
    const RuleBaseEvaluator evaluator =
        model_distance_evaluator(noisy.base, noisy.target, CutoffPolicy{});
    std::vector<double> weights(noisy.base.rules().size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        weights[i] = static_cast<double>((i * 37) % 101) / 100.0;
    }
    const CutoffPolicy cut{};
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluator(apply_weights(noisy.base, WeightVector{weights}, cut)));
    }
}
BENCHMARK(BM_model_distance_200);

void BM_generate_noisy_base(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate_noisy_base(controller_base(), 184, ++seed));
    }
}
BENCHMARK(BM_generate_noisy_base);

/// One full swarm iteration on the 200-dimensional weight cube.
void BM_pso_step_200d(benchmark::State& state) {
    const NoisyBase noisy = generate_noisy_base(controller_base(), 184, 1);
    const CutoffPolicy cut{};
    const RuleBaseEvaluator evaluator = model_distance_evaluator(noisy.base, noisy.target, cut);
    const auto objective = [&](const std::vector<double>& w) {
        return evaluator(apply_weights(noisy.base, WeightVector{w}, cut));
    };
    const pso::Bounds bounds = pso::Bounds::cube(noisy.base.rules().size(), 0.0, 1.0);
    pso::PsoParams params;
    const pso::UniformSource uniform = pso::seeded_uniform_source(7);
    pso::Swarm swarm = pso::init_swarm(bounds, params, pso::Direction::minimize, uniform);
    for (auto _ : state) {
        pso::step(swarm, objective, pso::Direction::minimize, bounds, params, uniform);
    }
}
BENCHMARK(BM_pso_step_200d);

void BM_pso_sphere_10d(benchmark::State& state) {
    const auto sphere = [](const std::vector<double>& x) {
        double s = 0.0;
        for (const double v : x) s += v * v;
        return s;
    };
    const pso::Bounds bounds = pso::Bounds::cube(10, -5.0, 5.0);
    pso::PsoParams params;
    params.vmax = 0.5;
    params.max_iters = 100;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        params.seed = ++seed;
        benchmark::DoNotOptimize(
            pso::optimize(sphere, pso::Direction::minimize, bounds, params));
    }
}
BENCHMARK(BM_pso_sphere_10d);

} // namespace

BENCHMARK_MAIN();
