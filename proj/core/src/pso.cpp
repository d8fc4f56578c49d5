#include "fuzzmill/pso.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>

#include "fuzzmill/errors.hpp"

namespace fuzzmill::pso {

namespace {

bool better(double a, double b, Direction direction) {
    return direction == Direction::minimize ? a < b : a > b;
}

double unset_value(Direction direction) {
    return direction == Direction::minimize ? std::numeric_limits<double>::infinity()
                                            : -std::numeric_limits<double>::infinity();
}

std::string format_position(const std::vector<double>& x) {
    std::ostringstream os;
    os << "(";
    const std::size_t shown = std::min<std::size_t>(x.size(), 8);
    for (std::size_t i = 0; i < shown; ++i) {
        if (i > 0) os << ", ";
        os << x[i];
    }
    if (shown < x.size()) os << ", ... " << x.size() - shown << " more";
    os << ")";
    return os.str();
}

} // namespace

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::budget: return "budget";
        case StopReason::target_reached: return "target_reached";
        case StopReason::stagnation: return "stagnation";
    }
    return "unknown";
}

Bounds Bounds::cube(std::size_t n, double lo, double hi) {
    Bounds b;
    b.dims.assign(n, Interval{lo, hi});
    return b;
}

void Bounds::validate() const {
    if (dims.empty()) throw ConfigError("bounds need at least one dimension");
    for (std::size_t d = 0; d < dims.size(); ++d) {
        if (!std::isfinite(dims[d].lo) || !std::isfinite(dims[d].hi) ||
            !(dims[d].lo < dims[d].hi)) {
            throw ConfigError("bounds dimension " + std::to_string(d) + " must have lo < hi");
        }
    }
}

void PsoParams::validate() const {
    if (!(alpha1 >= 0.0)) throw ConfigError("alpha1 must be >= 0");
    if (!(alpha2 >= 0.0)) throw ConfigError("alpha2 must be >= 0");
    if (!std::isfinite(omega)) throw ConfigError("omega must be finite");
    if (!(vmax > 0.0)) throw ConfigError("vmax must be > 0");
    if (agents < 2) throw ConfigError("need at least 2 agents");
    if (max_iters < 1) throw ConfigError("need at least 1 iteration");
    if (stagnation_window && *stagnation_window < 1) {
        throw ConfigError("stagnation window must be >= 1");
    }
}

UniformSource seeded_uniform_source(std::uint64_t seed) {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    return [rng]() { return static_cast<double>((*rng)() >> 11) * 0x1.0p-53; };
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Swarm init_swarm(const Bounds& bounds, const PsoParams& params, Direction direction,
                 const UniformSource& uniform) {
    const std::size_t n = bounds.size();
    Swarm swarm;
    swarm.particles.resize(params.agents);
    for (auto& p : swarm.particles) {
        p.position.resize(n);
        for (std::size_t d = 0; d < n; ++d) {
            p.position[d] = bounds.dims[d].lo + uniform() * (bounds.dims[d].hi - bounds.dims[d].lo);
        }
        p.velocity.assign(n, 0.0);
        p.best_position = p.position;
        p.best_value = unset_value(direction);
    }
    swarm.best_position = swarm.particles.front().best_position;
    swarm.best_value = unset_value(direction);
    return swarm;
}

void step(Swarm& swarm, const Objective& objective, Direction direction, const Bounds& bounds,
          const PsoParams& params, const UniformSource& uniform) {
    const std::size_t n = bounds.size();

    // Evaluate. Draws no randomness, so evaluations could run concurrently
    // without changing the result.
    std::vector<double> values(swarm.particles.size());
    for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
        const double v = objective(swarm.particles[i].position);
        if (!std::isfinite(v)) {
            throw ObjectiveError("objective returned a non-finite value at " +
                                     format_position(swarm.particles[i].position),
                                 swarm.particles[i].position);
        }
        values[i] = v;
    }

    // Update personal and global bests in agent-index order; ties keep the
    // incumbent, so results are order-stable.
    for (std::size_t i = 0; i < swarm.particles.size(); ++i) {
        Particle& p = swarm.particles[i];
        if (better(values[i], p.best_value, direction)) {
            p.best_value = values[i];
            p.best_position = p.position;
        }
        if (better(p.best_value, swarm.best_value, direction)) {
            swarm.best_value = p.best_value;
            swarm.best_position = p.best_position;
        }
    }

    // Move: fresh rnd1 and rnd2 vectors per agent, component-wise products.
    std::vector<double> rnd1(n);
    std::vector<double> rnd2(n);
    for (auto& p : swarm.particles) {
        for (std::size_t d = 0; d < n; ++d) rnd1[d] = uniform();
        for (std::size_t d = 0; d < n; ++d) rnd2[d] = uniform();
        for (std::size_t d = 0; d < n; ++d) {
            double v = params.omega * p.velocity[d] +
                       rnd1[d] * (p.best_position[d] - p.position[d]) * params.alpha1 +
                       rnd2[d] * (swarm.best_position[d] - p.position[d]) * params.alpha2;
            v = std::clamp(v, -params.vmax, params.vmax);
            p.velocity[d] = v;
            p.position[d] = std::clamp(p.position[d] + v, bounds.dims[d].lo, bounds.dims[d].hi);
        }
    }
}

SwarmResult optimize(const Objective& objective, Direction direction, const Bounds& bounds,
                     const PsoParams& params) {
    bounds.validate();
    params.validate();

    const UniformSource uniform = seeded_uniform_source(params.seed);
    Swarm swarm = init_swarm(bounds, params, direction, uniform);

    SwarmResult result;
    result.trace.reserve(params.max_iters);
    result.stop_reason = StopReason::budget;

    std::size_t last_improvement = 0;
    std::size_t iterations = 0;
    for (std::size_t iter = 1; iter <= params.max_iters; ++iter) {
        const double previous = swarm.best_value;
        step(swarm, objective, direction, bounds, params, uniform);
        iterations = iter;
        result.trace.push_back({iter, swarm.best_value});
        if (better(swarm.best_value, previous, direction)) last_improvement = iter;

        if (params.target) {
            const bool reached = direction == Direction::minimize
                                     ? swarm.best_value <= *params.target
                                     : swarm.best_value >= *params.target;
            if (reached) {
                result.stop_reason = StopReason::target_reached;
                break;
            }
        }
        if (params.stagnation_window && iter - last_improvement >= *params.stagnation_window) {
            result.stop_reason = StopReason::stagnation;
            break;
        }
    }

    result.best_position = swarm.best_position;
    result.best_value = swarm.best_value;
    result.iterations_run = iterations;
    return result;
}

void write_trace_csv(std::ostream& os, const std::vector<TracePoint>& trace) {
    os << "iteration,best_objective\n";
    char buf[64];
    for (const auto& point : trace) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), point.best_objective);
        os << point.iteration << ',';
        os.write(buf, end - buf);
        os << '\n';
    }
}

} // namespace fuzzmill::pso
