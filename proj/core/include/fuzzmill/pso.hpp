#ifndef FUZZMILL_PSO_HPP
#define FUZZMILL_PSO_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

namespace fuzzmill::pso {

enum class Direction { minimize, maximize };

enum class StopReason { budget, target_reached, stagnation };

const char* to_string(StopReason reason);

/// Box constraints of the search space.
struct Bounds {
    struct Interval {
        double lo;
        double hi;
    };

    std::vector<Interval> dims;

    static Bounds cube(std::size_t n, double lo, double hi);

    std::size_t size() const noexcept { return dims.size(); }

    /// Throws ConfigError unless every dimension has lo < hi and n >= 1.
    void validate() const;
};

struct PsoParams {
    double alpha1 = 1.5;  ///< cognitive gain (pull toward the personal best)
    double alpha2 = 1.5;  ///< social gain (pull toward the global best)
    double omega = 0.729; ///< inertia
    double vmax = 0.1;    ///< per-component speed cap, in position units
    std::size_t agents = 50;
    std::size_t max_iters = 1000;
    std::uint64_t seed = 0;
    /// Early stop once the best objective reaches this value
    /// (<= for minimization, >= for maximization).
    std::optional<double> target;
    /// Early stop after this many iterations without strict improvement.
    std::optional<std::size_t> stagnation_window;

    void validate() const;
};

struct Particle {
    std::vector<double> position;       ///< X
    std::vector<double> velocity;       ///< V
    std::vector<double> best_position;  ///< PX
    double best_value;                  ///< objective at PX; +-inf before the first evaluation
};

/// Mutable optimizer state, exposed so tests can drive single iterations
/// with an injected random source.
struct Swarm {
    std::vector<Particle> particles;
    std::vector<double> best_position;  ///< GX
    double best_value;                  ///< objective at GX
};

struct TracePoint {
    std::size_t iteration;
    double best_objective;
};

struct SwarmResult {
    std::vector<double> best_position;  ///< GX
    double best_value;                  ///< objective at GX
    std::vector<TracePoint> trace;      ///< best-so-far after each iteration
    std::size_t iterations_run;
    StopReason stop_reason;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Source of uniform draws from [0, 1). All engine randomness flows through
/// one of these, so tests can substitute deterministic values.
using UniformSource = std::function<double()>;

/// The engine's deterministic generator: std::mt19937_64 seeded with `seed`,
/// each draw mapped to [0, 1) from the top 53 bits ((word >> 11) * 2^-53).
UniformSource seeded_uniform_source(std::uint64_t seed);

/// Deterministically derives an independent stream seed from a base seed,
/// via one splitmix64 round of (seed, stream). Used wherever one user-facing
/// seed must feed several unrelated consumers.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Positions drawn uniformly within bounds (agent-major, dimension-minor
/// draw order), velocities zero, PX = X, GX = PX of agent 0; best values are
/// unset sentinels until the first step evaluates them.
Swarm init_swarm(const Bounds& bounds, const PsoParams& params, Direction direction,
                 const UniformSource& uniform);

/// One full iteration: evaluate every particle, update PX/GX in agent-index
/// order (ties keep the incumbent), then update velocities and positions.
/// Per agent, a fresh rnd1 vector is drawn, then a fresh rnd2 vector;
/// velocity components are clamped to [-vmax, vmax] and positions to bounds.
/// Throws ObjectiveError when the objective returns a non-finite value.
void step(Swarm& swarm, const Objective& objective, Direction direction, const Bounds& bounds,
          const PsoParams& params, const UniformSource& uniform);

/// Runs the full algorithm. Deterministic: the same seed, parameters, and
/// objective produce a bit-identical SwarmResult.
SwarmResult optimize(const Objective& objective, Direction direction, const Bounds& bounds,
                     const PsoParams& params);

/// Writes "iteration,best_objective" rows, locale-independent, one per
/// iteration, with a header line.
void write_trace_csv(std::ostream& os, const std::vector<TracePoint>& trace);

} // namespace fuzzmill::pso

#endif // FUZZMILL_PSO_HPP
