#pragma once

#include "plauset/ambiguity.hpp"
#include "plauset/mdp.hpp"
#include "plauset/posterior.hpp"
#include "plauset/rng.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace plauset {

/// {p in simplex : normal^T p = offset}
struct Hyperplane {
    numvec normal;
    double offset = 0.0;
};

/**
 * Finite collection of value vectors for which the plausibility sets must be
 * safe. Members closer than 1e-6 in the max norm are treated as duplicates.
 */
class ValueSet {
public:
    static constexpr double kDuplicateTolerance = 1e-6;

    ValueSet() = default;

    /// Adds v unless a duplicate is already present; returns whether it was added.
    bool insert(std::span<const double> v);
    bool contains(std::span<const double> v) const;

    std::size_t size() const noexcept { return vectors_.size(); }
    bool empty() const noexcept { return vectors_.empty(); }
    const numvec& operator[](std::size_t i) const { return vectors_[i]; }
    const std::vector<numvec>& vectors() const noexcept { return vectors_; }

private:
    std::vector<numvec> vectors_;
};

/**
 * Offset g of the hyperplane v^T p = g from the empirical distribution of
 * v^T p over the batch.
 *
 * Optimistic: the ceil((1 - eps) N)-th smallest projection, so that at least
 * a 1 - eps fraction of samples lies at or below g.
 * Pessimistic: the (N - ceil((1 - eps) N))-th smallest projection (at least
 * the first), so that at least a 1 - eps fraction lies strictly above g.
 */
double quantile_offset(std::span<const double> v, const TransitionSampleBatch& batch, double eps,
                       Direction direction = Direction::optimistic);

struct SliceProjection {
    double distance = 0.0;
    numvec point;
};

/**
 * Closest point in L1 norm to p on the slice {q in simplex : v^T q = g}.
 * The offset is clamped into [min v, max v] first.
 */
SliceProjection project_to_slice(std::span<const double> p, std::span<const double> v, double g);

/// L1 distance from p to the slice; same clamping as project_to_slice.
double slice_distance(std::span<const double> p, std::span<const double> v, double g);

struct MinimaxCenter {
    numvec center;
    double radius = 0.0;
    /// One point per input plane, each on its slice and within radius of the center.
    std::vector<numvec> witnesses;
    /// Planes handed to the simplex solver after deduplication and cut generation.
    std::size_t active_planes = 0;
};

/**
 * Center p in the simplex minimizing max_i dist_1(p, slice_i), together with
 * the optimal radius.
 *
 * Solved as a linear program by the dense simplex method. Planes are added
 * lazily: the LP starts with the farthest plane and grows by the most violated
 * one until the center is within the radius of every slice, which yields the
 * same optimum as the full program. When an anchor is given, a second program
 * picks, among all optimal centers, one closest to the anchor in L1.
 *
 * Offsets are clamped into [min v, max v] so every slice is nonempty.
 * Throws std::invalid_argument for an empty plane list and std::runtime_error
 * if the solver does not reach optimality.
 */
MinimaxCenter minimax_l1_center(const std::vector<Hyperplane>& planes,
                                std::optional<std::span<const double>> anchor = std::nullopt);

struct ConditionCheck {
    bool pass = false;
    double worst_fraction = 0.0;
};

/**
 * Monte Carlo safety condition for one state-action pair: for every value
 * vector v, the fraction of sampled rows p* with
 *   optimistic:  max_{p in ball} (p - p*)^T v >= 0
 *   pessimistic: max_{p in ball} (p - p*)^T v <= 0
 * must be at least 1 - eps. worst_fraction is the minimum over v.
 */
ConditionCheck check_condition(const L1Ball& ball, const TransitionSampleBatch& batch,
                               const std::vector<numvec>& values, double eps,
                               Direction direction = Direction::optimistic);

struct OfvfCaps {
    std::size_t max_iterations = 20;
    std::size_t posterior_samples = 1000;
};

struct OfvfResult {
    Policy policy;
    StageValues values;
    double optimistic_return = 0.0;
    PlausibilityCollection sets;
    std::size_t iterations = 0;
    ValueSet value_set;
    bool condition_satisfied = false;
};

/// r(s,a,.) + gamma * v: the vector multiplying p_{s,a} in a backup with continuation v.
numvec backup_vector(const KnownModel& known, std::size_t s, std::size_t a, std::span<const double> v);

/**
 * Value-driven plausibility sets with iterative growth of the value set.
 *
 * Starts from the optimal stage values of the posterior-mean MDP, builds one
 * L1 ball per state-action pair that meets the quantile hyperplane of every
 * value vector, solves the optimistic (or pessimistic) MDP over those balls
 * and adds its stage values to the value set until the safety condition
 * holds, the value function repeats, or the iteration cap is reached.
 *
 * The hyperplane for (s,a) and value vector v uses the backup vector
 * r(s,a,.) + gamma v; eps = delta / (S A).
 */
OfvfResult ofvf_construct(const DirichletPosterior& post, const KnownModel& known, double delta, Direction direction,
                          const OfvfCaps& caps, Rng& rng);

}  // namespace plauset
