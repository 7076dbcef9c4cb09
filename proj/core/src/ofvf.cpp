#include "plauset/ofvf.hpp"

#include "plauset/simplex_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace plauset {

namespace {

constexpr double kCutTolerance = 1e-9;
// Slack on the optimal radius when re-solving for the center nearest the anchor.
constexpr double kRadiusSlack = 1e-8;

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// A plane rescaled so its normal spans [0, 1]; the slice is unchanged.
struct UnitPlane {
    numvec normal;
    double offset = 0.0;
};

std::optional<UnitPlane> normalize_plane(const Hyperplane& plane) {
    const auto [lo, hi] = std::minmax_element(plane.normal.begin(), plane.normal.end());
    const double range = *hi - *lo;
    if (!(range > 1e-12 * (1.0 + max_abs(plane.normal)))) return std::nullopt;
    UnitPlane u;
    u.normal.resize(plane.normal.size());
    for (std::size_t i = 0; i < plane.normal.size(); ++i) u.normal[i] = (plane.normal[i] - *lo) / range;
    u.offset = std::clamp((plane.offset - *lo) / range, 0.0, 1.0);
    return u;
}

bool same_plane(const UnitPlane& a, const UnitPlane& b) {
    if (std::abs(a.offset - b.offset) > 1e-12) return false;
    for (std::size_t i = 0; i < a.normal.size(); ++i)
        if (std::abs(a.normal[i] - b.normal[i]) > 1e-12) return false;
    return true;
}

// The L1 distance from p to a slice of the simplex is the maximum of a few affine functions
// of p, one per breakpoint of the dual. A Piece is one of them: coef . p + constant.
struct Piece {
    numvec coef;
    double constant = 0.0;
};

double evaluate(const Piece& piece, std::span<const double> p) { return dot(piece.coef, p) + piece.constant; }

void append_pieces(const UnitPlane& plane, std::vector<Piece>& out) {
    const auto& v = plane.normal;
    const double g = plane.offset;
    const std::size_t S = v.size();
    numvec upward, downward;
    for (double x : v) {
        if (x < 1.0 - 1e-12 && std::find(upward.begin(), upward.end(), x) == upward.end()) upward.push_back(x);
        if (x > 1e-12 && std::find(downward.begin(), downward.end(), x) == downward.end()) downward.push_back(x);
    }
    for (double x : upward) {
        const double beta = 2.0 / (1.0 - x);
        Piece piece{numvec(S), -beta * (1.0 - g)};
        for (std::size_t i = 0; i < S; ++i) piece.coef[i] = std::min(beta * (1.0 - v[i]), 2.0);
        out.push_back(std::move(piece));
    }
    for (double x : downward) {
        const double gamma = 2.0 / x;
        Piece piece{numvec(S), -gamma * g};
        for (std::size_t i = 0; i < S; ++i) piece.coef[i] = std::min(gamma * v[i], 2.0);
        out.push_back(std::move(piece));
    }
}

std::size_t worst_piece(std::span<const double> p, const std::vector<Piece>& pieces, double* value) {
    std::size_t arg = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const double d = evaluate(pieces[i], p);
        if (d > best) {
            best = d;
            arg = i;
        }
    }
    *value = std::max(best, 0.0);
    return arg;
}

// Variables p[S] then t (minimal radius), or p[S] then u[S] >= |p - anchor| with every piece
// held at or below radius_bound.
numvec solve_center_lp(std::size_t S, const std::vector<Piece>& pieces, const std::vector<std::size_t>& active,
                       std::optional<std::span<const double>> anchor, double radius_bound, double* radius) {
    using lp::Relation;
    const std::size_t n = anchor ? 2 * S : S + 1;
    lp::LinearProgram program(n);
    lp::Terms simplex;
    for (std::size_t s = 0; s < S; ++s) simplex.emplace_back(s, 1.0);
    program.add_constraint(std::move(simplex), Relation::equal, 1.0);

    for (auto k : active) {
        const auto& piece = pieces[k];
        lp::Terms row;
        for (std::size_t s = 0; s < S; ++s)
            if (piece.coef[s] != 0.0) row.emplace_back(s, piece.coef[s]);
        if (anchor) {
            program.add_constraint(std::move(row), Relation::less_equal, radius_bound - piece.constant);
        } else {
            row.emplace_back(S, -1.0);
            program.add_constraint(std::move(row), Relation::less_equal, -piece.constant);
        }
    }

    if (anchor) {
        for (std::size_t s = 0; s < S; ++s) {
            const std::size_t u = S + s;
            program.add_constraint({{s, 1.0}, {u, -1.0}}, Relation::less_equal, (*anchor)[s]);
            program.add_constraint({{s, 1.0}, {u, 1.0}}, Relation::greater_equal, (*anchor)[s]);
            program.set_objective(u, 1.0);
        }
    } else {
        program.set_objective(S, 1.0);
    }

    const auto result = lp::solve(program);
    if (result.status != lp::Status::optimal)
        throw std::runtime_error(std::string("minimax center LP failed: ") + lp::to_string(result.status));
    if (radius) *radius = result.x[S];
    return numvec(result.x.begin(), result.x.begin() + static_cast<std::ptrdiff_t>(S));
}

void renormalize(numvec& p) {
    double total = 0.0;
    for (auto& x : p) {
        x = std::max(0.0, x);
        total += x;
    }
    for (auto& x : p) x /= total;
}

}  // namespace

bool ValueSet::contains(std::span<const double> v) const {
    for (const auto& member : vectors_) {
        if (member.size() != v.size()) continue;
        double diff = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) diff = std::max(diff, std::abs(member[i] - v[i]));
        if (diff <= kDuplicateTolerance) return true;
    }
    return false;
}

bool ValueSet::insert(std::span<const double> v) {
    if (contains(v)) return false;
    vectors_.emplace_back(v.begin(), v.end());
    return true;
}

namespace {

// Posterior samples stored one state per column so projections run over contiguous memory.
class ColumnBatch {
public:
    explicit ColumnBatch(const TransitionSampleBatch& batch)
        : states_(batch.num_states()), size_(batch.size()), data_(states_ * size_) {
        for (std::size_t i = 0; i < size_; ++i) {
            auto row = batch.sample(i);
            for (std::size_t j = 0; j < states_; ++j) data_[j * size_ + i] = row[j];
        }
    }

    std::size_t size() const { return size_; }

    void project(std::span<const double> v, numvec& out) const {
        out.resize(size_);
        double* __restrict dst = out.data();
        const double* __restrict col = data_.data();
        const double w0 = v[0];
        for (std::size_t i = 0; i < size_; ++i) dst[i] = w0 * col[i];
        for (std::size_t j = 1; j < states_; ++j) {
            const double w = v[j];
            const double* __restrict c = col + j * size_;
            for (std::size_t i = 0; i < size_; ++i) dst[i] += w * c[i];
        }
    }

private:
    std::size_t states_, size_;
    numvec data_;
};

double quantile_of(numvec proj, double eps, Direction direction) {
    if (direction == Direction::optimistic) return order_statistic(std::move(proj), 1.0 - eps);
    const double n = static_cast<double>(proj.size());
    const double upper = std::clamp(std::ceil((1.0 - eps) * n - 1e-9), 1.0, n);
    const double k = std::max(1.0, n - upper);
    return order_statistic(std::move(proj), k / n);
}

// Fraction of samples whose projection is dominated by the ball's optimistic value (or, for
// the pessimistic direction, dominates it).
double covered_fraction(const L1Ball& ball, std::span<const double> v, const numvec& proj, Direction direction) {
    const double upper = optimistic_l1_value(ball.center, ball.radius, v, Direction::optimistic);
    const double tol = 1e-9 * (1.0 + max_abs(v));
    std::size_t ok = 0;
    for (double x : proj) {
        const double gap = upper - x;
        if (direction == Direction::optimistic ? gap >= -tol : gap <= tol) ++ok;
    }
    return static_cast<double>(ok) / static_cast<double>(proj.size());
}

}  // namespace

double quantile_offset(std::span<const double> v, const TransitionSampleBatch& batch, double eps,
                       Direction direction) {
    if (batch.empty()) throw std::invalid_argument("quantile offset of an empty batch");
    if (v.size() != batch.num_states()) throw std::invalid_argument("value vector length differs from the batch");
    numvec proj(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) proj[i] = dot(v, batch.sample(i));
    return quantile_of(std::move(proj), eps, direction);
}

SliceProjection project_to_slice(std::span<const double> p, std::span<const double> v, double g) {
    SliceProjection out;
    out.point.assign(p.begin(), p.end());
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (!(*hi - *lo > 1e-12 * (1.0 + max_abs(v)))) return out;
    g = std::clamp(g, *lo, *hi);

    const double gap = g - dot(v, p);
    if (gap == 0.0) return out;
    const double sign = gap > 0.0 ? 1.0 : -1.0;
    double remaining = std::abs(gap);

    // move mass onto the best state for the needed direction, cheapest sources first
    const std::size_t n = v.size();
    std::size_t top = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (sign * v[i] > sign * v[top]) top = i;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sign * v[a] < sign * v[b]; });

    double moved = 0.0;
    for (std::size_t j : order) {
        if (remaining <= 0.0) break;
        const double gain = sign * (v[top] - v[j]);
        if (gain <= 0.0) break;
        const double m = std::min(out.point[j], remaining / gain);
        out.point[j] -= m;
        out.point[top] += m;
        moved += m;
        remaining -= m * gain;
    }
    out.distance = 2.0 * moved;
    return out;
}

double slice_distance(std::span<const double> p, std::span<const double> v, double g) {
    return project_to_slice(p, v, g).distance;
}

namespace {

void check_planes(const std::vector<Hyperplane>& planes, std::optional<std::span<const double>> anchor) {
    if (planes.empty()) throw std::invalid_argument("minimax center needs at least one hyperplane");
    const std::size_t S = planes.front().normal.size();
    for (const auto& plane : planes) {
        if (plane.normal.size() != S) throw std::invalid_argument("hyperplane normals differ in length");
        for (double x : plane.normal)
            if (!std::isfinite(x)) throw std::invalid_argument("hyperplane normal is not finite");
        if (!std::isfinite(plane.offset)) throw std::invalid_argument("hyperplane offset is not finite");
    }
    if (anchor && anchor->size() != S) throw std::invalid_argument("anchor length differs from the planes");
}

// Center search state kept per (s,a) across OFVF iterations.
struct CenterCache {
    std::vector<UnitPlane> unit;
    std::vector<Piece> pieces;
    std::vector<std::size_t> active;  // indices into pieces
    numvec center;
    bool valid = false;
};

void add_unit_planes(CenterCache& cache, const std::vector<Hyperplane>& planes, std::size_t from) {
    for (std::size_t j = from; j < planes.size(); ++j) {
        auto u = normalize_plane(planes[j]);
        if (!u) continue;
        const bool dup =
            std::any_of(cache.unit.begin(), cache.unit.end(), [&](const UnitPlane& w) { return same_plane(w, *u); });
        if (dup) continue;
        append_pieces(*u, cache.pieces);
        cache.unit.push_back(std::move(*u));
    }
}

// Cut generation over cache.pieces, starting from cache.active.
void solve_center(CenterCache& cache, std::size_t S, std::optional<std::span<const double>> anchor) {
    const auto& pieces = cache.pieces;
    auto& active = cache.active;
    numvec start = anchor ? numvec(anchor->begin(), anchor->end()) : numvec(S, 1.0 / static_cast<double>(S));
    cache.valid = true;
    if (cache.unit.empty()) {
        cache.center = std::move(start);
        active.clear();
        return;
    }
    if (cache.unit.size() == 1) {
        // every point of the slice has radius zero; take the one nearest the start
        cache.center = project_to_slice(start, cache.unit[0].normal, cache.unit[0].offset).point;
        return;
    }

    double violation = 0.0;
    auto add_cut = [&](std::vector<std::size_t>& set, std::span<const double> p, double level) {
        const std::size_t k = worst_piece(p, pieces, &violation);
        if (violation <= level + kCutTolerance) return false;
        if (std::find(set.begin(), set.end(), k) != set.end()) return false;
        set.push_back(k);
        return true;
    };
    if (active.empty()) add_cut(active, start, 0.0);

    double radius = 0.0;
    numvec center;
    do {
        center = solve_center_lp(S, pieces, active, std::nullopt, 0.0, &radius);
    } while (add_cut(active, center, radius));

    if (anchor) {
        const double bound = radius + kRadiusSlack;
        auto anchored_active = active;
        try {
            numvec candidate;
            do {
                candidate = solve_center_lp(S, pieces, anchored_active, anchor, bound, nullptr);
            } while (add_cut(anchored_active, candidate, bound));
            if (violation <= bound + kCutTolerance) {
                center = std::move(candidate);
                active = std::move(anchored_active);
            }
        } catch (const std::runtime_error&) {
            // keep the minimal-radius center found above
        }
    }
    cache.center = std::move(center);
}

MinimaxCenter finish_center(numvec center, const std::vector<Hyperplane>& planes, std::size_t active_planes) {
    MinimaxCenter result;
    result.center = std::move(center);
    renormalize(result.center);
    result.active_planes = active_planes;
    result.witnesses.reserve(planes.size());
    for (const auto& plane : planes) {
        auto proj = project_to_slice(result.center, plane.normal, plane.offset);
        result.radius = std::max(result.radius, proj.distance);
        result.witnesses.push_back(std::move(proj.point));
    }
    result.radius = std::clamp(result.radius, 0.0, 2.0);
    return result;
}

// Extends the cached problem with planes[from..] and re-solves only when some new plane lies
// outside the current ball.
L1Ball update_center(CenterCache& cache, const std::vector<Hyperplane>& planes, std::size_t from,
                     std::span<const double> anchor, double previous_radius) {
    const std::size_t before = cache.unit.size();
    add_unit_planes(cache, planes, from);
    auto distance = [&](std::size_t i) {
        return slice_distance(cache.center, cache.unit[i].normal, cache.unit[i].offset);
    };
    double radius = previous_radius;
    bool stale = !cache.valid;
    for (std::size_t i = before; i < cache.unit.size() && !stale; ++i) {
        const double d = distance(i);
        stale = d > previous_radius + kCutTolerance;
        radius = std::max(radius, d);
    }
    if (stale) {
        solve_center(cache, anchor.size(), anchor);
        renormalize(cache.center);
        radius = 0.0;
        for (std::size_t i = 0; i < cache.unit.size(); ++i) radius = std::max(radius, distance(i));
    }
    return L1Ball{cache.center, std::clamp(radius, 0.0, 2.0)};
}

}  // namespace

MinimaxCenter minimax_l1_center(const std::vector<Hyperplane>& planes, std::optional<std::span<const double>> anchor) {
    check_planes(planes, anchor);
    CenterCache cache;
    add_unit_planes(cache, planes, 0);
    solve_center(cache, planes.front().normal.size(), anchor);
    return finish_center(std::move(cache.center), planes, cache.active.size());
}

ConditionCheck check_condition(const L1Ball& ball, const TransitionSampleBatch& batch, const std::vector<numvec>& values,
                               double eps, Direction direction) {
    ConditionCheck out{true, 1.0};
    if (batch.empty()) throw std::invalid_argument("condition check needs a nonempty batch");
    numvec proj(batch.size());
    for (const auto& v : values) {
        for (std::size_t i = 0; i < batch.size(); ++i) proj[i] = dot(v, batch.sample(i));
        out.worst_fraction = std::min(out.worst_fraction, covered_fraction(ball, v, proj, direction));
    }
    out.pass = out.worst_fraction >= 1.0 - eps - 1e-12;
    return out;
}

numvec backup_vector(const KnownModel& known, std::size_t s, std::size_t a, std::span<const double> v) {
    auto r = known.reward(s, a);
    numvec z(known.num_states);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = r[i] + known.discount * v[i];
    return z;
}

OfvfResult ofvf_construct(const DirichletPosterior& post, const KnownModel& known, double delta, Direction direction,
                          const OfvfCaps& caps, Rng& rng) {
    known.check_shape();
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta out of (0,1)");
    if (caps.max_iterations < 1) throw std::invalid_argument("OFVF needs at least one iteration");
    if (caps.posterior_samples < 1) throw std::invalid_argument("OFVF needs at least one posterior sample");
    if (post.num_states() != known.num_states || post.num_actions() != known.num_actions)
        throw std::invalid_argument("posterior and model dimensions differ");

    const std::size_t S = known.num_states, A = known.num_actions, H = known.horizon;
    const double eps = delta / static_cast<double>(S * A);

    std::vector<ColumnBatch> batches;
    std::vector<numvec> means;
    batches.reserve(S * A);
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t a = 0; a < A; ++a) {
            batches.emplace_back(post.sample_transitions(s, a, caps.posterior_samples, rng));
            means.push_back(post.mean(s, a));
        }
    numvec proj;

    OfvfResult result;
    auto add_stages = [&](const StageValues& values) {
        bool added = false;
        for (std::size_t h = 0; h < H; ++h) added = result.value_set.insert(values.stage(h + 1)) || added;
        return added;
    };

    const Solution nominal = value_iteration(post.mean_mdp(known));
    add_stages(nominal.values);

    // hyperplanes per (s,a), extended as the value set grows
    std::vector<std::vector<Hyperplane>> planes(S * A);
    std::vector<CenterCache> caches(S * A);
    std::vector<double> radii(S * A, 0.0);
    Solution current;
    while (true) {
        PlausibilityCollection sets(S, A);
        for (std::size_t s = 0; s < S; ++s)
            for (std::size_t a = 0; a < A; ++a) {
                const std::size_t sa = s * A + a;
                auto& list = planes[sa];
                const std::size_t known_planes = list.size();
                for (std::size_t j = known_planes; j < result.value_set.size(); ++j) {
                    numvec z = backup_vector(known, s, a, result.value_set[j]);
                    batches[sa].project(z, proj);
                    const double g = quantile_of(proj, eps, direction);
                    list.push_back({std::move(z), g});
                }
                sets.at(s, a) = update_center(caches[sa], list, known_planes, means[sa], radii[sa]);
                radii[sa] = sets.at(s, a).radius;
            }

        current = optimistic_value_iteration(known, sets, direction);
        ++result.iterations;
        result.sets = std::move(sets);

        bool pass = true;
        for (std::size_t sa = 0; sa < S * A && pass; ++sa) {
            const auto& ball = result.sets.at(sa / A, sa % A);
            for (std::size_t h = 0; h < H && pass; ++h) {
                const numvec z = backup_vector(known, sa / A, sa % A, current.values.stage(h + 1));
                batches[sa].project(z, proj);
                pass = covered_fraction(ball, z, proj, direction) >= 1.0 - eps - 1e-12;
            }
        }
        if (pass) {
            result.condition_satisfied = true;
            break;
        }
        if (result.iterations >= caps.max_iterations) break;
        if (!add_stages(current.values)) break;
    }

    result.policy = current.policy;
    result.values = current.values;
    result.optimistic_return = initial_value(known, current.values);
    return result;
}

}  // namespace plauset
