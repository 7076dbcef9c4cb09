#include "plauset/posterior.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace plauset {

TransitionSampleBatch::TransitionSampleBatch(std::size_t state, std::size_t action, std::size_t num_states,
                                             numvec samples)
    : state_(state), action_(action), num_states_(num_states), samples_(std::move(samples)) {
    if (num_states_ == 0 || samples_.size() % num_states_ != 0)
        throw std::invalid_argument("sample array is not a multiple of the state count");
}

TransitionSampleBatch TransitionSampleBatch::from_rows(const std::vector<numvec>& rows) {
    if (rows.empty()) throw std::invalid_argument("sample batch is empty");
    const std::size_t S = rows.front().size();
    numvec flat;
    flat.reserve(rows.size() * S);
    for (const auto& r : rows) {
        if (r.size() != S) throw std::invalid_argument("sample rows differ in length");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return TransitionSampleBatch(0, 0, S, std::move(flat));
}

DirichletPosterior::DirichletPosterior(std::size_t num_states, std::size_t num_actions, numvec prior_alpha)
    : num_states_(num_states), num_actions_(num_actions), prior_(std::move(prior_alpha)) {
    if (num_states_ == 0 || num_actions_ == 0) throw std::invalid_argument("posterior needs S >= 1 and A >= 1");
    if (prior_.size() != num_states_ * num_actions_ * num_states_)
        throw std::invalid_argument("prior concentration array has the wrong size");
    for (double x : prior_)
        if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("Dirichlet concentrations must be positive");
    alpha_ = prior_;
}

DirichletPosterior DirichletPosterior::uniform_prior(std::size_t num_states, std::size_t num_actions) {
    if (num_states == 0 || num_actions == 0) throw std::invalid_argument("posterior needs S >= 1 and A >= 1");
    return DirichletPosterior(num_states, num_actions, numvec(num_states * num_actions * num_states, 1.0));
}

void DirichletPosterior::check(std::size_t s, std::size_t a) const {
    if (s >= num_states_ || a >= num_actions_) throw std::out_of_range("state-action pair out of range");
}

std::size_t DirichletPosterior::count(std::size_t s, std::size_t a) const {
    check(s, a);
    double n = 0.0;
    for (std::size_t i = 0; i < num_states_; ++i) n += alpha_[offset(s, a) + i] - prior_[offset(s, a) + i];
    return static_cast<std::size_t>(std::llround(n));
}

void DirichletPosterior::record(std::size_t s, std::size_t a, std::size_t next) {
    check(s, a);
    if (next >= num_states_) throw std::out_of_range("next state out of range");
    alpha_[offset(s, a) + next] += 1.0;
}

numvec DirichletPosterior::mean(std::size_t s, std::size_t a) const {
    check(s, a);
    auto row = alpha(s, a);
    const double total = std::accumulate(row.begin(), row.end(), 0.0);
    numvec out(row.begin(), row.end());
    for (auto& x : out) x /= total;
    return out;
}

TabularMdp DirichletPosterior::mean_mdp(const KnownModel& known) const {
    numvec kernel(alpha_.size());
    for (std::size_t s = 0; s < num_states_; ++s)
        for (std::size_t a = 0; a < num_actions_; ++a) {
            auto m = mean(s, a);
            std::copy(m.begin(), m.end(), kernel.begin() + static_cast<std::ptrdiff_t>(offset(s, a)));
        }
    return TabularMdp(known, std::move(kernel));
}

// Normalized independent Gamma(alpha_i, 1) draws.
void DirichletPosterior::draw_into(std::size_t s, std::size_t a, Rng& rng, std::span<double> out) const {
    auto row = alpha(s, a);
    double total = 0.0;
    for (std::size_t i = 0; i < num_states_; ++i) {
        if (row[i] == 1.0) {
            out[i] = std::exponential_distribution<double>(1.0)(rng);
        } else {
            std::gamma_distribution<double> gamma(row[i], 1.0);
            out[i] = gamma(rng);
        }
        total += out[i];
    }
    if (total > 0.0) {
        for (auto& x : out) x /= total;
    } else {
        // every coordinate underflowed; fall back to the mean
        const double sum = std::accumulate(row.begin(), row.end(), 0.0);
        for (std::size_t i = 0; i < num_states_; ++i) out[i] = row[i] / sum;
    }
}

TransitionSampleBatch DirichletPosterior::sample_transitions(std::size_t s, std::size_t a, std::size_t count,
                                                             Rng& rng) const {
    check(s, a);
    if (count == 0) throw std::invalid_argument("sample count must be positive");
    numvec flat(count * num_states_);
    for (std::size_t i = 0; i < count; ++i) draw_into(s, a, rng, {flat.data() + i * num_states_, num_states_});
    return TransitionSampleBatch(s, a, num_states_, std::move(flat));
}

TabularMdp DirichletPosterior::sample_mdp(const KnownModel& known, Rng& rng) const {
    if (known.num_states != num_states_ || known.num_actions != num_actions_)
        throw std::invalid_argument("known model dimensions do not match the posterior");
    numvec kernel(alpha_.size());
    for (std::size_t s = 0; s < num_states_; ++s)
        for (std::size_t a = 0; a < num_actions_; ++a) draw_into(s, a, rng, {kernel.data() + offset(s, a), num_states_});
    return TabularMdp(known, std::move(kernel));
}

DirichletPosterior record_transition(DirichletPosterior post, std::size_t s, std::size_t a, std::size_t next) {
    post.record(s, a, next);
    return post;
}

}  // namespace plauset
