#include "plauset/agents.hpp"
#include "plauset/ambiguity.hpp"
#include "plauset/domains.hpp"
#include "plauset/ofvf.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace plauset;

namespace {

numvec random_row(std::size_t n, std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    numvec p(n);
    double sum = 0.0;
    for (auto& x : p) sum += x = e(rng);
    for (auto& x : p) x /= sum;
    return p;
}

void l1_response(benchmark::State& state) {
    const auto S = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    const auto c = random_row(S, rng);
    numvec z(S);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& x : z) x = u(rng);
    for (auto _ : state) benchmark::DoNotOptimize(optimistic_l1_value(c, 0.3, z, Direction::optimistic));
}
BENCHMARK(l1_response)->Arg(6)->Arg(32)->Arg(256);

void minimax_center(benchmark::State& state) {
    const auto S = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Hyperplane> planes(k);
    for (auto& p : planes) {
        p.normal.resize(S);
        for (auto& x : p.normal) x = u(rng);
        p.offset = 0.5 * (*std::min_element(p.normal.begin(), p.normal.end()) +
                          *std::max_element(p.normal.begin(), p.normal.end()));
    }
    const auto anchor = random_row(S, rng);
    for (auto _ : state) benchmark::DoNotOptimize(minimax_l1_center(planes, std::span<const double>(anchor)));
}
BENCHMARK(minimax_center)->Args({6, 4})->Args({6, 20})->Args({12, 40});

void ofvf_riverswim(benchmark::State& state) {
    const auto mdp = riverswim_instance();
    auto post = DirichletPosterior::uniform_prior(mdp.num_states(), mdp.num_actions());
    Rng sim(3);
    for (std::size_t l = 0; l < static_cast<std::size_t>(state.range(0)); ++l)
        for (std::size_t s = 0; s < mdp.num_states(); ++s)
            for (std::size_t a = 0; a < mdp.num_actions(); ++a) {
                std::discrete_distribution<std::size_t> next(mdp.transition(s, a).begin(), mdp.transition(s, a).end());
                post.record(s, a, next(sim));
            }
    for (auto _ : state) {
        Rng rng(4);
        benchmark::DoNotOptimize(ofvf_construct(post, mdp.known(), 0.05, Direction::optimistic, {}, rng));
    }
}
BENCHMARK(ofvf_riverswim)->Arg(0)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
