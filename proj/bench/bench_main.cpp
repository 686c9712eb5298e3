#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "ltlplan/model/footstep_model.hpp"
#include "ltlplan/solver/branch_and_bound.hpp"
#include "ltlplan/solver/kernels.hpp"
#include "ltlplan/solver/relaxation.hpp"

using namespace ltlplan;
using namespace ltlplan::solver;

namespace {

struct Vectors {
  std::vector<double> z, y, zt, rho, lo, hi;
  explicit Vectors(std::size_t m) {
    std::mt19937 rng(1);
    std::normal_distribution<double> g;
    for (std::size_t i = 0; i < m; ++i) {
      z.push_back(g(rng));
      y.push_back(g(rng));
      zt.push_back(g(rng));
      rho.push_back(0.1 + std::abs(g(rng)));
      lo.push_back(-1.0);
      hi.push_back(1.0);
    }
  }
};

template <kernels::Backend B>
void BM_Projection(benchmark::State& state) {
  Vectors v(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    kernels::project_and_update_dual(B, v.z, v.y, v.zt, v.rho, v.lo, v.hi, 1.6);
    benchmark::DoNotOptimize(v.z.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <kernels::Backend B>
void BM_InfNorm(benchmark::State& state) {
  Vectors v(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::weighted_diff_inf_norm(B, v.z, v.zt, v.rho));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

const model::FootstepProblem& problem(const char* name) {
  static std::map<std::string, model::FootstepProblem> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    auto s = model::load_scenario(std::string(LTLPLAN_SCENARIO_DIR) + "/" + name + ".json");
    it = cache.emplace(name, model::build_problem(s)).first;
  }
  return it->second;
}

template <kernels::Backend B>
void BM_RootRelaxation(benchmark::State& state) {
  const auto& p = problem("scenario3");
  AdmmSettings a;
  a.backend = B;
  for (auto _ : state) benchmark::DoNotOptimize(solve_relaxation(p.model, a).objective);
}

void BM_BranchAndBound(benchmark::State& state) {
  const auto& p = problem("scenario1");
  BnbConfig c;
  c.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = branch_and_bound(p.model, c);
    state.counters["nodes"] = static_cast<double>(r.nodes);
  }
}

}  // namespace

BENCHMARK(BM_Projection<kernels::Backend::Serial>)->RangeMultiplier(8)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_Projection<kernels::Backend::OpenMP>)->RangeMultiplier(8)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_InfNorm<kernels::Backend::Serial>)->RangeMultiplier(8)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_InfNorm<kernels::Backend::OpenMP>)->RangeMultiplier(8)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_RootRelaxation<kernels::Backend::Serial>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RootRelaxation<kernels::Backend::OpenMP>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BranchAndBound)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
