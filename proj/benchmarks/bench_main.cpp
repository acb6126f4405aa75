#include <benchmark/benchmark.h>

#include <hda/algebra.hpp>
#include <hda/builtin.hpp>
#include <hda/evaluate.hpp>
#include <hda/free_prop.hpp>
#include <hda/metagraph.hpp>
#include <hda/presheaf.hpp>

using namespace hda;

namespace {

DecoratedGraph random_graph(const Prop& p, std::uint64_t seed, int vertices) {
  Rng rng(seed);
  std::vector<Element> decos;
  SampleSpec s;
  s.max_arity = 2;
  while (static_cast<int>(decos.size()) < vertices)
    if (auto e = p.sample(rng, s)) decos.push_back(*e);
  return random_wiring(decos, rng);
}

PropPtr ebool() { return make_endomorphism({{"c", {false, true}}}); }
PropPtr terminal() { return make_terminal({"c"}); }

}  // namespace

static void BM_Evaluate(benchmark::State& state) {
  auto p = ebool();
  auto dg = random_graph(*p, 7, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(*p, dg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Evaluate)->Arg(2)->Arg(8)->Arg(16);

static void BM_MetagraphRoundTrip(benchmark::State& state) {
  auto p = terminal();
  PropertopeCategory cat(p);
  Rng rng(3);
  std::vector<Propertope> gs;
  while (gs.size() < 32)
    if (auto g = cat.random(static_cast<int>(state.range(0)), rng, 2)) gs.push_back(*g);
  for (auto _ : state)
    for (const auto& g : gs) {
      std::string s = encode_metagraph(g).dump();
      benchmark::DoNotOptimize(decode_metagraph(json::parse(s), p));
    }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(gs.size()));
}
BENCHMARK(BM_MetagraphRoundTrip)->DenseRange(1, 3);

static void BM_PsiBuild(benchmark::State& state) {
  auto p = ebool();
  PropertopeCategory cat(p);
  UniverseOptions uo;
  uo.max_dim = static_cast<int>(state.range(0));
  auto u = standard_universe(cat, uo);
  auto a = make_tautological(p, {{"c", {false, true}}});
  for (auto _ : state) benchmark::DoNotOptimize(psi_build(a, 0, u));
  state.counters["shapes"] = static_cast<double>(u.size());
}
BENCHMARK(BM_PsiBuild)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_ChainEqual(benchmark::State& state) {
  PropertopeCategory cat(terminal());
  Rng rng(21);
  std::vector<std::pair<Propertope, Relation>> squares;
  while (squares.size() < 16) {
    auto a = cat.random(1, rng, 2);
    auto b = cat.random(1, rng, 2);
    if (!a || !b) continue;
    Propertope g = cat.tensor(*a, *b);
    for (const auto& r : cat.relations(g)) squares.emplace_back(g, r);
  }
  int cap = static_cast<int>(state.range(0));
  for (auto _ : state)
    for (const auto& [g, r] : squares) benchmark::DoNotOptimize(cat.chain_equal({g, r.lhs}, {g, r.rhs}, cap));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(squares.size()));
}
BENCHMARK(BM_ChainEqual)->Arg(2)->Arg(6);

BENCHMARK_MAIN();
