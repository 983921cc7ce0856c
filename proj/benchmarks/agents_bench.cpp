#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "aimforge/agents.hpp"

namespace {

std::string explorer_output(std::size_t blocks) {
  std::vector<aimforge::ExtractedConjecture> list;
  for (std::size_t i = 0; i < blocks; ++i) {
    list.push_back({"For every $n \\ge " + std::to_string(i) + "$ the bound holds.",
                    std::string(800, 'p') + " hence the claim.", i + 1 == blocks});
  }
  return "Some reasoning first.\n" + aimforge::render_conjectures(list) + "\nClosing remarks.";
}

void BM_ExtractConjectures(benchmark::State& state) {
  const std::string text = explorer_output(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(aimforge::extract_conjectures(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ExtractConjectures)->Arg(1)->Arg(16);

void BM_ParseReview(benchmark::State& state) {
  std::string text;
  for (int i = 0; i < 40; ++i) text += "Step " + std::to_string(i) + " checks out; the estimate is sharp.\n";
  text += "**VERDICT:** REJECT\n";
  for (auto _ : state) benchmark::DoNotOptimize(aimforge::parse_review(text, 0));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseReview);

}  // namespace
