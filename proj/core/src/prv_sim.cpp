#include "aimforge/prv_sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

#include "aimforge/error.hpp"

namespace aimforge::sim {
namespace {

void require_probability(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::domain_violation,
                std::string(name) + " must lie in [0, 1], got " + std::to_string(value));
  }
}

void require_reviews(std::size_t k) {
  if (k < 1) throw Error(ErrorCode::domain_violation, "k must be at least 1");
}

/// Integer power by squaring so that small cases are exact ((0.5)^3 == 0.125).
double ipow(double base, std::size_t exponent) {
  double result = 1.0;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

struct Tally {
  std::uint64_t flawed_accepted = 0;
  std::uint64_t correct_accepted = 0;
  std::uint64_t reviews = 0;
};

/// One PRV round: k reviews, each rejecting with `reject_probability`.
/// All k reviews are issued even after the first rejection.
bool review_round(SplitMix64& rng, std::size_t k, double reject_probability) {
  bool accepted = true;
  for (std::size_t i = 0; i < k; ++i) {
    if (rng.bernoulli(reject_probability)) accepted = false;
  }
  return accepted;
}

/// Runs one record through review + up to refine_cap refine/review rounds.
bool run_record(SplitMix64& rng, const ReviewerModel& model, std::size_t k,
                std::size_t refine_cap, bool flawed, std::uint64_t& reviews) {
  for (std::size_t round = 0;; ++round) {
    reviews += k;
    if (review_round(rng, k, flawed ? model.q : model.p)) return true;
    if (round == refine_cap) return false;
    if (flawed && rng.bernoulli(model.r)) flawed = false;
  }
}

Tally simulate_range(const ReviewerModel& model, std::size_t k, std::size_t refine_cap,
                     std::uint64_t seed, std::uint64_t begin, std::uint64_t end) {
  Tally tally;
  for (std::uint64_t i = begin; i < end; ++i) {
    SplitMix64 rng(trial_seed(seed, i));
    if (run_record(rng, model, k, refine_cap, true, tally.reviews)) ++tally.flawed_accepted;
    if (run_record(rng, model, k, refine_cap, false, tally.reviews)) ++tally.correct_accepted;
  }
  return tally;
}

std::string format_double(double value) {
  std::ostringstream out;
  out.precision(10);
  out << value;
  return out.str();
}

}  // namespace

void ReviewerModel::validate() const {
  require_probability(q, "q");
  require_probability(p, "p");
  require_probability(r, "r");
}

double acceptance_probability_flawed(double q, std::size_t k) {
  require_probability(q, "q");
  require_reviews(k);
  return ipow(1.0 - q, k);
}

double acceptance_probability_correct(double p, std::size_t k) {
  require_probability(p, "p");
  require_reviews(k);
  return ipow(1.0 - p, k);
}

double acceptance_with_refinement_correct(double p, std::size_t k, std::size_t refine_cap) {
  const double pass = acceptance_probability_correct(p, k);
  return 1.0 - ipow(1.0 - pass, refine_cap + 1);
}

double acceptance_with_refinement_flawed(double q, std::size_t k, std::size_t refine_cap,
                                         double r, double p) {
  require_probability(r, "r");
  const double pass_flawed = acceptance_probability_flawed(q, k);
  if (r == 0.0) return 1.0 - ipow(1.0 - pass_flawed, refine_cap + 1);

  const double pass_correct = acceptance_probability_correct(p, k);
  // flawed[n], repaired[n]: acceptance probability with n review rounds left.
  double flawed = pass_flawed;
  double repaired = pass_correct;
  for (std::size_t rounds = 2; rounds <= refine_cap + 1; ++rounds) {
    const double next_flawed =
        pass_flawed + (1.0 - pass_flawed) * (r * repaired + (1.0 - r) * flawed);
    const double next_repaired = pass_correct + (1.0 - pass_correct) * repaired;
    flawed = next_flawed;
    repaired = next_repaired;
  }
  return flawed;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  SplitMix64 mix(seed ^ (index * 0xD1B54A32D192ED03ULL));
  mix();
  return mix();
}

SimResult simulate_run(const ReviewerModel& model, std::size_t k, std::size_t refine_cap,
                       std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  model.validate();
  require_reviews(k);
  if (trials < 1) throw Error(ErrorCode::domain_violation, "trials must be at least 1");

  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));

  std::vector<Tally> partial(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = trials / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = chunk * w;
      const std::uint64_t end = w + 1 == workers ? trials : begin + chunk;
      pool.emplace_back([&, w, begin, end] {
        partial[w] = simulate_range(model, k, refine_cap, seed, begin, end);
      });
    }
  }

  Tally total;
  for (const Tally& t : partial) {
    total.flawed_accepted += t.flawed_accepted;
    total.correct_accepted += t.correct_accepted;
    total.reviews += t.reviews;
  }
  SimResult result;
  result.trials = trials;
  result.seed = seed;
  const auto n = static_cast<double>(trials);
  result.accept_rate_flawed = static_cast<double>(total.flawed_accepted) / n;
  result.accept_rate_correct = static_cast<double>(total.correct_accepted) / n;
  result.mean_reviews_per_record = static_cast<double>(total.reviews) / (2.0 * n);
  return result;
}

std::string csv_header() {
  return "q,p,r,k,R,accept_flawed,accept_correct,mean_reviews,trials,seed";
}

std::string csv_row(const ReviewerModel& model, std::size_t k, std::size_t refine_cap,
                    const SimResult& result) {
  std::ostringstream out;
  out << format_double(model.q) << ',' << format_double(model.p) << ',' << format_double(model.r)
      << ',' << k << ',' << refine_cap << ',' << format_double(result.accept_rate_flawed) << ','
      << format_double(result.accept_rate_correct) << ','
      << format_double(result.mean_reviews_per_record) << ',' << result.trials << ','
      << result.seed;
  return out.str();
}

}  // namespace aimforge::sim
