#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace aimforge::sim {

/// Independent Bernoulli reviewers.
///  q: probability that one review rejects a flawed proof
///  p: probability that one review rejects a correct proof
///  r: probability that one refine round repairs a flawed proof
/// A repaired proof is treated as correct from then on.
struct ReviewerModel {
  double q = 0.0;
  double p = 0.0;
  double r = 0.0;

  /// Throws Error(domain_violation) unless every field is in [0, 1].
  void validate() const;
};

struct SimResult {
  double accept_rate_flawed = 0.0;
  double accept_rate_correct = 0.0;
  /// Reviews issued per simulated record, averaged over the flawed and the
  /// correct population together.
  double mean_reviews_per_record = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  bool operator==(const SimResult&) const = default;
};

/// (1-q)^k: a flawed proof survives one round only if all k reviews miss.
double acceptance_probability_flawed(double q, std::size_t k);

/// (1-p)^k: a correct proof survives one round only without false rejections.
double acceptance_probability_correct(double p, std::size_t k);

/// Probability that a flawed proof is eventually accepted when it gets one
/// review round plus up to `refine_cap` refine-and-review rounds. With
/// r = 0 this is 1 - (1 - (1-q)^k)^(1+R); otherwise it is computed by
/// recursion over the {flawed, repaired} states.
double acceptance_with_refinement_flawed(double q, std::size_t k, std::size_t refine_cap,
                                         double r = 0.0, double p = 0.0);

/// Same quantity for a proof that starts out correct.
double acceptance_with_refinement_correct(double p, std::size_t k, std::size_t refine_cap);

/// Monte Carlo run of `trials` flawed and `trials` correct records through
/// the verify/refine loop. Trial i draws from its own counter-derived
/// stream, so results do not depend on `workers`.
SimResult simulate_run(const ReviewerModel& model, std::size_t k, std::size_t refine_cap,
                       std::uint64_t trials, std::uint64_t seed, unsigned workers = 0);

/// Column header of the comma-separated table.
std::string csv_header();
/// One table row: q,p,r,k,R,accept_flawed,accept_correct,mean_reviews,trials,seed
std::string csv_row(const ReviewerModel& model, std::size_t k, std::size_t refine_cap,
                    const SimResult& result);

/// splitmix64 step; the per-trial stream generator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double probability) noexcept { return uniform() < probability; }

 private:
  std::uint64_t state_;
};

/// Seed of the stream used for trial `index` of a run seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace aimforge::sim
