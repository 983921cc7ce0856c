#include "bernoulli_backend.hpp"

namespace aimforge::testing {

BernoulliBackend::BernoulliBackend(sim::ReviewerModel model, std::size_t blocks_per_call,
                                   std::uint64_t seed)
    : model_(model), blocks_per_call_(blocks_per_call), rng_(seed) {}

ChatResponse BernoulliBackend::complete(const ChatRequest& request) {
  std::lock_guard lock(mutex_);
  ChatResponse response;
  switch (request.role_tag) {
    case Role::explorer:
      for (std::size_t i = 0; i < blocks_per_call_; ++i) {
        const std::string id = std::to_string(next_statement_++);
        response.text += "<conjecture><statement>Claim " + id + " holds.</statement><proof>Step one. " +
                         std::string(kFlawMarker) + " Step two (claim " + id +
                         ").</proof><final>false</final></conjecture>\n";
      }
      break;
    case Role::verifier: {
      ++verifier_calls_;
      // The proof section sits between the "## Proof" heading and the next heading.
      const std::string_view prompt = request.user_prompt;
      const auto proof_at = prompt.find("## Proof");
      const auto section_end = proof_at == std::string_view::npos ? proof_at : prompt.find("\n## ", proof_at);
      const bool flawed = proof_at != std::string_view::npos &&
                          prompt.substr(proof_at, section_end - proof_at).find(kFlawMarker) != std::string_view::npos;
      const bool reject = rng_.bernoulli(flawed ? model_.q : model_.p);
      response.text = reject ? "A step does not follow.\nVERDICT: REJECT" : "Checked.\nVERDICT: ACCEPT";
      break;
    }
    case Role::refiner: {
      const bool repaired = rng_.bernoulli(model_.r);
      response.text = repaired ? "<proof>Step one. Step two, now justified.</proof>"
                               : "<proof>Step one. " + std::string(kFlawMarker) + " Step two, reworded.</proof>";
      break;
    }
    case Role::transcriber:
      response.text = request.user_prompt;
      break;
  }
  return response;
}

std::size_t BernoulliBackend::verifier_calls() const {
  std::lock_guard lock(mutex_);
  return verifier_calls_;
}

}  // namespace aimforge::testing
