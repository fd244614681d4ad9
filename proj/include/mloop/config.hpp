#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mloop/lattice.hpp"
#include "mloop/sampler.hpp"
#include "mloop/verifier.hpp"

namespace mloop {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Suite { VerifyMle, VerifyIbp, VerifyPair, VerifyExtrinsic, GradientCheck, SampleOnly };

std::string to_string(Suite suite);
Suite parse_suite(const std::string& name);

struct RunConfig {
  GroupFamily family = GroupFamily::SO;
  int n = 2;
  double beta = 0.0;
  std::vector<int> dims{1, 1};
  bool periodic = false;
  std::vector<std::string> loop_texts;
  std::vector<LoopWord> loops;
  /// Observables for the integration-by-parts suites: f = W_f, g = prod W_g.
  /// Default to loops[0] and loops[1..] (or loops[0] when alone).
  std::string f_text;
  std::vector<std::string> g_texts;
  LoopWord f;
  std::vector<LoopWord> g;
  int edge = 0;
  SamplerKind sampler = SamplerKind::Metropolis;
  long sweeps = 100000;
  long burn_in = 5000;
  std::uint64_t seed = 1;
  int chains = 1;
  double dt = 0.002;
  double proposal_step = 0.4;
  int batches = 50;
  std::vector<Suite> suites{Suite::VerifyMle};
  double z_threshold = 4.0;
  double stderr_floor = 1e-12;
  bool flip_twist_signs = false;
  Measure measure = Measure::YangMills;
  std::vector<double> epsilons{0.2, 0.1, 0.05};
  int gradient_cases = 100;
  std::string output_dir = ".";

  GroupSpec spec() const { return GroupSpec(family, n); }
  ChainParams chain_params() const;
  VerifyOptions verify_options() const;
};

/// Parses and validates a JSON document; throws ConfigError with a message
/// naming the offending key, token or edge.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// Cross-checks the config against the lattice it describes.
void validate_config(const RunConfig& config, const CellComplex& complex);

}  // namespace mloop
