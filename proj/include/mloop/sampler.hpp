#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mloop/estimate.hpp"
#include "mloop/holonomy.hpp"
#include "mloop/lattice.hpp"

namespace mloop {

enum class SamplerKind { Metropolis, Langevin, Haar };

std::string to_string(SamplerKind kind);
SamplerKind parse_sampler_kind(const std::string& name);

struct ChainParams {
  GroupSpec spec{GroupFamily::SO, 2};
  double beta = 0.0;
  SamplerKind sampler = SamplerKind::Metropolis;
  long sweeps = 10000;
  long burn_in = 1000;
  double proposal_step = 0.4;
  bool tune_step = true;
  double langevin_dt = 0.002;
  /// Langevin edge updates whose Lie-algebra increment exceeds this norm
  /// are rejected.
  double langevin_max_increment = 1.0;
  std::uint64_t seed = 1;
  int chains = 1;
  int batches = 50;
  double repair_threshold = 1e-9;

  void validate() const;
};

struct ChainDiagnostics {
  double acceptance_rate = 0.0;
  double final_step = 0.0;
  long repairs = 0;
  long rejected_langevin = 0;
  double max_residual = 0.0;
};

/// Plaquette action S(Q) = beta N sum_p Re Tr Q(dp) with its per-edge
/// staples and gradients.
class YangMillsAction {
 public:
  YangMillsAction(const CellComplex& complex, const GroupSpec& spec, double beta);

  double value(const Configuration& q) const;
  /// Change in S when the link of `edge` is replaced by `proposal`.
  double delta(const Configuration& q, int edge, const Matrix& proposal) const;
  /// Riemannian gradient of S in the link of `edge`.
  Matrix gradient(const Configuration& q, int edge) const;

  const CellComplex& complex() const { return *complex_; }
  double beta() const { return beta_; }

 private:
  struct StapleTerm {
    LoopWord rest;
    int orientation;
  };
  Matrix staple(const Configuration& q, int edge) const;

  const CellComplex* complex_;
  GroupSpec spec_;
  double beta_;
  std::vector<std::vector<StapleTerm>> staples_;
  std::vector<std::vector<int>> incident_;
  std::vector<bool> simple_;
};

double action(const Configuration& q, const CellComplex& complex, double beta);

/// Accepts with probability min(1, exp(delta_s)); draws only when delta_s < 0.
bool metropolis_accept(double delta_s, Rng& rng);

/// One Metropolis proposal per edge, Q_e -> exp(step u xi) Q_e with xi a
/// uniformly random unit Lie-algebra direction and u uniform on (-1, 1).
/// Updates q in place and returns the number of accepted proposals.
int metropolis_sweep(Configuration& q, const YangMillsAction& s, double step, Rng& rng);

/// Geodesic Euler step of dQ = 1/2 grad S dt + dB applied to every edge
/// simultaneously, with the frame noise supplied explicitly: noise[e][k]
/// multiplies sqrt(dt) B_k. Returns the number of rejected edge updates.
int langevin_update(Configuration& q, const YangMillsAction& s, double dt,
                    const std::vector<std::vector<double>>& noise, double max_increment);
/// langevin_update with standard Gaussian noise drawn from rng.
int langevin_step(Configuration& q, const YangMillsAction& s, const ChainParams& params,
                  Rng& rng);

/// Callback filling `width` complex values per retained sweep.
struct Measurement {
  std::size_t width = 0;
  std::function<void(const Configuration&, Complex*)> evaluate;
};

struct SamplingResult {
  /// Pooled batch means, one vector per measured column.
  std::vector<std::vector<Complex>> batch_means;
  std::size_t batch_size = 0;
  std::vector<ChainDiagnostics> diagnostics;

  Estimate column(std::size_t i) const;
  std::size_t width() const { return batch_means.size(); }
};

/// Runs params.chains independent chains (seeds derived from params.seed),
/// discards burn-in, and batches the measurements of every remaining sweep.
SamplingResult run_sampling(const CellComplex& complex, const ChainParams& params,
                            const Measurement& measurement);

/// Single chain with a caller-owned configuration; `observe` sees every
/// post-burn-in sweep.
ChainDiagnostics run_chain(Configuration& q, const CellComplex& complex, const ChainParams& params,
                           Rng& rng, const std::function<void(const Configuration&)>& observe);

}  // namespace mloop
