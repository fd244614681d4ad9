#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "mloop/estimate.hpp"
#include "mloop/lattice.hpp"
#include "mloop/loop_word.hpp"
#include "mloop/sampler.hpp"

namespace mloop {

enum class TermKind {
  TwistPlus,
  TwistMinus,
  SplitPlus,
  SplitMinus,
  MergerPlus,
  MergerMinus,
  DeformPlus,
  DeformMinus,
  SuCorrection
};

std::string to_string(TermKind kind);

/// coefficient * E[prod_k W_{product[k]}].
struct Term {
  TermKind kind;
  std::string indices;
  double coefficient = 0.0;
  std::vector<LoopWord> product;
};

/// lhs_coefficient * E[W_1 ... W_n] = sum of terms.
struct TermList {
  double lhs_coefficient = 0.0;
  std::vector<LoopWord> lhs_product;
  std::vector<Term> terms;
  int m = 0;
  int t1 = 0;
  int t = 0;

  std::size_t count(TermKind kind) const;
};

struct EnumerationOptions {
  /// Reverses the sign of every twist term (the alternative convention).
  bool flip_twist_signs = false;
};

/// Master loop equation for SO(N). loops[0] is the distinguished loop and
/// must contain the edge.
TermList enumerate_terms_so(const std::vector<LoopWord>& loops, int edge, const CellComplex& c,
                            int n, double beta, const EnumerationOptions& options = {});

/// Master loop equation for U(N) (eta = 0) and SU(N) (eta = 1).
TermList enumerate_terms_un(const std::vector<LoopWord>& loops, int edge, const CellComplex& c,
                            const GroupSpec& spec, double beta);

TermList enumerate_terms(const std::vector<LoopWord>& loops, int edge, const CellComplex& c,
                         const GroupSpec& spec, double beta, const EnumerationOptions& options = {});

/// Per-configuration value of lhs - rhs of a term list.
Complex pointwise_residual(const TermList& list, const Configuration& q);

struct VerifyOptions {
  double z_threshold = 4.0;
  double stderr_floor = 1e-12;
  /// Residual standard errors above this count as non-convergence.
  double max_stderr = std::numeric_limits<double>::infinity();
  EnumerationOptions enumeration;
};

/// A consumer of the shared sample stream: fills `width()` values per
/// configuration, then turns the batched columns into its report.
class Probe {
 public:
  virtual ~Probe() = default;
  virtual std::size_t width() const = 0;
  virtual void evaluate(const Configuration& q, Complex* out) const = 0;
  virtual void finalize(const SamplingResult& result, std::size_t offset) = 0;
};

/// Runs one sampling pass feeding every probe, then finalizes them.
SamplingResult run_probes(const CellComplex& c, const ChainParams& params,
                          const std::vector<Probe*>& probes);

struct TermReport {
  TermList list;
  std::vector<Estimate> term_estimates;
  Estimate lhs;
  Estimate rhs;
  Estimate residual;
  double zscore = 0.0;
  double threshold = 4.0;
  bool converged = true;
  bool pass = false;
};

class MleProbe : public Probe {
 public:
  MleProbe(TermList list, const VerifyOptions& options);
  std::size_t width() const override;
  void evaluate(const Configuration& q, Complex* out) const override;
  void finalize(const SamplingResult& result, std::size_t offset) override;
  const TermReport& report() const { return report_; }

 private:
  TermList list_;
  VerifyOptions options_;
  std::vector<LoopWord> words_;
  std::vector<int> lhs_factors_;
  std::vector<std::vector<int>> term_factors_;
  TermReport report_;
};

TermReport verify_mle(const std::vector<LoopWord>& loops, int edge, const CellComplex& c,
                      const ChainParams& params, const VerifyOptions& options = {});

enum class Measure { Haar, YangMills };

struct IbpCheck {
  Estimate lhs;  // E[g Laplacian f]
  Estimate rhs;  // -E[<grad f, grad g>] (+ g <grad f, grad S> under Yang-Mills)
  Estimate difference;
  double zscore = 0.0;
  bool pass = false;
};

/// f = W_{f_loop} (the null loop gives a constant), g = prod W_{g_loops}.
class IbpProbe : public Probe {
 public:
  IbpProbe(LoopWord f, std::vector<LoopWord> g, int edge, const CellComplex& c,
           const GroupSpec& spec, double action_beta, const VerifyOptions& options);
  std::size_t width() const override { return 3; }
  void evaluate(const Configuration& q, Complex* out) const override;
  void finalize(const SamplingResult& result, std::size_t offset) override;
  const IbpCheck& check() const { return check_; }

 private:
  LoopWord f_;
  std::vector<LoopWord> g_;
  int edge_;
  std::vector<LoopWord> plaquettes_;
  double action_scale_;
  VerifyOptions options_;
  IbpCheck check_;
};

/// Parameters adjusted for the requested measure (Haar ignores beta).
ChainParams params_for_measure(ChainParams params, Measure measure);

IbpCheck verify_ibp(const LoopWord& f, const std::vector<LoopWord>& g, int edge, Measure measure,
                    const CellComplex& c, const ChainParams& params,
                    const VerifyOptions& options = {});

struct PairLevel {
  double epsilon = 0.0;
  Estimate lhs;  // E[(f(U') - f(U)) g(U)]
  Estimate rhs;  // -1/2 E[(f(U') - f(U))(g(U') - g(U))]
  Estimate difference;
  double zscore = 0.0;
  bool pass = false;
  Estimate scaled_lhs_error;  // 2d eps^-2 lhs - g Laplacian f
  Estimate scaled_rhs_error;  // 2d eps^-2 rhs + <grad f, grad g>
};

struct PairReport {
  std::vector<PairLevel> levels;
  Estimate ibp_lhs;  // E[g Laplacian f] on the same samples
  Estimate ibp_rhs;  // -E[<grad f, grad g>]
  /// error(eps_k) / error(eps_{k+1}) for the scaled left side.
  std::vector<double> lhs_ratios;
  std::vector<double> rhs_ratios;
  bool identity_pass = false;
  bool trend_pass = false;
};

/// Exchangeable pair U' = exp(s eps B_k) U on the link of `edge`, averaged
/// over every direction k and sign s (only exchangeable under Haar).
class PairProbe : public Probe {
 public:
  PairProbe(LoopWord f, LoopWord g, int edge, const GroupSpec& spec,
            std::vector<double> epsilons, const VerifyOptions& options);
  std::size_t width() const override;
  void evaluate(const Configuration& q, Complex* out) const override;
  void finalize(const SamplingResult& result, std::size_t offset) override;
  const PairReport& report() const { return report_; }

 private:
  LoopWord f_, g_;
  int edge_;
  GroupSpec spec_;
  std::vector<double> eps_;
  VerifyOptions options_;
  PairReport report_;
};

PairReport verify_exchangeable_pair(const LoopWord& f, const LoopWord& g, int edge,
                                    const std::vector<double>& epsilons, const CellComplex& c,
                                    const ChainParams& params, const VerifyOptions& options = {});

struct ExtrinsicReport {
  Estimate lhs;  // (N-1) E[g sum q_aj df/dq_aj]
  Estimate rhs;
  Estimate difference;
  double zscore = 0.0;
  /// Mean over the stream of |extrinsic Laplacian - intrinsic Laplacian|.
  Estimate pointwise_gap;
  bool pass = false;
};

class ExtrinsicProbe : public Probe {
 public:
  ExtrinsicProbe(LoopWord f, std::vector<LoopWord> g, int edge, const CellComplex& c,
                 const GroupSpec& spec, double action_beta, const VerifyOptions& options);
  std::size_t width() const override { return 4; }
  void evaluate(const Configuration& q, Complex* out) const override;
  void finalize(const SamplingResult& result, std::size_t offset) override;
  const ExtrinsicReport& report() const { return report_; }

 private:
  LoopWord f_;
  std::vector<LoopWord> g_;
  int edge_;
  std::vector<LoopWord> plaquettes_;
  double action_scale_;
  VerifyOptions options_;
  ExtrinsicReport report_;
};

ExtrinsicReport verify_extrinsic_sd(const LoopWord& f, const std::vector<LoopWord>& g, int edge,
                                    Measure measure, const CellComplex& c,
                                    const ChainParams& params, const VerifyOptions& options = {});

}  // namespace mloop
