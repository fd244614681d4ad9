#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mloop/types.hpp"

namespace mloop {

class EstimateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mean of a complex observable with batch-means standard errors for its
/// real and imaginary parts.
struct Estimate {
  Complex mean{0.0, 0.0};
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  std::size_t n_samples = 0;
  int batches = 0;
  bool autocorrelation_adjusted = true;

  double standard_error() const;
};

/// Largest of |Re mean| / se_re and |Im mean| / se_im, each standard error
/// clamped below by `floor`.
double zscore(const Estimate& e, double floor);

/// Accumulates a stream into consecutive batches of fixed size; a trailing
/// partial batch is ignored.
class BatchAccumulator {
 public:
  explicit BatchAccumulator(std::size_t batch_size);

  void add(Complex value);
  const std::vector<Complex>& batch_means() const { return means_; }
  std::size_t batch_size() const { return batch_size_; }

 private:
  std::size_t batch_size_;
  std::size_t count_ = 0;
  Complex running_{0.0, 0.0};
  std::vector<Complex> means_;
};

/// Estimate from equal-size batch means (pooled across chains).
Estimate estimate_from_batches(const std::vector<Complex>& batch_means, std::size_t batch_size);

/// Splits a stored sample sequence into `batches` equal batches.
Estimate estimate(const std::vector<Complex>& samples, int batches = 50);

}  // namespace mloop
