#include "mloop/estimate.hpp"

#include <algorithm>
#include <cmath>

namespace mloop {

double Estimate::standard_error() const { return std::hypot(stderr_re, stderr_im); }

double zscore(const Estimate& e, double floor) {
  const double zr = std::abs(e.mean.real()) / std::max(e.stderr_re, floor);
  const double zi = std::abs(e.mean.imag()) / std::max(e.stderr_im, floor);
  return std::max(zr, zi);
}

BatchAccumulator::BatchAccumulator(std::size_t batch_size) : batch_size_(batch_size) {
  if (batch_size == 0) throw EstimateError("batch size must be positive");
}

void BatchAccumulator::add(Complex value) {
  running_ += value;
  if (++count_ == batch_size_) {
    means_.push_back(running_ / static_cast<double>(batch_size_));
    running_ = 0.0;
    count_ = 0;
  }
}

Estimate estimate_from_batches(const std::vector<Complex>& batch_means, std::size_t batch_size) {
  const std::size_t k = batch_means.size();
  if (k < 2) throw EstimateError("need at least 2 batches, have " + std::to_string(k));
  Complex mean = 0.0;
  for (const auto& b : batch_means) mean += b;
  mean /= static_cast<double>(k);
  double var_re = 0.0, var_im = 0.0;
  for (const auto& b : batch_means) {
    var_re += std::pow(b.real() - mean.real(), 2);
    var_im += std::pow(b.imag() - mean.imag(), 2);
  }
  const double denom = static_cast<double>(k) * static_cast<double>(k - 1);
  Estimate e;
  e.mean = mean;
  e.stderr_re = std::sqrt(var_re / denom);
  e.stderr_im = std::sqrt(var_im / denom);
  e.n_samples = k * batch_size;
  e.batches = static_cast<int>(k);
  return e;
}

Estimate estimate(const std::vector<Complex>& samples, int batches) {
  if (batches < 2) throw EstimateError("need at least 2 batches");
  const std::size_t size = samples.size() / static_cast<std::size_t>(batches);
  if (size == 0)
    throw EstimateError("insufficient samples: " + std::to_string(samples.size()) + " for " +
                        std::to_string(batches) + " batches");
  BatchAccumulator acc(size);
  for (std::size_t i = 0; i < size * batches; ++i) acc.add(samples[i]);
  return estimate_from_batches(acc.batch_means(), size);
}

}  // namespace mloop
