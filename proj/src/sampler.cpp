#include "mloop/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mloop/wilson_calculus.hpp"

namespace mloop {

std::string to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::Metropolis: return "metropolis";
    case SamplerKind::Langevin: return "langevin";
    case SamplerKind::Haar: return "haar";
  }
  return "?";
}

SamplerKind parse_sampler_kind(const std::string& name) {
  if (name == "metropolis") return SamplerKind::Metropolis;
  if (name == "langevin") return SamplerKind::Langevin;
  if (name == "haar") return SamplerKind::Haar;
  throw std::invalid_argument("unknown sampler '" + name + "'");
}

void ChainParams::validate() const {
  if (sweeps <= burn_in || burn_in < 0) throw std::invalid_argument("need sweeps > burn_in >= 0");
  if (proposal_step <= 0) throw std::invalid_argument("proposal step must be positive");
  if (langevin_dt <= 0) throw std::invalid_argument("langevin dt must be positive");
  if (chains < 1) throw std::invalid_argument("need at least one chain");
  if (batches < 2) throw std::invalid_argument("need at least two batches");
  if ((sweeps - burn_in) / batches < 1)
    throw std::invalid_argument("too few post-burn-in sweeps for the batch count");
}

YangMillsAction::YangMillsAction(const CellComplex& complex, const GroupSpec& spec, double beta)
    : complex_(&complex), spec_(spec), beta_(beta) {
  const int ne = complex.num_edges();
  staples_.resize(ne);
  incident_.resize(ne);
  simple_.assign(ne, true);
  for (int e = 0; e < ne; ++e) {
    for (const auto& inc : complex.plaquettes_containing(e)) {
      incident_[e].push_back(inc.plaquette);
      if (inc.occurrences.m() != 1) {
        simple_[e] = false;
        continue;
      }
      const auto& occ = inc.occurrences.all.front();
      staples_[e].push_back({excise(inc.boundary, occ.position), occ.orientation});
    }
  }
}

double YangMillsAction::value(const Configuration& q) const {
  double sum = 0.0;
  for (const auto& p : complex_->plaquettes()) sum += wilson(p.boundary, q).real();
  return beta_ * spec_.n() * sum;
}

Matrix YangMillsAction::staple(const Configuration& q, int edge) const {
  const int n = spec_.n();
  Matrix a = Matrix::Zero(n, n);
  for (const auto& s : staples_[edge]) {
    Matrix r = holonomy(s.rest, q);
    if (s.orientation > 0)
      a += r;
    else
      a += r.adjoint();
  }
  return a;
}

double YangMillsAction::delta(const Configuration& q, int edge, const Matrix& proposal) const {
  if (beta_ == 0.0) return 0.0;
  if (simple_[edge]) {
    const Matrix a = staple(q, edge);
    return beta_ * spec_.n() * ((proposal - q.links[edge]) * a).trace().real();
  }
  Configuration moved = q;
  moved.links[edge] = proposal;
  double d = 0.0;
  for (int p : incident_[edge]) {
    const LoopWord& w = complex_->plaquette(p).boundary;
    d += wilson(w, moved).real() - wilson(w, q).real();
  }
  return beta_ * spec_.n() * d;
}

Matrix YangMillsAction::gradient(const Configuration& q, int edge) const {
  const int n = spec_.n();
  const Matrix& g = q.links[edge];
  if (beta_ == 0.0) return Matrix::Zero(n, n);
  if (simple_[edge]) {
    const Matrix a = staple(q, edge);
    return beta_ * n * project_tangent(g, Matrix(2.0 * a.adjoint()), spec_);
  }
  Matrix out = Matrix::Zero(n, n);
  for (int p : incident_[edge]) out += grad_re_wilson(complex_->plaquette(p).boundary, edge, q);
  return beta_ * n * out;
}

double action(const Configuration& q, const CellComplex& complex, double beta) {
  return YangMillsAction(complex, q.spec, beta).value(q);
}

namespace {

Matrix random_unit_direction(const GroupSpec& spec, Rng& rng) {
  const auto& basis = lie_basis(spec);
  std::normal_distribution<double> normal;
  std::vector<double> c(basis.size());
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& v : c) {
      v = normal(rng);
      norm += v * v;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  Matrix xi = Matrix::Zero(spec.n(), spec.n());
  for (std::size_t k = 0; k < basis.size(); ++k) xi += (c[k] / norm) * basis[k];
  return xi;
}

void maybe_repair(Configuration& q, double threshold, ChainDiagnostics& diag) {
  for (auto& g : q.links) {
    const double r = membership_residual(g, q.spec);
    if (r > threshold) {
      g = repair(g, q.spec);
      ++diag.repairs;
    }
  }
  diag.max_residual = std::max(diag.max_residual, max_membership_residual(q));
}

}  // namespace

bool metropolis_accept(double delta_s, Rng& rng) {
  if (delta_s >= 0.0) return true;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < std::exp(delta_s);
}

int metropolis_sweep(Configuration& q, const YangMillsAction& s, double step, Rng& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  int accepted = 0;
  for (int e = 0; e < q.num_edges(); ++e) {
    const Matrix xi = random_unit_direction(q.spec, rng);
    const Matrix proposal = expm((step * unit(rng)) * xi) * q.links[e];
    const double ds = s.delta(q, e, proposal);
    if (metropolis_accept(ds, rng)) {
      q.links[e] = proposal;
      ++accepted;
    }
  }
  return accepted;
}

int langevin_update(Configuration& q, const YangMillsAction& s, double dt,
                    const std::vector<std::vector<double>>& noise, double max_increment) {
  const auto& basis = lie_basis(q.spec);
  const int ne = q.num_edges();
  std::vector<Matrix> increments(ne);
  for (int e = 0; e < ne; ++e) {
    Matrix y = (0.5 * dt) * s.gradient(q, e) * q.links[e].adjoint();
    const double root = std::sqrt(dt);
    for (std::size_t k = 0; k < basis.size(); ++k) y += (root * noise[e][k]) * basis[k];
    increments[e] = std::move(y);
  }
  int rejected = 0;
  for (int e = 0; e < ne; ++e) {
    if (std::sqrt(metric(increments[e], increments[e])) > max_increment) {
      ++rejected;
      continue;
    }
    q.links[e] = expm(increments[e]) * q.links[e];
  }
  return rejected;
}

int langevin_step(Configuration& q, const YangMillsAction& s, const ChainParams& params,
                  Rng& rng) {
  std::normal_distribution<double> normal;
  const std::size_t d = lie_basis(q.spec).size();
  std::vector<std::vector<double>> noise(q.num_edges(), std::vector<double>(d));
  for (auto& row : noise)
    for (auto& z : row) z = normal(rng);
  return langevin_update(q, s, params.langevin_dt, noise, params.langevin_max_increment);
}

ChainDiagnostics run_chain(Configuration& q, const CellComplex& complex, const ChainParams& params,
                           Rng& rng, const std::function<void(const Configuration&)>& observe) {
  params.validate();
  const YangMillsAction s(complex, params.spec, params.beta);
  ChainDiagnostics diag;
  double step = params.proposal_step;
  long accepted = 0, proposed = 0;
  long window_acc = 0, window_prop = 0;
  constexpr long kTuneWindow = 50;
  constexpr double kMaxStep = M_PI;

  for (long sweep = 0; sweep < params.sweeps; ++sweep) {
    const bool measuring = sweep >= params.burn_in;
    switch (params.sampler) {
      case SamplerKind::Metropolis: {
        const int acc = metropolis_sweep(q, s, step, rng);
        if (measuring) {
          accepted += acc;
          proposed += q.num_edges();
        } else if (params.tune_step) {
          window_acc += acc;
          window_prop += q.num_edges();
          if (window_prop >= kTuneWindow * q.num_edges()) {
            const double rate = static_cast<double>(window_acc) / window_prop;
            if (rate > 0.6) step = std::min(step * 1.1, kMaxStep);
            if (rate < 0.3) step *= 0.9;
            window_acc = window_prop = 0;
          }
        }
        break;
      }
      case SamplerKind::Langevin:
        diag.rejected_langevin += langevin_step(q, s, params, rng);
        break;
      case SamplerKind::Haar:
        for (auto& g : q.links) g = haar_sample(q.spec, rng);
        break;
    }
    maybe_repair(q, params.repair_threshold, diag);
    if (measuring) observe(q);
  }
  diag.acceptance_rate = proposed ? static_cast<double>(accepted) / proposed : 1.0;
  diag.final_step = step;
  return diag;
}

Estimate SamplingResult::column(std::size_t i) const {
  return estimate_from_batches(batch_means.at(i), batch_size);
}

SamplingResult run_sampling(const CellComplex& complex, const ChainParams& params,
                            const Measurement& measurement) {
  params.validate();
  const std::size_t kept = static_cast<std::size_t>(params.sweeps - params.burn_in);
  const std::size_t batch_size = kept / static_cast<std::size_t>(params.batches);
  const std::size_t width = measurement.width;

  struct ChainOutput {
    std::vector<BatchAccumulator> acc;
    ChainDiagnostics diag;
  };
  std::vector<ChainOutput> outputs(params.chains);

  auto work = [&](int c) {
    Rng rng(derive_seed(params.seed, static_cast<std::uint64_t>(c)));
    Configuration q = haar_configuration(params.spec, complex.num_edges(), rng);
    auto& out = outputs[c];
    out.acc.assign(width, BatchAccumulator(batch_size));
    std::vector<Complex> row(width);
    out.diag = run_chain(q, complex, params, rng, [&](const Configuration& cfg) {
      measurement.evaluate(cfg, row.data());
      for (std::size_t i = 0; i < width; ++i) out.acc[i].add(row[i]);
    });
  };

  if (params.chains == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int c = 0; c < params.chains; ++c) threads.emplace_back(work, c);
    for (auto& t : threads) t.join();
  }

  SamplingResult result;
  result.batch_size = batch_size;
  result.batch_means.resize(width);
  for (const auto& out : outputs) {
    for (std::size_t i = 0; i < width; ++i) {
      const auto& m = out.acc[i].batch_means();
      result.batch_means[i].insert(result.batch_means[i].end(), m.begin(), m.end());
    }
    result.diagnostics.push_back(out.diag);
  }
  return result;
}

}  // namespace mloop
