#include "mloop/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "mloop/extrinsic.hpp"
#include "mloop/wilson_calculus.hpp"

namespace mloop {

std::string to_string(TermKind kind) {
  switch (kind) {
    case TermKind::TwistPlus: return "twist+";
    case TermKind::TwistMinus: return "twist-";
    case TermKind::SplitPlus: return "split+";
    case TermKind::SplitMinus: return "split-";
    case TermKind::MergerPlus: return "merger+";
    case TermKind::MergerMinus: return "merger-";
    case TermKind::DeformPlus: return "deform+";
    case TermKind::DeformMinus: return "deform-";
    case TermKind::SuCorrection: return "su_correction";
  }
  return "?";
}

std::size_t TermList::count(TermKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(terms.begin(), terms.end(), [&](const Term& t) { return t.kind == kind; }));
}

namespace {

std::string pair_index(std::size_t x, std::size_t y) {
  return "x=" + std::to_string(x) + ";y=" + std::to_string(y);
}

std::vector<LoopWord> with_rest(std::vector<LoopWord> head, const std::vector<LoopWord>& loops,
                                std::size_t skip) {
  for (std::size_t j = 1; j < loops.size(); ++j)
    if (j != skip) head.push_back(loops[j]);
  return head;
}

OccurrenceTable distinguished(const std::vector<LoopWord>& loops, int edge) {
  if (loops.empty()) throw LoopError("no loops given");
  auto occ = occurrences(loops[0], edge);
  if (occ.empty())
    throw LoopError("edge " + std::to_string(edge) + " does not occur in the distinguished loop");
  return occ;
}

void add_deformations(TermList& list, const std::vector<LoopWord>& loops, int edge,
                      const CellComplex& c, const OccurrenceTable& occ1, double coef) {
  const LoopWord& l1 = loops[0];
  for (const auto& inc : c.plaquettes_containing(edge)) {
    for (const auto& [x, wx] : occ1.all) {
      for (const auto& [y, wy] : inc.occurrences.all) {
        const std::string idx = "p=" + std::to_string(inc.plaquette) + ";" + pair_index(x, y);
        list.terms.push_back({TermKind::DeformMinus, idx, coef,
                              with_rest({negative_merger(l1, x, inc.boundary, y)}, loops, 0)});
        list.terms.push_back({TermKind::DeformPlus, idx, -coef,
                              with_rest({positive_merger(l1, x, inc.boundary, y)}, loops, 0)});
      }
    }
  }
}

}  // namespace

TermList enumerate_terms_so(const std::vector<LoopWord>& loops, int edge, const CellComplex& c,
                            int n, double beta, const EnumerationOptions& options) {
  const auto occ1 = distinguished(loops, edge);
  const LoopWord& l1 = loops[0];
  const double twist_sign = options.flip_twist_signs ? -1.0 : 1.0;

  TermList list;
  list.m = occ1.m();
  list.t1 = occ1.t();
  for (const auto& l : loops) list.t += occurrences(l, edge).t();
  list.lhs_coefficient = static_cast<double>((n - 1) * list.m);
  list.lhs_product = loops;

  for (const auto& [x, wx] : occ1.all) {
    for (const auto& [y, wy] : occ1.all) {
      if (x == y) continue;
      const std::string idx = pair_index(x, y);
      if (wx * wy > 0) {
        list.terms.push_back({TermKind::TwistMinus, idx, twist_sign,
                              with_rest({negative_twist(l1, x, y)}, loops, 0)});
        auto [a, b] = positive_split(l1, x, y);
        list.terms.push_back({TermKind::SplitPlus, idx, -1.0, with_rest({a, b}, loops, 0)});
      } else {
        list.terms.push_back({TermKind::TwistPlus, idx, -twist_sign,
                              with_rest({positive_twist(l1, x, y)}, loops, 0)});
        auto [a, b] = negative_split(l1, x, y);
        list.terms.push_back({TermKind::SplitMinus, idx, 1.0, with_rest({a, b}, loops, 0)});
      }
    }
  }
  for (std::size_t i = 1; i < loops.size(); ++i) {
    for (const auto& [x, wx] : occ1.all) {
      for (const auto& [y, wy] : occurrences(loops[i], edge).all) {
        const std::string idx = "i=" + std::to_string(i) + ";" + pair_index(x, y);
        list.terms.push_back({TermKind::MergerMinus, idx, 1.0,
                              with_rest({negative_merger(l1, x, loops[i], y)}, loops, i)});
        list.terms.push_back({TermKind::MergerPlus, idx, -1.0,
                              with_rest({positive_merger(l1, x, loops[i], y)}, loops, i)});
      }
    }
  }
  add_deformations(list, loops, edge, c, occ1, beta * n);
  return list;
}

TermList enumerate_terms_un(const std::vector<LoopWord>& loops, int edge, const CellComplex& c,
                            const GroupSpec& spec, double beta) {
  if (spec.is_orthogonal()) throw std::invalid_argument("unitary enumeration needs SU or U");
  const auto occ1 = distinguished(loops, edge);
  const LoopWord& l1 = loops[0];
  const int n = spec.n();
  const int eta = spec.eta();

  TermList list;
  list.m = occ1.m();
  list.t1 = occ1.t();
  for (const auto& l : loops) list.t += occurrences(l, edge).t();
  list.lhs_coefficient = list.m * n - static_cast<double>(eta * list.t1 * list.t) / n;
  list.lhs_product = loops;

  for (const auto& [x, wx] : occ1.all) {
    for (const auto& [y, wy] : occ1.all) {
      if (x == y) continue;
      const std::string idx = pair_index(x, y);
      if (wx * wy > 0) {
        auto [a, b] = positive_split(l1, x, y);
        list.terms.push_back({TermKind::SplitPlus, idx, -1.0, with_rest({a, b}, loops, 0)});
      } else {
        auto [a, b] = negative_split(l1, x, y);
        list.terms.push_back({TermKind::SplitMinus, idx, 1.0, with_rest({a, b}, loops, 0)});
      }
    }
  }
  for (std::size_t i = 1; i < loops.size(); ++i) {
    for (const auto& [x, wx] : occ1.all) {
      for (const auto& [y, wy] : occurrences(loops[i], edge).all) {
        const std::string idx = "i=" + std::to_string(i) + ";" + pair_index(x, y);
        if (wx * wy < 0)
          list.terms.push_back({TermKind::MergerMinus, idx, 1.0,
                                with_rest({negative_merger(l1, x, loops[i], y)}, loops, i)});
        else
          list.terms.push_back({TermKind::MergerPlus, idx, -1.0,
                                with_rest({positive_merger(l1, x, loops[i], y)}, loops, i)});
      }
    }
  }
  add_deformations(list, loops, edge, c, occ1, 0.5 * beta * n);
  if (eta == 1) {
    for (const auto& inc : c.signed_plaquettes_containing(edge)) {
      const int tp = inc.t();
      if (list.t1 * tp == 0) continue;
      const std::string idx =
          "p=" + std::to_string(inc.plaquette) + ";o=" + (inc.orientation > 0 ? "+1" : "-1");
      list.terms.push_back({TermKind::SuCorrection, idx, -0.5 * beta * list.t1 * tp,
                            with_rest({l1, inverse(inc.boundary)}, loops, 0)});
    }
  }
  return list;
}

TermList enumerate_terms(const std::vector<LoopWord>& loops, int edge, const CellComplex& c,
                         const GroupSpec& spec, double beta, const EnumerationOptions& options) {
  if (spec.is_orthogonal()) return enumerate_terms_so(loops, edge, c, spec.n(), beta, options);
  return enumerate_terms_un(loops, edge, c, spec, beta);
}

Complex pointwise_residual(const TermList& list, const Configuration& q) {
  Complex r = list.lhs_coefficient * wilson_product(list.lhs_product, q);
  for (const auto& t : list.terms) r -= t.coefficient * wilson_product(t.product, q);
  return r;
}

SamplingResult run_probes(const CellComplex& c, const ChainParams& params,
                          const std::vector<Probe*>& probes) {
  std::vector<std::size_t> offsets;
  std::size_t width = 0;
  for (const auto* p : probes) {
    offsets.push_back(width);
    width += p->width();
  }
  Measurement m;
  m.width = width;
  m.evaluate = [&](const Configuration& q, Complex* out) {
    for (std::size_t i = 0; i < probes.size(); ++i) probes[i]->evaluate(q, out + offsets[i]);
  };
  SamplingResult result = run_sampling(c, params, m);
  for (std::size_t i = 0; i < probes.size(); ++i) probes[i]->finalize(result, offsets[i]);
  return result;
}

namespace {

/// Index of each distinct word in a shared evaluation table.
class WordTable {
 public:
  int intern(const LoopWord& w) {
    auto [it, inserted] =
        index_.try_emplace(std::vector<EdgeRef>(w.begin(), w.end()), static_cast<int>(words_.size()));
    if (inserted) words_.push_back(w);
    return it->second;
  }
  std::vector<LoopWord> take() { return std::move(words_); }

 private:
  std::map<std::vector<EdgeRef>, int> index_;
  std::vector<LoopWord> words_;
};

}  // namespace

MleProbe::MleProbe(TermList list, const VerifyOptions& options)
    : list_(std::move(list)), options_(options) {
  WordTable table;
  for (const auto& w : list_.lhs_product) lhs_factors_.push_back(table.intern(w));
  for (const auto& t : list_.terms) {
    std::vector<int> f;
    for (const auto& w : t.product) f.push_back(table.intern(w));
    term_factors_.push_back(std::move(f));
  }
  words_ = table.take();
}

std::size_t MleProbe::width() const { return 3 + list_.terms.size(); }

void MleProbe::evaluate(const Configuration& q, Complex* out) const {
  std::vector<Complex> w(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) w[i] = wilson(words_[i], q);
  Complex lhs_product = 1.0;
  for (int f : lhs_factors_) lhs_product *= w[f];
  const Complex lhs = list_.lhs_coefficient * lhs_product;
  Complex rhs = 0.0;
  for (std::size_t k = 0; k < term_factors_.size(); ++k) {
    Complex v = 1.0;
    for (int f : term_factors_[k]) v *= w[f];
    out[3 + k] = v;
    rhs += list_.terms[k].coefficient * v;
  }
  out[0] = lhs;
  out[1] = rhs;
  out[2] = lhs - rhs;
}

void MleProbe::finalize(const SamplingResult& result, std::size_t offset) {
  report_ = TermReport{};
  report_.list = list_;
  report_.lhs = result.column(offset);
  report_.rhs = result.column(offset + 1);
  report_.residual = result.column(offset + 2);
  for (std::size_t k = 0; k < list_.terms.size(); ++k)
    report_.term_estimates.push_back(result.column(offset + 3 + k));
  report_.zscore = zscore(report_.residual, options_.stderr_floor);
  report_.threshold = options_.z_threshold;
  report_.converged = report_.residual.standard_error() <= options_.max_stderr;
  report_.pass = report_.converged && report_.zscore < options_.z_threshold;
}

TermReport verify_mle(const std::vector<LoopWord>& loops, int edge, const CellComplex& c,
                      const ChainParams& params, const VerifyOptions& options) {
  MleProbe probe(enumerate_terms(loops, edge, c, params.spec, params.beta, options.enumeration),
                 options);
  run_probes(c, params, {&probe});
  return probe.report();
}

namespace {

std::vector<LoopWord> plaquette_words(const CellComplex& c, int edge) {
  std::vector<LoopWord> out;
  for (const auto& inc : c.plaquettes_containing(edge)) out.push_back(inc.boundary);
  return out;
}

}  // namespace

IbpProbe::IbpProbe(LoopWord f, std::vector<LoopWord> g, int edge, const CellComplex& c,
                   const GroupSpec& spec, double action_beta, const VerifyOptions& options)
    : f_(std::move(f)),
      g_(std::move(g)),
      edge_(edge),
      plaquettes_(plaquette_words(c, edge)),
      action_scale_(action_beta * spec.n()),
      options_(options) {}

void IbpProbe::evaluate(const Configuration& q, Complex* out) const {
  std::vector<Complex> gw(g_.size());
  for (std::size_t i = 0; i < g_.size(); ++i) gw[i] = wilson(g_[i], q);
  Complex gval = 1.0;
  for (const auto& v : gw) gval *= v;

  const Complex lhs = gval * laplacian_wilson(f_, edge_, q);
  Complex pairing = 0.0;
  for (std::size_t i = 0; i < g_.size(); ++i) {
    Complex rest = 1.0;
    for (std::size_t j = 0; j < g_.size(); ++j)
      if (j != i) rest *= gw[j];
    pairing += grad_inner(f_, g_[i], edge_, q) * rest;
  }
  if (action_scale_ != 0.0) {
    Complex s = 0.0;
    for (const auto& p : plaquettes_) s += grad_inner_action(f_, p, edge_, q);
    pairing += action_scale_ * s * gval;
  }
  out[0] = lhs;
  out[1] = -pairing;
  out[2] = lhs + pairing;
}

void IbpProbe::finalize(const SamplingResult& result, std::size_t offset) {
  check_.lhs = result.column(offset);
  check_.rhs = result.column(offset + 1);
  check_.difference = result.column(offset + 2);
  check_.zscore = zscore(check_.difference, options_.stderr_floor);
  check_.pass = check_.difference.standard_error() <= options_.max_stderr &&
                check_.zscore < options_.z_threshold;
}

ChainParams params_for_measure(ChainParams params, Measure measure) {
  if (measure == Measure::Haar) {
    params.sampler = SamplerKind::Haar;
    params.beta = 0.0;
  }
  return params;
}

IbpCheck verify_ibp(const LoopWord& f, const std::vector<LoopWord>& g, int edge, Measure measure,
                    const CellComplex& c, const ChainParams& params, const VerifyOptions& options) {
  const ChainParams p = params_for_measure(params, measure);
  IbpProbe probe(f, g, edge, c, p.spec, measure == Measure::YangMills ? p.beta : 0.0, options);
  run_probes(c, p, {&probe});
  return probe.check();
}

PairProbe::PairProbe(LoopWord f, LoopWord g, int edge, const GroupSpec& spec,
                     std::vector<double> epsilons, const VerifyOptions& options)
    : f_(std::move(f)), g_(std::move(g)), edge_(edge), spec_(spec), eps_(std::move(epsilons)),
      options_(options) {
  for (double e : eps_)
    if (!(e > 0)) throw std::invalid_argument("exchangeable pair step must be positive");
}

std::size_t PairProbe::width() const { return 2 + 5 * eps_.size(); }

void PairProbe::evaluate(const Configuration& q, Complex* out) const {
  const auto& basis = lie_basis(spec_);
  const double d = static_cast<double>(basis.size());
  const Complex f0 = wilson(f_, q);
  const Complex g0 = wilson(g_, q);
  const Complex ibp_lhs = g0 * laplacian_wilson(f_, edge_, q);
  const Complex ibp_rhs = -grad_inner(f_, g_, edge_, q);
  out[0] = ibp_lhs;
  out[1] = ibp_rhs;

  Configuration moved = q;
  const Matrix& link = q.links[edge_];
  for (std::size_t k = 0; k < eps_.size(); ++k) {
    const double eps = eps_[k];
    Complex lhs = 0.0, rhs = 0.0;
    for (const auto& b : basis) {
      for (double s : {1.0, -1.0}) {
        moved.links[edge_] = expm((s * eps) * b) * link;
        const Complex df = wilson(f_, moved) - f0;
        const Complex dg = wilson(g_, moved) - g0;
        lhs += df * g0;
        rhs += df * dg;
      }
    }
    lhs /= 2.0 * d;
    rhs *= -0.5 / (2.0 * d);
    const double scale = 2.0 * d / (eps * eps);
    Complex* o = out + 2 + 5 * k;
    o[0] = lhs;
    o[1] = rhs;
    o[2] = lhs - rhs;
    o[3] = scale * lhs - ibp_lhs;
    o[4] = scale * rhs - ibp_rhs;
  }
}

void PairProbe::finalize(const SamplingResult& result, std::size_t offset) {
  report_ = PairReport{};
  report_.ibp_lhs = result.column(offset);
  report_.ibp_rhs = result.column(offset + 1);
  report_.identity_pass = true;
  for (std::size_t k = 0; k < eps_.size(); ++k) {
    PairLevel level;
    level.epsilon = eps_[k];
    const std::size_t base = offset + 2 + 5 * k;
    level.lhs = result.column(base);
    level.rhs = result.column(base + 1);
    level.difference = result.column(base + 2);
    level.scaled_lhs_error = result.column(base + 3);
    level.scaled_rhs_error = result.column(base + 4);
    level.zscore = zscore(level.difference, options_.stderr_floor);
    level.pass = level.zscore < options_.z_threshold;
    report_.identity_pass = report_.identity_pass && level.pass;
    report_.levels.push_back(level);
  }
  report_.trend_pass = eps_.size() >= 2;
  for (std::size_t k = 0; k + 1 < report_.levels.size(); ++k) {
    const auto& a = report_.levels[k];
    const auto& b = report_.levels[k + 1];
    const double rl = std::abs(a.scaled_lhs_error.mean) / std::abs(b.scaled_lhs_error.mean);
    const double rr = std::abs(a.scaled_rhs_error.mean) / std::abs(b.scaled_rhs_error.mean);
    report_.lhs_ratios.push_back(rl);
    report_.rhs_ratios.push_back(rr);
    const double expected = std::pow(a.epsilon / b.epsilon, 2);
    auto ok = [&](double r) { return r >= expected / 2.0 && r <= expected * 2.0; };
    report_.trend_pass = report_.trend_pass && ok(rl) && ok(rr);
  }
}

PairReport verify_exchangeable_pair(const LoopWord& f, const LoopWord& g, int edge,
                                    const std::vector<double>& epsilons, const CellComplex& c,
                                    const ChainParams& params, const VerifyOptions& options) {
  const ChainParams p = params_for_measure(params, Measure::Haar);
  PairProbe probe(f, g, edge, p.spec, epsilons, options);
  run_probes(c, p, {&probe});
  return probe.report();
}

ExtrinsicProbe::ExtrinsicProbe(LoopWord f, std::vector<LoopWord> g, int edge, const CellComplex& c,
                               const GroupSpec& spec, double action_beta,
                               const VerifyOptions& options)
    : f_(std::move(f)),
      g_(std::move(g)),
      edge_(edge),
      plaquettes_(plaquette_words(c, edge)),
      action_scale_(action_beta * spec.n()),
      options_(options) {
  if (!spec.is_orthogonal())
    throw std::invalid_argument("the extrinsic Schwinger-Dyson check is defined for SO(N) only");
}

void ExtrinsicProbe::evaluate(const Configuration& q, Complex* out) const {
  const Matrix& link = q.links[edge_];
  const int n = q.spec.n();
  const AmbientDerivatives df = ambient_derivatives(f_, edge_, q, true);
  const Complex gval = wilson_product(g_, q);
  const Matrix dg = ambient_product_gradient(g_, edge_, q);

  const Complex lap = extrinsic_laplacian(df, link);
  const Complex radial = extrinsic_radial(df.grad, link);
  Complex rhs = gval * (lap + static_cast<double>(n - 1) * radial) + extrinsic_inner(df.grad, dg, link);
  if (action_scale_ != 0.0) {
    Matrix ds = Matrix::Zero(n, n);
    for (const auto& p : plaquettes_) ds += ambient_derivatives(p, edge_, q, false).grad;
    rhs += gval * action_scale_ * extrinsic_inner(df.grad, ds, link);
  }
  const Complex lhs = static_cast<double>(n - 1) * gval * radial;
  out[0] = lhs;
  out[1] = rhs;
  out[2] = lhs - rhs;
  out[3] = std::abs(lap - laplacian_wilson(f_, edge_, q));
}

void ExtrinsicProbe::finalize(const SamplingResult& result, std::size_t offset) {
  report_.lhs = result.column(offset);
  report_.rhs = result.column(offset + 1);
  report_.difference = result.column(offset + 2);
  report_.pointwise_gap = result.column(offset + 3);
  report_.zscore = zscore(report_.difference, options_.stderr_floor);
  report_.pass = report_.zscore < options_.z_threshold;
}

ExtrinsicReport verify_extrinsic_sd(const LoopWord& f, const std::vector<LoopWord>& g, int edge,
                                    Measure measure, const CellComplex& c,
                                    const ChainParams& params, const VerifyOptions& options) {
  const ChainParams p = params_for_measure(params, measure);
  ExtrinsicProbe probe(f, g, edge, c, p.spec, measure == Measure::YangMills ? p.beta : 0.0,
                       options);
  run_probes(c, p, {&probe});
  return probe.report();
}

}  // namespace mloop
