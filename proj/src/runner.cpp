#include "mloop/runner.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mloop/gradient_check.hpp"
#include "mloop/verifier.hpp"

namespace mloop {

using nlohmann::json;

json to_json(const Estimate& e) {
  return {{"re", e.mean.real()},       {"im", e.mean.imag()},
          {"stderr_re", e.stderr_re},  {"stderr_im", e.stderr_im},
          {"stderr", e.standard_error()}, {"n_samples", e.n_samples},
          {"batches", e.batches}};
}

namespace {

json diagnostics_json(const std::vector<ChainDiagnostics>& diags) {
  json out = json::array();
  for (const auto& d : diags)
    out.push_back({{"acceptance_rate", d.acceptance_rate},
                   {"final_step", d.final_step},
                   {"repairs", d.repairs},
                   {"rejected_langevin", d.rejected_langevin},
                   {"max_residual", d.max_residual}});
  return out;
}

json config_json(const RunConfig& c) {
  json suites = json::array();
  for (Suite s : c.suites) suites.push_back(to_string(s));
  return {{"group", to_string(c.family)},
          {"N", c.n},
          {"beta", c.beta},
          {"dims", c.dims},
          {"periodic", c.periodic},
          {"loops", c.loop_texts},
          {"f", to_string(c.f)},
          {"g", [&] {
             std::vector<std::string> g;
             for (const auto& w : c.g) g.push_back(to_string(w));
             return g;
           }()},
          {"edge", c.edge},
          {"sampler", to_string(c.sampler)},
          {"measure", c.measure == Measure::Haar ? "haar" : "yang-mills"},
          {"sweeps", c.sweeps},
          {"burn_in", c.burn_in},
          {"seed", c.seed},
          {"chains", c.chains},
          {"dt", c.dt},
          {"proposal_step", c.proposal_step},
          {"batches", c.batches},
          {"suites", suites},
          {"z_threshold", c.z_threshold},
          {"stderr_floor", c.stderr_floor},
          {"flip_twist_signs", c.flip_twist_signs},
          {"epsilons", c.epsilons},
          {"gradient_cases", c.gradient_cases}};
}

ChainParams suite_params(const RunConfig& c, Suite s, std::uint64_t variant = 0) {
  ChainParams p = c.chain_params();
  p.seed = derive_seed(c.seed, 0x100 * (static_cast<std::uint64_t>(s) + 1) + variant);
  return p;
}

void run_mle(const RunConfig& c, const CellComplex& complex, bool rotate, RunOutcome& out) {
  std::vector<std::size_t> order{0};
  if (rotate) {
    order.clear();
    for (std::size_t i = 0; i < c.loops.size(); ++i)
      if (!occurrences(c.loops[i], c.edge).empty()) order.push_back(i);
  }
  for (std::size_t r = 0; r < order.size(); ++r) {
    std::vector<LoopWord> loops{c.loops[order[r]]};
    for (std::size_t i = 0; i < c.loops.size(); ++i)
      if (i != order[r]) loops.push_back(c.loops[i]);
    const ChainParams p = params_for_measure(suite_params(c, Suite::VerifyMle, r), c.measure);
    const TermReport rep = verify_mle(loops, c.edge, complex, p, c.verify_options());

    json counts = json::object();
    for (TermKind k : {TermKind::TwistPlus, TermKind::TwistMinus, TermKind::SplitPlus,
                       TermKind::SplitMinus, TermKind::MergerPlus, TermKind::MergerMinus,
                       TermKind::DeformPlus, TermKind::DeformMinus, TermKind::SuCorrection})
      counts[to_string(k)] = rep.list.count(k);
    json entry = {{"suite", "verify-mle"},
                  {"distinguished_loop", order[r]},
                  {"lhs_coefficient", rep.list.lhs_coefficient},
                  {"m", rep.list.m},
                  {"t1", rep.list.t1},
                  {"t", rep.list.t},
                  {"term_counts", counts},
                  {"lhs", to_json(rep.lhs)},
                  {"rhs", to_json(rep.rhs)},
                  {"residual", to_json(rep.residual)},
                  {"zscore", rep.zscore},
                  {"threshold", rep.threshold},
                  {"converged", rep.converged},
                  {"pass", rep.pass}};
    out.report["suites"].push_back(entry);
    out.pass = out.pass && rep.pass;

    const std::string prefix = rotate ? "rotation=" + std::to_string(order[r]) + ";" : "";
    const double k = rep.list.lhs_coefficient;
    out.terms.push_back({"lhs", prefix, k, rep.lhs.mean / k, rep.lhs.standard_error() / std::abs(k)});
    for (std::size_t k = 0; k < rep.list.terms.size(); ++k) {
      const Term& t = rep.list.terms[k];
      const Estimate& e = rep.term_estimates[k];
      out.terms.push_back({to_string(t.kind), prefix + t.indices, t.coefficient, e.mean,
                           e.standard_error()});
    }
  }
}

json ibp_json(const std::string& name, const IbpCheck& chk, double threshold) {
  return {{"suite", name},
          {"lhs", to_json(chk.lhs)},
          {"rhs", to_json(chk.rhs)},
          {"residual", to_json(chk.difference)},
          {"zscore", chk.zscore},
          {"threshold", threshold},
          {"pass", chk.pass}};
}

void run_ibp(const RunConfig& c, const CellComplex& complex, RunOutcome& out) {
  const IbpCheck chk = verify_ibp(c.f, c.g, c.edge, c.measure, complex,
                                  suite_params(c, Suite::VerifyIbp), c.verify_options());
  out.report["suites"].push_back(ibp_json("verify-ibp", chk, c.z_threshold));
  out.pass = out.pass && chk.pass;
}

void run_pair(const RunConfig& c, const CellComplex& complex, RunOutcome& out) {
  if (c.g.size() != 1) throw ConfigError("verify-pair needs exactly one g loop");
  const PairReport rep = verify_exchangeable_pair(c.f, c.g[0], c.edge, c.epsilons, complex,
                                                  suite_params(c, Suite::VerifyPair),
                                                  c.verify_options());
  json levels = json::array();
  double worst = 0.0;
  for (const auto& l : rep.levels) {
    worst = std::max(worst, l.zscore);
    levels.push_back({{"epsilon", l.epsilon},
                      {"lhs", to_json(l.lhs)},
                      {"rhs", to_json(l.rhs)},
                      {"residual", to_json(l.difference)},
                      {"zscore", l.zscore},
                      {"pass", l.pass},
                      {"scaled_lhs_error", to_json(l.scaled_lhs_error)},
                      {"scaled_rhs_error", to_json(l.scaled_rhs_error)}});
  }
  const bool pass = rep.identity_pass && rep.trend_pass;
  const Estimate& first = rep.levels.front().lhs;
  const Estimate& first_rhs = rep.levels.front().rhs;
  out.report["suites"].push_back({{"suite", "verify-pair"},
                                  {"lhs", to_json(first)},
                                  {"rhs", to_json(first_rhs)},
                                  {"residual", to_json(rep.levels.front().difference)},
                                  {"zscore", worst},
                                  {"threshold", c.z_threshold},
                                  {"levels", levels},
                                  {"ibp_lhs", to_json(rep.ibp_lhs)},
                                  {"ibp_rhs", to_json(rep.ibp_rhs)},
                                  {"lhs_ratios", rep.lhs_ratios},
                                  {"rhs_ratios", rep.rhs_ratios},
                                  {"identity_pass", rep.identity_pass},
                                  {"trend_pass", rep.trend_pass},
                                  {"pass", pass}});
  out.pass = out.pass && pass;
}

void run_extrinsic(const RunConfig& c, const CellComplex& complex, RunOutcome& out) {
  const ExtrinsicReport rep =
      verify_extrinsic_sd(c.f, c.g, c.edge, c.measure, complex,
                          suite_params(c, Suite::VerifyExtrinsic), c.verify_options());
  out.report["suites"].push_back({{"suite", "verify-extrinsic"},
                                  {"lhs", to_json(rep.lhs)},
                                  {"rhs", to_json(rep.rhs)},
                                  {"residual", to_json(rep.difference)},
                                  {"zscore", rep.zscore},
                                  {"threshold", c.z_threshold},
                                  {"pointwise_gap", to_json(rep.pointwise_gap)},
                                  {"pass", rep.pass}});
  out.pass = out.pass && rep.pass;
}

void run_gradient(const RunConfig& c, RunOutcome& out) {
  const GradientCheckReport rep = run_gradient_check(
      c.spec(), c.gradient_cases, derive_seed(c.seed, 0x100 * (static_cast<int>(Suite::GradientCheck) + 1)));
  out.report["suites"].push_back({{"suite", "gradient-check"},
                                  {"cases", rep.cases},
                                  {"max_gradient_error", rep.max_gradient_error},
                                  {"max_laplacian_error", rep.max_laplacian_error},
                                  {"max_inner_error", rep.max_inner_error},
                                  {"gradient_tolerance", kGradientTolerance},
                                  {"laplacian_tolerance", kLaplacianTolerance},
                                  {"inner_tolerance", kInnerTolerance},
                                  {"pass", rep.pass}});
  out.pass = out.pass && rep.pass;
}

void run_sample(const RunConfig& c, const CellComplex& complex, RunOutcome& out) {
  const ChainParams p = params_for_measure(suite_params(c, Suite::SampleOnly), c.measure);
  std::vector<LoopWord> plaquettes;
  for (const auto& pl : complex.plaquettes()) plaquettes.push_back(pl.boundary);
  const std::vector<LoopWord> loops = c.loops;
  Measurement m;
  m.width = loops.size() + 1;
  m.evaluate = [&](const Configuration& q, Complex* v) {
    for (std::size_t i = 0; i < loops.size(); ++i) v[i] = wilson(loops[i], q);
    Complex avg = 0.0;
    for (const auto& w : plaquettes) avg += wilson(w, q);
    v[loops.size()] = plaquettes.empty() ? Complex(0.0) : avg / static_cast<double>(plaquettes.size());
  };
  const SamplingResult res = run_sampling(complex, p, m);
  json wl = json::array();
  for (std::size_t i = 0; i < loops.size(); ++i)
    wl.push_back({{"loop", c.loop_texts[i]}, {"wilson", to_json(res.column(i))}});
  out.report["suites"].push_back({{"suite", "sample-only"},
                                  {"sampler", to_string(p.sampler)},
                                  {"wilson_loops", wl},
                                  {"mean_plaquette", to_json(res.column(loops.size()))},
                                  {"chains", diagnostics_json(res.diagnostics)},
                                  {"pass", true}});
}

}  // namespace

RunOutcome run_config(const RunConfig& config, bool rotate) {
  CellComplex complex = [&] {
    try {
      return build_rect_lattice(config.dims, config.periodic);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  validate_config(config, complex);

  RunOutcome out;
  out.report = {{"config", config_json(config)}, {"suites", json::array()}};
  for (Suite s : config.suites) {
    switch (s) {
      case Suite::VerifyMle: run_mle(config, complex, rotate, out); break;
      case Suite::VerifyIbp: run_ibp(config, complex, out); break;
      case Suite::VerifyPair: run_pair(config, complex, out); break;
      case Suite::VerifyExtrinsic: run_extrinsic(config, complex, out); break;
      case Suite::GradientCheck: run_gradient(config, out); break;
      case Suite::SampleOnly: run_sample(config, complex, out); break;
    }
  }
  out.report["pass"] = out.pass;
  return out;
}

std::string terms_csv(const std::vector<TermRow>& rows) {
  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "term_kind,indices,coefficient,estimate_re,estimate_im,stderr\n";
  for (const auto& r : rows)
    csv << r.term_kind << ',' << r.indices << ',' << r.coefficient << ',' << r.estimate.real()
        << ',' << r.estimate.imag() << ',' << r.standard_error << '\n';
  return csv.str();
}

void write_outputs(const RunOutcome& outcome, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  std::ofstream report(base / "report.json");
  report << outcome.report.dump(2) << '\n';
  std::ofstream terms(base / "terms.csv");
  terms << terms_csv(outcome.terms);
  if (!report || !terms) throw std::runtime_error("cannot write reports into '" + dir + "'");
}

std::string describe_lattice(const CellComplex& c) {
  std::ostringstream out;
  auto coords = [&](int v) {
    std::string s = "(";
    const auto x = c.coordinates(v);
    for (std::size_t a = 0; a < x.size(); ++a) s += (a ? "," : "") + std::to_string(x[a]);
    return s + ")";
  };
  out << "lattice dims=[";
  for (std::size_t a = 0; a < c.dims().size(); ++a) out << (a ? "," : "") << c.dims()[a];
  out << "] periodic=" << (c.periodic() ? "true" : "false") << " vertices=" << c.num_vertices()
      << " edges=" << c.num_edges() << " plaquettes=" << c.num_plaquettes() << "\n\n";
  out << "edges\n  id  axis  source -> target\n";
  for (int e = 0; e < c.num_edges(); ++e) {
    const Edge& ed = c.edge(e);
    out << "  " << std::setw(2) << e << "  " << std::setw(4) << ed.axis << "  " << coords(ed.source)
        << " -> " << coords(ed.target) << '\n';
  }
  out << "\nplaquettes\n  id  corner  plane  boundary\n";
  for (int p = 0; p < c.num_plaquettes(); ++p) {
    const Plaquette& pl = c.plaquette(p);
    out << "  " << std::setw(2) << p << "  " << coords(pl.corner) << "  (" << pl.mu << "," << pl.nu
        << ")  " << to_string(pl.boundary) << '\n';
  }
  return out.str();
}

}  // namespace mloop
