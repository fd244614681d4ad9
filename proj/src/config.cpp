#include "mloop/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mloop {

using nlohmann::json;

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::VerifyMle: return "verify-mle";
    case Suite::VerifyIbp: return "verify-ibp";
    case Suite::VerifyPair: return "verify-pair";
    case Suite::VerifyExtrinsic: return "verify-extrinsic";
    case Suite::GradientCheck: return "gradient-check";
    case Suite::SampleOnly: return "sample-only";
  }
  return "?";
}

Suite parse_suite(const std::string& name) {
  for (Suite s : {Suite::VerifyMle, Suite::VerifyIbp, Suite::VerifyPair, Suite::VerifyExtrinsic,
                  Suite::GradientCheck, Suite::SampleOnly})
    if (to_string(s) == name) return s;
  throw ConfigError("unknown suite '" + name + "'");
}

ChainParams RunConfig::chain_params() const {
  ChainParams p;
  p.spec = spec();
  p.beta = beta;
  p.sampler = sampler;
  p.sweeps = sweeps;
  p.burn_in = burn_in;
  p.proposal_step = proposal_step;
  p.langevin_dt = dt;
  p.seed = seed;
  p.chains = chains;
  p.batches = batches;
  return p;
}

VerifyOptions RunConfig::verify_options() const {
  VerifyOptions o;
  o.z_threshold = z_threshold;
  o.stderr_floor = stderr_floor;
  o.enumeration.flip_twist_signs = flip_twist_signs;
  return o;
}

namespace {

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::vector<std::string> known = {
      "group", "N", "beta", "dims", "periodic", "loops", "edge", "sampler", "sweeps",
      "burn_in", "seed", "chains", "dt", "proposal_step", "batches", "suites", "z_threshold",
      "stderr_floor", "flip_twist_signs", "measure", "epsilons", "gradient_cases", "output_dir", "f", "g"};
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown config key '" + key + "'");

  RunConfig c;
  std::string group = "SO", sampler = "metropolis", measure = "yang-mills";
  std::vector<std::string> suites;
  read(j, "group", group);
  read(j, "N", c.n);
  read(j, "beta", c.beta);
  read(j, "dims", c.dims);
  read(j, "periodic", c.periodic);
  read(j, "loops", c.loop_texts);
  read(j, "edge", c.edge);
  read(j, "sampler", sampler);
  read(j, "sweeps", c.sweeps);
  read(j, "burn_in", c.burn_in);
  read(j, "seed", c.seed);
  read(j, "chains", c.chains);
  read(j, "dt", c.dt);
  read(j, "proposal_step", c.proposal_step);
  read(j, "batches", c.batches);
  read(j, "suites", suites);
  read(j, "z_threshold", c.z_threshold);
  read(j, "stderr_floor", c.stderr_floor);
  read(j, "flip_twist_signs", c.flip_twist_signs);
  read(j, "measure", measure);
  read(j, "epsilons", c.epsilons);
  read(j, "gradient_cases", c.gradient_cases);
  read(j, "output_dir", c.output_dir);
  read(j, "f", c.f_text);
  read(j, "g", c.g_texts);

  try {
    c.family = parse_group_family(group);
    (void)c.spec();
    c.sampler = parse_sampler_kind(sampler);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (measure == "haar")
    c.measure = Measure::Haar;
  else if (measure == "yang-mills")
    c.measure = Measure::YangMills;
  else
    throw ConfigError("unknown measure '" + measure + "'");

  if (j.contains("suites")) {
    if (suites.empty()) throw ConfigError("suite selection is empty");
    c.suites.clear();
    for (const auto& s : suites) c.suites.push_back(parse_suite(s));
  }
  for (const auto& text : c.loop_texts) {
    try {
      c.loops.push_back(parse_loop(text));
    } catch (const LoopError& e) {
      throw ConfigError("loop '" + text + "': " + e.what());
    }
  }
  auto parse_named = [](const std::string& key, const std::string& text) {
    try {
      return parse_loop(text);
    } catch (const LoopError& e) {
      throw ConfigError(key + " '" + text + "': " + e.what());
    }
  };
  if (!c.f_text.empty()) c.f = parse_named("f", c.f_text);
  else if (!c.loops.empty()) c.f = c.loops[0];
  for (const auto& text : c.g_texts) c.g.push_back(parse_named("g", text));
  if (c.g_texts.empty() && !c.loops.empty()) {
    if (c.loops.size() == 1) c.g.push_back(c.loops[0]);
    else c.g.assign(c.loops.begin() + 1, c.loops.end());
  }
  if (c.z_threshold <= 0) throw ConfigError("z_threshold must be positive");
  if (c.stderr_floor < 0) throw ConfigError("stderr_floor must be non-negative");
  if (c.gradient_cases < 1) throw ConfigError("gradient_cases must be positive");
  try {
    c.chain_params().validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate_config(const RunConfig& config, const CellComplex& complex) {
  if (config.edge < 0 || config.edge >= complex.num_edges())
    throw ConfigError("distinguished edge " + std::to_string(config.edge) +
                      " does not exist (lattice has " + std::to_string(complex.num_edges()) +
                      " edges)");
  for (std::size_t i = 0; i < config.loops.size(); ++i) {
    try {
      complex.validate_loop(config.loops[i]);
    } catch (const LoopError& e) {
      throw ConfigError("loop " + std::to_string(i) + " ('" + config.loop_texts[i] + "'): " + e.what());
    }
  }
  auto check = [&](const std::string& what, const LoopWord& w) {
    try {
      complex.validate_loop(w);
    } catch (const LoopError& e) {
      throw ConfigError(what + ": " + e.what());
    }
  };
  if (!config.f.is_null()) check("f", config.f);
  for (const auto& w : config.g) check("g", w);
  const bool needs_loops = std::any_of(config.suites.begin(), config.suites.end(), [](Suite s) {
    return s != Suite::GradientCheck && s != Suite::SampleOnly;
  });
  if (needs_loops) {
    if (config.loops.empty()) throw ConfigError("the selected suites need at least one loop");
    if (occurrences(config.loops[0], config.edge).empty())
      throw ConfigError("edge " + std::to_string(config.edge) +
                        " does not occur in the distinguished loop '" + config.loop_texts[0] + "'");
    if (!config.f.is_null() && occurrences(config.f, config.edge).empty())
      throw ConfigError("edge " + std::to_string(config.edge) + " does not occur in f");
  }
  const bool extrinsic = std::find(config.suites.begin(), config.suites.end(),
                                   Suite::VerifyExtrinsic) != config.suites.end();
  if (extrinsic && config.family != GroupFamily::SO)
    throw ConfigError("verify-extrinsic requires group SO");
}

}  // namespace mloop
