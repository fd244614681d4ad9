#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mloop/runner.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> suites;
  bool rotate = false;
};

mloop::RunConfig prepare(const Options& o, const std::vector<mloop::Suite>& forced) {
  mloop::RunConfig c = mloop::load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  if (!o.out.empty()) c.output_dir = o.out;
  if (!forced.empty()) {
    c.suites = forced;
  } else if (!o.suites.empty()) {
    c.suites.clear();
    for (const auto& s : o.suites) c.suites.push_back(mloop::parse_suite(s));
  }
  return c;
}

int execute(const Options& o, const std::vector<mloop::Suite>& forced) {
  const mloop::RunConfig c = prepare(o, forced);
  const mloop::RunOutcome outcome = mloop::run_config(c, o.rotate);
  mloop::write_outputs(outcome, c.output_dir);
  for (const auto& s : outcome.report["suites"]) {
    std::cout << s["suite"].get<std::string>() << ": " << (s["pass"].get<bool>() ? "pass" : "FAIL");
    if (s.contains("zscore")) std::cout << "  zscore=" << s["zscore"].get<double>();
    if (s.contains("max_gradient_error"))
      std::cout << "  max_gradient_error=" << s["max_gradient_error"].get<double>();
    std::cout << '\n';
  }
  std::cout << "reports written to " << c.output_dir << '\n';
  return outcome.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo verification of lattice master loop equations"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool with_suite) {
    sub->add_option("--config", o.config, "JSON run configuration")->required();
    sub->add_option("--out", o.out, "output directory (overrides output_dir)");
    sub->add_option("--seed", o.seed, "master seed (overrides seed)");
    if (with_suite)
      sub->add_option("--suite", o.suites, "comma-separated suites")->delimiter(',');
  };
  auto* run = app.add_subcommand("run", "run the configured suites");
  add_common(run, true);
  run->add_flag("--rotate", o.rotate, "repeat verify-mle with each loop distinguished");
  auto* describe = app.add_subcommand("describe", "print edge and plaquette id tables");
  describe->add_option("--config", o.config, "JSON run configuration")->required();
  auto* gradient = app.add_subcommand("gradient-check", "closed forms against finite differences");
  add_common(gradient, false);
  auto* sample = app.add_subcommand("sample", "sample the measure and report Wilson loops");
  add_common(sample, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*describe) {
      const mloop::RunConfig c = mloop::load_config(o.config);
      std::cout << mloop::describe_lattice(mloop::build_rect_lattice(c.dims, c.periodic));
      return 0;
    }
    if (*gradient) return execute(o, {mloop::Suite::GradientCheck});
    if (*sample) return execute(o, {mloop::Suite::SampleOnly});
    return execute(o, {});
  } catch (const mloop::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
