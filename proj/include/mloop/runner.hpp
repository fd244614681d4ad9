#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mloop/config.hpp"

namespace mloop {

/// One line of terms.csv.
struct TermRow {
  std::string term_kind;
  std::string indices;
  double coefficient = 0.0;
  Complex estimate{0.0, 0.0};
  double standard_error = 0.0;
};

struct RunOutcome {
  nlohmann::json report;
  std::vector<TermRow> terms;
  bool pass = true;
};

nlohmann::json to_json(const Estimate& e);

/// Builds the lattice, validates the config against it and executes every
/// selected suite. With `rotate`, verify-mle is repeated once per loop that
/// contains the edge, that loop taking the distinguished slot.
RunOutcome run_config(const RunConfig& config, bool rotate = false);

/// Writes report.json and terms.csv into `dir` (created when missing).
void write_outputs(const RunOutcome& outcome, const std::string& dir);

std::string terms_csv(const std::vector<TermRow>& rows);

/// Edge and plaquette id tables, boundary words in loop-word text format.
std::string describe_lattice(const CellComplex& complex);

}  // namespace mloop
