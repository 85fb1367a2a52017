#pragma once

#include <memory>
#include <string>
#include <vector>

#include "isoflow/json_io.hpp"
#include "isoflow/solvable_model.hpp"

namespace isoflow {

/// One verification check. `informational` checks record a measurement
/// (for instance a reference coefficient that disagrees with the oracle)
/// and never fail the suite.
///
/// `kind` is "deviation" (absolute closed form versus oracle or identity
/// residual), "condition" (pass/fail predicate, value 0 or 1) or "rate"
/// (relative error of a measured decay rate).
struct Check {
  std::string id;
  std::string kind;
  double value = 0;
  double tolerance = 0;
  bool passed = true;
  bool informational = false;
  std::string note;
};

struct VerifyReport {
  std::string model;
  std::vector<Check> checks;
  bool passed() const;
  std::vector<std::string> failures() const;
  /// Largest value over non-informational deviation checks.
  double max_deviation() const;
};

struct VerifyOptions {
  int k = 1;
  int b_dim = 0;
  /// Offsets swept for the shape/Jacobi/commutator suites.
  std::vector<double> sweep{-2, -1, 0, 0.5, 1, 2};
  double step = 1e-3;
  double horizon = 20;
};

/// Runs every oracle-versus-closed-form suite for one model.
VerifyReport verify_model(std::shared_ptr<const SolvableModel> model, const VerifyOptions& opts = {});

/// Same suites for an explicit model-backed config (its offsets are ignored;
/// the sweep supplies them). Throws ConfigError for datum-only configs.
VerifyReport verify_config(const FoliationConfig& cfg, const VerifyOptions& opts = {});

json to_json(const VerifyReport& report);

}  // namespace isoflow
