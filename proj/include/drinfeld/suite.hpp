#pragma once

// Sample modules, automatic grid and residue-field selection, and the batch
// verification suite behind `drinfeld verify`.

#include <string>
#include <vector>

#include "drinfeld/drinfeld_module.hpp"
#include "drinfeld/report.hpp"
#include "drinfeld/serialize.hpp"

namespace drinfeld {

/// c * theta^(num/den) with c an integer read in F_p.
struct MonomialSpec {
  int64_t c = 1;
  int64_t num = 0;
  int64_t den = 1;
};

/// A module given independently of any grid: rho_t = theta + kappa tau + u tau^2
/// (rank 2) or theta + u tau (rank 1).
struct ModuleRecipe {
  std::string name;
  uint32_t p = 3;
  uint32_t s = 1;
  int rank = 2;
  MonomialSpec kappa{0, 0, 1};
  MonomialSpec u{1, 0, 1};
};

Json to_json(const ModuleRecipe& r);
ModuleRecipe recipe_from_json(const Json& j);
/// "carlitz", "theta+tau+tau^2" or "theta+theta*tau+tau^2".
ModuleRecipe sample_recipe(const std::string& name, uint32_t q);
/// The sample modules used by `verify` for q = 3 or q = 5.
std::vector<ModuleRecipe> sample_recipes(uint32_t q);

struct FieldChoice {
  FieldConfig config;
  /// Torsion seeds independent over F_q found with this choice.
  size_t seeds = 0;
  std::string note;
};

/// Smallest grid carrying the torsion valuations and twist depth, then the
/// smallest even m (up to |F_{q^m}| <= 2^15) giving rank-many independent
/// torsion seeds, or the one giving the most.
FieldChoice choose_field(const ModuleRecipe& r, const Precision& prec, int depth = 2);
DrinfeldModule build_module(const ModuleRecipe& r, const FieldPtr& f);
CInf monomial_value(const MonomialSpec& m, const FieldPtr& f);

struct SuiteOptions {
  std::vector<ModuleRecipe> modules;
  /// q values whose algebra checks run (adjoint, exp o log, quasi recursion, CM).
  std::vector<uint32_t> algebra_q;
  Precision prec;
};

struct SuiteResult {
  std::vector<CheckReport> checks;
  bool all_pass() const;
};

/// Checks for one module in a fixed order; errors become failing reports.
std::vector<CheckReport> module_checks(const ModuleRecipe& r, const Precision& prec);
std::vector<CheckReport> algebra_checks(uint32_t q, const Precision& prec);
/// Runs every task (in parallel when available) and returns the reports in
/// canonical order.
SuiteResult run_suite(const SuiteOptions& opts);
/// Deterministic unless `with_time`.
Json suite_to_json(const SuiteOptions& opts, const SuiteResult& r, bool with_time);

}  // namespace drinfeld
