#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace kplab {

enum class ExperimentKind {
  grassmann_census,
  degenerate,
  nk_set,
  incidence_bound,
  two_ends,
  refinement_chain,
  simplex_bounds,
  maximal_ratio,
  exponent_identities
};

std::string to_string(ExperimentKind kind);

/// Parsed experiment spec. Unset optional keys fall back to per-experiment
/// defaults at run time.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::grassmann_census;
  std::optional<long> n, k, r;
  std::vector<std::uint32_t> primes;
  std::vector<std::uint64_t> seeds;
  std::optional<mpq_class> density;
  std::optional<std::string> p_exp, q_exp;  // rational or "inf"
  std::optional<long> kmax;
  std::optional<long> directions;
  std::optional<std::string> source;  // corpus | random | degenerate
  std::optional<std::string> rule;    // zero | random
  std::optional<mpq_class> margin;
  std::optional<std::string> out;

  bool operator==(const ExperimentSpec&) const = default;
};

/// key=value pairs separated by newlines or blanks; '#' starts a comment.
/// Throws SpecError naming the offending key.
ExperimentSpec parse_spec(const std::string& text);

/// Canonical text, one key per line; parse_spec(render(s)) == s.
std::string render(const ExperimentSpec& spec);

struct RunOptions {
  unsigned threads = 0;
  double budget = 1e11;  // estimated elementary operations
};

/// One table per experiment: a fixed header and one row per instance.
/// Exact integers in full, ratios to 6 significant digits, verdicts as
/// "true"/"false".
struct ReportTable {
  std::string experiment;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::string> cell(std::size_t row, const std::string& column) const;
};

/// Estimated work; run_experiment refuses above the budget.
double estimate_work(const ExperimentSpec& spec);

/// Throws SpecError for inconsistent parameters, BudgetError when the
/// estimate exceeds the budget.
ReportTable run_experiment(const ExperimentSpec& spec, const RunOptions& opts = {});

/// Header comment line with a timestamp, then the column header and rows.
void write_csv(std::ostream& os, const ReportTable& table,
               const std::string& timestamp);
/// Array of objects keyed by column name.
std::string to_json(const ReportTable& table);

/// Writes <out> (CSV) and <out>.json; returns the JSON path.
std::string write_outputs(const std::string& path, const ReportTable& table,
                          const std::string& timestamp);

std::string utc_timestamp();

/// Oracle-equivalence checks; writes one line per check, true if all pass.
bool selftest(std::ostream& os, unsigned threads = 0);

}  // namespace kplab
