#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "schemes/inequalities.hpp"
#include "schemes/scheme.hpp"

namespace schemes {

/// Parameters shared by all verification suites. Zero means "suite default".
struct SuiteParams {
  std::size_t n = 0;
  std::size_t q = 0;
  std::size_t k = 0;
  std::size_t trials = 0;
  std::size_t max_t = 0;
  std::uint64_t seed = 0;
  std::string mode;
};

struct SuiteRow {
  std::string instance;
  BoundReport report;
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteRow> rows;
  /// Set when a construction suite found nothing to certify.
  bool infeasible = false;
  /// Suite-specific data for the JSON report (for example a search log).
  nlohmann::json details;

  bool all_hold() const;
  const SuiteRow* first_failure() const;
};

/// ruzsa, expand, commbound, mains, star, pigeonhole, girthex.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(const std::string& suite, const SuiteParams& params);

/// Column header line used for CSV output of every suite.
std::string suite_csv_header();
std::string to_csv(const SuiteResult& result);
nlohmann::json to_json(const SuiteResult& result);

/// Pair-orbit scheme of the regular action of Z_q, built once per q.
class CyclicSchemeCache {
 public:
  const Scheme& get(std::size_t q);

 private:
  std::map<std::size_t, std::unique_ptr<Scheme>> cache_;
};

/// Cay(Z_q, S) for S given as residues.
Relation cyclic_cayley(std::size_t q, const std::vector<std::size_t>& connection);

}  // namespace schemes
