#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace growth {

struct SuiteCheck {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  /// Agreement tolerance between exact routes.
  double tol = 1e-6;
  std::uint64_t seed = 1;
};

/// Suites: identities, agreement, spectral, asymptotics, all.
std::vector<SuiteCheck> run_suite(const std::string& suite, const VerifyOptions& opt = {});
const std::vector<std::string>& suite_names();

nlohmann::ordered_json suite_report(const std::vector<SuiteCheck>& checks);

/// The 21 interior directions used by the agreement checks.
std::vector<double> agreement_grid(const std::string& language);

}  // namespace growth
