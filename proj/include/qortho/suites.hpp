#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qortho/kernels.hpp"
#include "qortho/report.hpp"

namespace qortho {

struct RunConfig {
  double q = 0.5;
  double alpha = 0.25;
  double c = 2.0;
  std::optional<double> t;  // defaults to q^{-alpha/2}, i.e. t^{-2} = q^alpha
  std::optional<double> rtol;
  std::optional<double> atol;
  int max_terms = 10000;
  std::uint64_t seed = 1;
  std::vector<int> r_values{10, 20, 30};
  ExecPolicy policy = ExecPolicy::Parallel;

  double t_value() const;
  QContext context() const;
  // the suite's own tolerances unless overridden
  Tolerances tol(double rtol_default, double atol_default) const;
};

struct SuiteResult {
  std::string suite;
  std::vector<VerificationReport> reports;
  bool all_pass() const;
};

const std::vector<std::string>& suite_names();  // without "all"
bool is_suite(const std::string& name);
// "all" runs every suite in suite_names() order
std::vector<SuiteResult> run_suite(const std::string& name, const RunConfig& cfg);

}  // namespace qortho
