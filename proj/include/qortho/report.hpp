#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qortho {

struct Tolerances {
  double rtol = 1e-9;
  double atol = 1e-10;
};

using ParamList = std::vector<std::pair<std::string, double>>;

// One checked identity. pass <=> abs_err <= atol*scale or (predicted != 0 and
// rel_err <= rtol). For a zero prediction rel_err is abs_err/scale.
struct VerificationReport {
  std::string name;
  ParamList params;
  double computed = 0.0;
  double predicted = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double scale = 1.0;
  double cancellation = 1.0;
  int k_lo = 0;
  int k_hi = 0;
  bool pass = false;
  std::string error;  // set when the check threw instead of producing a value
};

VerificationReport make_report(std::string name, ParamList params, double computed,
                               double predicted, double scale, const Tolerances& tol);

// for checks whose pass rule is not a tolerance (monotonicity, bounds)
VerificationReport custom_report(std::string name, ParamList params, double computed,
                                 double predicted, bool pass);

VerificationReport error_report(std::string name, ParamList params, std::string what);

}  // namespace qortho
