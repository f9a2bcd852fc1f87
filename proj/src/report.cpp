#include "qortho/report.hpp"

#include <algorithm>
#include <cmath>

namespace qortho {

VerificationReport make_report(std::string name, ParamList params, double computed,
                               double predicted, double scale, const Tolerances& tol) {
  VerificationReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.computed = computed;
  r.predicted = predicted;
  r.scale = scale > 0.0 ? scale : 1.0;
  r.abs_err = std::fabs(computed - predicted);
  if (predicted != 0.0) {
    r.rel_err = r.abs_err / std::fabs(predicted);
    r.pass = r.rel_err <= tol.rtol || r.abs_err <= tol.atol * r.scale;
  } else {
    r.rel_err = r.abs_err / r.scale;
    r.pass = r.abs_err <= tol.atol * r.scale;
  }
  if (!std::isfinite(computed) || !std::isfinite(predicted)) r.pass = false;
  return r;
}

VerificationReport custom_report(std::string name, ParamList params, double computed,
                                 double predicted, bool pass) {
  VerificationReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.computed = computed;
  r.predicted = predicted;
  r.abs_err = std::fabs(computed - predicted);
  r.rel_err = predicted != 0.0 ? r.abs_err / std::fabs(predicted) : r.abs_err;
  r.pass = pass && std::isfinite(computed) && std::isfinite(predicted);
  return r;
}

VerificationReport error_report(std::string name, ParamList params, std::string what) {
  VerificationReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.error = std::move(what);
  r.pass = false;
  return r;
}

}  // namespace qortho
