#pragma once

#include <cmath>

#include "qortho/errors.hpp"

namespace qortho {

// Numeric configuration shared by every evaluation. Passed by value.
class QContext {
 public:
  explicit QContext(double q = 0.5, double eps_term = 1e-16, double eps_verify = 1e-10,
                    int max_terms = 10000)
      : q_(q), log_q_(std::log(q)), eps_term_(eps_term), eps_verify_(eps_verify),
        max_terms_(max_terms) {
    if (!(q > 0.0 && q < 1.0)) throw QError(ErrorKind::InvalidParameter, "q must lie in (0,1)");
    if (!(eps_term > 0.0)) throw QError(ErrorKind::InvalidParameter, "eps_term must be positive");
    if (!(eps_verify > 0.0))
      throw QError(ErrorKind::InvalidParameter, "eps_verify must be positive");
    if (max_terms < 1) throw QError(ErrorKind::InvalidParameter, "max_terms must be >= 1");
  }

  double q() const { return q_; }
  double log_q() const { return log_q_; }
  double eps_term() const { return eps_term_; }
  double eps_verify() const { return eps_verify_; }
  int max_terms() const { return max_terms_; }

  // q^e for real e
  double pow(double e) const { return std::exp(e * log_q_); }
  // q^n, exact for q = 2^-m and moderate n
  double pown(int n) const { return std::pow(q_, n); }

 private:
  double q_;
  double log_q_;
  double eps_term_;
  double eps_verify_;
  int max_terms_;
};

}  // namespace qortho
