#pragma once

#include <cmath>
#include <limits>

namespace qortho {

// Real number stored as sign * exp(log_abs). Products of Pochhammer symbols and
// q^{k^2} factors leave the binary64 range long before the quantities built from
// them do, so solution values are carried in this form.
class LogReal {
 public:
  LogReal() = default;

  static LogReal from(double x) {
    LogReal r;
    if (x == 0.0) return r;
    r.log_abs_ = std::log(std::fabs(x));
    r.sign_ = x > 0 ? 1 : -1;
    return r;
  }
  static LogReal from_log(double log_abs, int sign) {
    LogReal r;
    if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity()) return r;
    r.log_abs_ = log_abs;
    r.sign_ = sign > 0 ? 1 : -1;
    return r;
  }

  double log_abs() const { return log_abs_; }
  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  double value() const { return sign_ == 0 ? 0.0 : sign_ * std::exp(log_abs_); }
  double abs_value() const { return sign_ == 0 ? 0.0 : std::exp(log_abs_); }

  LogReal operator-() const { return from_log(log_abs_, -sign_); }
  LogReal abs() const { return from_log(log_abs_, sign_ == 0 ? 0 : 1); }

  LogReal& operator*=(const LogReal& o) {
    if (sign_ == 0 || o.sign_ == 0) return *this = LogReal();
    log_abs_ += o.log_abs_;
    sign_ *= o.sign_;
    return *this;
  }
  LogReal& operator/=(const LogReal& o) {
    if (sign_ == 0) return *this;
    log_abs_ -= o.log_abs_;  // division by zero yields +inf magnitude
    sign_ *= o.sign_ == 0 ? 1 : o.sign_;
    return *this;
  }
  LogReal& operator*=(double x) { return *this *= from(x); }
  LogReal& operator/=(double x) { return *this /= from(x); }

  LogReal& operator+=(const LogReal& o) {
    if (o.sign_ == 0) return *this;
    if (sign_ == 0) return *this = o;
    const bool mine_larger = log_abs_ >= o.log_abs_;
    const LogReal& big = mine_larger ? *this : o;
    const LogReal& small = mine_larger ? o : *this;
    double ratio = std::exp(small.log_abs_ - big.log_abs_);
    double m = big.sign_ == small.sign_ ? 1.0 + ratio : 1.0 - ratio;
    if (m == 0.0) return *this = LogReal();
    return *this = from_log(big.log_abs_ + std::log1p(big.sign_ == small.sign_ ? ratio : -ratio),
                            big.sign_);
  }
  LogReal& operator-=(const LogReal& o) { return *this += -o; }

  LogReal sqrt() const { return from_log(0.5 * log_abs_, sign_); }  // caller ensures sign >= 0
  LogReal powi(int n) const {
    if (n == 0) return from(1.0);
    if (sign_ == 0) return LogReal();
    return from_log(n * log_abs_, (n % 2 == 0) ? 1 : sign_);
  }

  friend LogReal operator*(LogReal a, const LogReal& b) { return a *= b; }
  friend LogReal operator/(LogReal a, const LogReal& b) { return a /= b; }
  friend LogReal operator+(LogReal a, const LogReal& b) { return a += b; }
  friend LogReal operator-(LogReal a, const LogReal& b) { return a -= b; }
  friend LogReal operator*(LogReal a, double b) { return a *= b; }
  friend LogReal operator/(LogReal a, double b) { return a /= b; }

 private:
  double log_abs_ = -std::numeric_limits<double>::infinity();
  int sign_ = 0;
};

}  // namespace qortho
