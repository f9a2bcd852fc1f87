#include "qortho/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qortho {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kRescaleExp = 600;

std::optional<int> power_index(double a, const QContext& ctx) {
  if (!(a > 0.0)) return std::nullopt;
  double n = std::log(a) / -ctx.log_q();
  double r = std::round(n);
  if (r < 0.0 || r > ctx.max_terms()) return std::nullopt;
  int m = static_cast<int>(r);
  double target = ctx.pown(-m);
  if (std::fabs(a - target) < 1e-12 * target) return m;
  return std::nullopt;
}

int truncation_length(double a, const QContext& ctx) {
  if (a == 0.0) return 0;
  double n = std::ceil(std::log(ctx.eps_term() / std::fabs(a)) / ctx.log_q());
  if (!(n >= 1.0)) n = 1.0;
  if (n > ctx.max_terms())
    throw QError(ErrorKind::TruncationCapExceeded,
                 "infinite product needs " + std::to_string(n) + " factors");
  return static_cast<int>(n);
}

}  // namespace

void CompensatedSum::add(double x) {
  double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
  abs_sum_ += std::fabs(x);
}

void CompensatedSum::scale(int exp2) {
  sum_ = std::ldexp(sum_, exp2);
  comp_ = std::ldexp(comp_, exp2);
  abs_sum_ = std::ldexp(abs_sum_, exp2);
}

double CompensatedSum::cancellation() const {
  double s = std::fabs(sum());
  if (abs_sum_ == 0.0) return 1.0;
  return abs_sum_ / std::max(s, kTiny);
}

std::optional<int> terminating_index(double a, const QContext& ctx) { return power_index(a, ctx); }
std::optional<int> pole_index(double b, const QContext& ctx) { return power_index(b, ctx); }

double qpoch_finite(double a, int n, const QContext& ctx) {
  double p = 1.0, qj = 1.0;
  for (int j = 0; j < n; ++j) {
    p *= 1.0 - a * qj;
    qj *= ctx.q();
  }
  return p;
}

LogReal qpoch_finite_log(double a, int n, const QContext& ctx) {
  double la = 0.0, qj = 1.0;
  int sign = 1;
  for (int j = 0; j < n; ++j) {
    double f = 1.0 - a * qj;
    if (f == 0.0) return LogReal();
    if (f < 0) sign = -sign;
    la += std::fabs(a * qj) < 0.5 ? std::log1p(-a * qj) : std::log(std::fabs(f));
    qj *= ctx.q();
  }
  return LogReal::from_log(la, sign);
}

LogReal qpoch_inf_log(double a, const QContext& ctx) {
  return qpoch_finite_log(a, truncation_length(a, ctx), ctx);
}

SeriesValue qpoch_inf(double a, const QContext& ctx) {
  int n = truncation_length(a, ctx);
  SeriesValue out;
  out.value = qpoch_finite_log(a, n, ctx).value();
  out.n_terms = n;
  double tail = std::fabs(a) * ctx.pown(n) / (1.0 - ctx.q());
  out.abs_err = std::fabs(out.value) * (2.0 * tail + 4.0 * (n + 1) * kEps);
  return out;
}

SeriesValue qpoch_multi(std::span<const double> params, const QContext& ctx) {
  SeriesValue out;
  out.value = 1.0;
  double rel = 0.0;
  for (double a : params) {
    SeriesValue s = qpoch_inf(a, ctx);
    out.value *= s.value;
    out.n_terms = std::max(out.n_terms, s.n_terms);
    if (s.value != 0.0) rel += s.abs_err / std::fabs(s.value);
  }
  out.abs_err = std::fabs(out.value) * rel;
  return out;
}

LogReal qpoch_multi_log(std::initializer_list<double> params, const QContext& ctx) {
  LogReal r = LogReal::from(1.0);
  for (double a : params) r *= qpoch_inf_log(a, ctx);
  return r;
}

double qpoch_inf_scale(double a, const QContext& ctx) {
  return qpoch_inf_log(-std::fabs(a), ctx).value();
}

SeriesValue phi_rs(const PhiSpec& spec, const QContext& ctx) {
  const int r = static_cast<int>(spec.upper.size());
  const int s = static_cast<int>(spec.lower.size());
  const int power = 1 + s - r;

  int end = std::numeric_limits<int>::max();
  for (double a : spec.upper)
    if (auto n = terminating_index(a, ctx)) end = std::min(end, *n);
  const bool terminating = end != std::numeric_limits<int>::max();

  for (double b : spec.lower)
    if (auto m = pole_index(b, ctx); m && *m < end)
      throw QError(ErrorKind::PoleInLowerParameter,
                   "lower parameter " + std::to_string(b) + " = q^-" + std::to_string(*m));
  if (!terminating && spec.z != 0.0) {
    if (power < 0) throw QError(ErrorKind::DivergentSeries, "1+s-r < 0 for a non-terminating series");
    if (power == 0 && std::fabs(spec.z) >= 1.0)
      throw QError(ErrorKind::DivergentSeries, "|z| >= 1 for a balanced series");
  }

  CompensatedSum sum;
  double term = 1.0, qj = 1.0, last = 1.0;
  int small = 0, j = 0;
  sum.add(term);
  while (j < end && spec.z != 0.0) {
    double ratio = spec.z / (1.0 - qj * ctx.q());
    for (double a : spec.upper) ratio *= 1.0 - a * qj;
    for (double b : spec.lower) ratio /= 1.0 - b * qj;
    ratio *= std::pow(-qj, power);
    term *= ratio;
    ++j;
    qj *= ctx.q();
    if (j + 1 > ctx.max_terms())
      throw QError(ErrorKind::TruncationCapExceeded, "phi_rs exceeded max_terms");
    sum.add(term);
    last = term;
    if (term == 0.0) break;
    if (!terminating) {
      if (std::fabs(term) < ctx.eps_term() * std::fabs(sum.sum()) && std::fabs(ratio) < 1.0) {
        if (++small >= 3) break;
      } else {
        small = 0;
      }
    }
  }

  SeriesValue out;
  out.value = sum.sum();
  out.n_terms = j + 1;
  out.cancellation = sum.cancellation();
  out.abs_err = 4.0 * kEps * sum.abs_sum() + (terminating ? 0.0 : std::fabs(last));
  return out;
}

LogSeries regularized_sum(std::span<const double> upper, double b, int power, double z,
                          const QContext& ctx) {
  int end = std::numeric_limits<int>::max();
  for (double a : upper)
    if (auto n = terminating_index(a, ctx)) end = std::min(end, *n);
  const bool terminating = end != std::numeric_limits<int>::max();

  int j0 = 0;
  if (auto m = pole_index(b, ctx)) j0 = *m + 1;
  LogSeries out;
  if (j0 > end) return out;  // every surviving term carries a vanishing (b q^j;q)_inf
  if (z == 0.0) {
    if (j0 == 0) out.value = qpoch_inf_log(b, ctx);
    out.n_terms = 1;
    return out;
  }

  // first non-vanishing term, in log form
  LogReal first = LogReal::from(1.0);
  for (double a : upper) first *= qpoch_finite_log(a, j0, ctx);
  first /= qpoch_finite_log(ctx.q(), j0, ctx);
  first *= j0 > 0 ? qpoch_inf_log(ctx.q(), ctx) : qpoch_inf_log(b, ctx);
  first *= LogReal::from_log(power * 0.5 * j0 * (j0 - 1.0) * ctx.log_q(),
                             (power * j0) % 2 == 0 ? 1 : -1);
  first *= LogReal::from(z).powi(j0);
  if (first.is_zero()) return out;

  CompensatedSum sum;
  double term = 1.0, last = 1.0;
  double qj = ctx.pown(j0);
  int offset2 = 0, small = 0, j = j0;
  sum.add(term);
  while (j < end) {
    double ratio = z / (1.0 - qj * ctx.q()) / (1.0 - b * qj);
    for (double a : upper) ratio *= 1.0 - a * qj;
    ratio *= std::pow(-qj, power);
    term *= ratio;
    ++j;
    qj *= ctx.q();
    if (j - j0 + 1 > ctx.max_terms())
      throw QError(ErrorKind::TruncationCapExceeded, "regularized series exceeded max_terms");
    if (std::fabs(term) > std::ldexp(1.0, kRescaleExp)) {
      term = std::ldexp(term, -kRescaleExp);
      sum.scale(-kRescaleExp);
      offset2 += kRescaleExp;
    }
    sum.add(term);
    last = term;
    if (term == 0.0) break;
    if (!terminating) {
      if (std::fabs(term) < ctx.eps_term() * std::fabs(sum.sum()) && std::fabs(ratio) < 1.0) {
        if (++small >= 3) break;
      } else {
        small = 0;
      }
    }
  }

  double s = sum.sum();
  out.n_terms = j - j0 + 1;
  out.cancellation = sum.cancellation();
  out.rel_err = 4.0 * kEps * out.cancellation +
                (terminating || s == 0.0 ? 0.0 : std::fabs(last / s));
  out.value = first * LogReal::from(s) * LogReal::from_log(offset2 * std::log(2.0), 1);
  return out;
}

LogSeries phi11_regularized(double a, double b, double z, const QContext& ctx,
                            FormPolicy policy) {
  const double up[1] = {a};
  auto direct = [&] { return regularized_sum(up, b, 1, z, ctx); };
  auto swapped = [&] {
    const double up2[1] = {a * z / b};
    return regularized_sum(up2, z, 1, b, ctx);
  };
  if (policy == FormPolicy::Direct) return direct();
  if (b == 0.0 || z == 0.0) {
    if (policy == FormPolicy::Transformed)
      throw QError(ErrorKind::InvalidParameter, "transformed form needs b != 0 and z != 0");
    return direct();
  }
  if (policy == FormPolicy::Transformed) return swapped();
  if (terminating_index(a, ctx)) return direct();

  LogSeries d = direct();
  if (std::fabs(z) <= 1.0 && d.cancellation < 1e4) return d;
  LogSeries s = swapped();
  return s.cancellation < d.cancellation ? s : d;
}

double phi11(double a, double b, double z, const QContext& ctx, FormPolicy policy) {
  if (pole_index(b, ctx)) return phi_rs(PhiSpec{{a}, {b}, z}, ctx).value;
  return (phi11_regularized(a, b, z, ctx, policy).value / qpoch_inf_log(b, ctx)).value();
}

}  // namespace qortho

namespace qortho {

namespace {

constexpr int kSmallRun = 5;

void add_checked(CompensatedSum& sum, double v, int k) {
  if (!std::isfinite(v))
    throw QError(ErrorKind::NonSummable, "non-finite term at k=" + std::to_string(k));
  sum.add(v);
}

// extend from k_from in direction step until the small-term run fires
int extend(const std::function<double(int)>& term, const QContext& ctx, CompensatedSum& sum,
           int k_from, int step, int k_cap, double& last) {
  int small = 0, k = k_from;
  for (;; k += step) {
    if (std::abs(k) > k_cap)
      throw QError(ErrorKind::NonSummable, "no decay detected within |k| <= " + std::to_string(k_cap));
    double v = term(k);
    add_checked(sum, v, k);
    last = v;
    if (std::fabs(v) <= ctx.eps_term() * sum.abs_sum()) {
      if (++small >= kSmallRun) return k;
    } else {
      small = 0;
    }
  }
}

SeriesValue finish(const CompensatedSum& sum, int n_terms, double last) {
  SeriesValue out;
  out.value = sum.sum();
  out.n_terms = n_terms;
  out.cancellation = sum.cancellation();
  out.abs_err = 4.0 * kEps * sum.abs_sum() + std::fabs(last);
  return out;
}

}  // namespace

BilateralSum bilateral_sum(const std::function<double(int)>& term, const QContext& ctx,
                           int k_start, int k_cap) {
  CompensatedSum sum;
  for (int k = -k_start; k <= k_start; ++k) add_checked(sum, term(k), k);
  double last_hi = 0.0, last_lo = 0.0;
  BilateralSum out;
  out.k_hi = extend(term, ctx, sum, k_start + 1, 1, k_cap, last_hi);
  out.k_lo = extend(term, ctx, sum, -k_start - 1, -1, k_cap, last_lo);
  int n = out.k_hi - out.k_lo + 1;
  if (n > ctx.max_terms()) throw QError(ErrorKind::TruncationCapExceeded, "bilateral sum too long");
  out.sum = finish(sum, n, std::fabs(last_hi) + std::fabs(last_lo));
  return out;
}

BilateralSum unilateral_sum(const std::function<double(int)>& term, const QContext& ctx,
                            int k_first, int step, int min_terms, int k_cap) {
  CompensatedSum sum;
  int k = k_first;
  for (int i = 0; i < min_terms; ++i, k += step) add_checked(sum, term(k), k);
  double last = 0.0;
  int k_end = extend(term, ctx, sum, k, step, k_cap, last);
  BilateralSum out;
  out.k_lo = std::min(k_first, k_end);
  out.k_hi = std::max(k_first, k_end);
  out.sum = finish(sum, out.k_hi - out.k_lo + 1, last);
  return out;
}

}  // namespace qortho
