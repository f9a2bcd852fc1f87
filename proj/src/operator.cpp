#include "qortho/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qortho/tridiag.hpp"

namespace qortho {

namespace {

// s^2 = q^m for an integer m
std::optional<int> square_power(double s, const QContext& ctx) {
  double m = std::log(s * s) / ctx.log_q();
  double r = std::round(m);
  if (std::fabs(m - r) < 1e-12 * std::max(1.0, std::fabs(r))) return static_cast<int>(r);
  return std::nullopt;
}

LogReal lattice_prefactor(const OperatorSpec& spec, int k) {
  const QContext& ctx = spec.ctx;
  return qpoch_inf_log(-ctx.pown(1 - k) / spec.c, ctx).sqrt() *
         LogReal::from_log(0.25 * k * (k + 1.0) * ctx.log_q(), 1);
}

}  // namespace

OperatorSpec::OperatorSpec(double c_, double t_, QContext ctx_) : c(c_), t(t_), ctx(ctx_) {
  if (!(c > 0.0)) throw QError(ErrorKind::InvalidParameter, "operator needs c > 0");
  if (!(std::fabs(t) > std::sqrt(ctx.q())))
    throw QError(ErrorKind::InvalidParameter, "operator needs |t| > q^{1/2}");
  degenerate = square_power(t, ctx).has_value();
}

LogReal LatticeVector::eval_log(int k) const {
  if (k >= lo_ && k <= hi_) return cache_[k - lo_];
  return gen_(k);
}

void LatticeVector::materialize(int lo, int hi) {
  std::vector<LogReal> vals;
  vals.reserve(std::max(0, hi - lo + 1));
  for (int k = lo; k <= hi; ++k) vals.push_back(eval_log(k));
  cache_ = std::move(vals);
  lo_ = lo;
  hi_ = hi;
}

std::pair<double, double> coeffs(const OperatorSpec& spec, int k) {
  const QContext& ctx = spec.ctx;
  double a = ctx.pow(-(k + 1) / 2.0) * std::sqrt(1.0 + ctx.pown(-k) / spec.c);
  double b = (spec.t + 1.0 / spec.t) * ctx.pown(-k) / std::sqrt(spec.c);
  return {a, b};
}

double apply_L(const OperatorSpec& spec, const LatticeVector& u, int k) {
  auto [a, b] = coeffs(spec, k);
  double am = coeffs(spec, k - 1).first;
  LogReal s = u.eval_log(k + 1) * a;
  s += u.eval_log(k) * b;
  s += u.eval_log(k - 1) * am;
  return s.value();
}

LogReal v_sol_log(const OperatorSpec& spec, double s, int k, double x, bool allow_degenerate) {
  const QContext& ctx = spec.ctx;
  const double sc = std::sqrt(spec.c);
  const double b = ctx.q() * s * s;
  if (!allow_degenerate) {
    if (auto m = square_power(s, ctx); m && *m <= -1)
      throw QError(ErrorKind::DegenerateParameter, "s = +-q^{-m/2} needs the regularized relation");
  }
  LogReal pre = lattice_prefactor(spec, k) * LogReal::from(-s * sc).powi(k);
  if (x == 0.0) {
    return pre * regularized_sum({}, b, 2, -ctx.pown(k + 1) * spec.c * s * s, ctx).value;
  }
  return pre * phi11_regularized(-s * sc / x, b, x * s * ctx.pown(k + 1) * sc, ctx).value;
}

double v_sol(const OperatorSpec& spec, double s, int k, double x) {
  return v_sol_log(spec, s, k, x).value();
}

LogReal u_sol_direct_log(const OperatorSpec& spec, int k, double x) {
  const QContext& ctx = spec.ctx;
  if (x == 0.0) throw QError(ErrorKind::InvalidParameter, "U needs x != 0");
  const double z = -ctx.pown(1 - k) / spec.c;
  if (std::fabs(z) >= 1.0)
    throw QError(ErrorKind::DivergentSeries, "2phi1 for U needs q^{1-k}/c < 1");
  const double sc = std::sqrt(spec.c);
  SeriesValue f = phi_rs(PhiSpec{{-sc / (spec.t * x), -sc * spec.t / x}, {0.0}, z}, ctx);
  return lattice_prefactor(spec, k) * LogReal::from(x).powi(k) * LogReal::from(f.value);
}

LogReal u_sol_log(const OperatorSpec& spec, int k, double x) {
  if (x == 0.0) throw QError(ErrorKind::InvalidParameter, "U needs x != 0");
  if (spec.ctx.pown(1 - k) / spec.c < 1.0) return u_sol_direct_log(spec, k, x);
  if (spec.degenerate)
    throw QError(ErrorKind::DegenerateParameter, "U beyond the 2phi1 domain needs non-degenerate t");
  const double t = spec.t;
  LogReal a = LogReal::from(big_C(spec, t)) * c_func_log(spec, t, x) * v_sol_log(spec, t, k, x);
  LogReal b = LogReal::from(big_C(spec, 1.0 / t)) * c_func_log(spec, 1.0 / t, x) *
              v_sol_log(spec, 1.0 / t, k, x);
  return a + b;
}

double u_sol(const OperatorSpec& spec, int k, double x) { return u_sol_log(spec, k, x).value(); }

LatticeVector v_vector(const OperatorSpec& spec, double s, double x) {
  return LatticeVector([spec, s, x](int k) { return v_sol_log(spec, s, k, x); });
}

LatticeVector u_vector(const OperatorSpec& spec, double x) {
  return LatticeVector([spec, x](int k) { return u_sol_log(spec, k, x); });
}

LogReal c_func_log(const OperatorSpec& spec, double s, double x) {
  if (x == 0.0) throw QError(ErrorKind::InvalidParameter, "c-function needs x != 0");
  const QContext& ctx = spec.ctx;
  const double sc = std::sqrt(spec.c);
  return qpoch_inf_log(-sc / (x * s), ctx) * qpoch_inf_log(ctx.q() * s / (x * sc), ctx) *
         qpoch_inf_log(x * sc / s, ctx);
}

double c_func(const OperatorSpec& spec, double s, double x) {
  return c_func_log(spec, s, x).value();
}

double big_C(const OperatorSpec& spec, double s) {
  const QContext& ctx = spec.ctx;
  if (square_power(s, ctx))
    throw QError(ErrorKind::DegenerateParameter, "C_s needs s^2 outside q^Z");
  LogReal d = qpoch_multi_log({ctx.q() * s * s, 1.0 / (s * s), -spec.c, -ctx.q() / spec.c}, ctx);
  return (LogReal::from(1.0) / d).value();
}

Residual connection_residual(const OperatorSpec& spec, double x, int k) {
  if (spec.degenerate)
    throw QError(ErrorKind::DegenerateParameter, "connection formula needs non-degenerate t");
  const double t = spec.t;
  double u = u_sol_direct_log(spec, k, x).value();
  double a = big_C(spec, t) * c_func(spec, t, x) * v_sol(spec, t, k, x);
  double b = big_C(spec, 1.0 / t) * c_func(spec, 1.0 / t, x) * v_sol(spec, 1.0 / t, k, x);
  Residual r;
  r.value = u - a - b;
  r.scale = std::max({std::fabs(u), std::fabs(a), std::fabs(b)});
  return r;
}

Sides degenerate_t_relation(const OperatorSpec& spec, int m, int sign, int k, double x) {
  if (m < 0) throw QError(ErrorKind::InvalidParameter, "degenerate relation needs m >= 0");
  const QContext& ctx = spec.ctx;
  const double sg = sign >= 0 ? 1.0 : -1.0;
  const double sc = std::sqrt(spec.c);
  Sides out;
  out.lhs = v_sol_log(spec, sg * ctx.pow(-m / 2.0), k, x, true).value();
  LogReal r = LogReal::from(-spec.c).powi(m) *
              qpoch_inf_log(-sg * ctx.pow(1.0 - m / 2.0) * x / sc, ctx) /
              qpoch_inf_log(-sg * ctx.pow(1.0 + m / 2.0) * x / sc, ctx) *
              v_sol_log(spec, sg * ctx.pow(m / 2.0), k, x, true);
  out.rhs = r.value();
  return out;
}

double wronskian(const OperatorSpec& spec, const LatticeVector& u, const LatticeVector& v, int k) {
  LogReal d = u.eval_log(k + 1) * v.eval_log(k) - u.eval_log(k) * v.eval_log(k + 1);
  return (d * coeffs(spec, k).first).value();
}

WronskianForms wronskian_closed_forms(const OperatorSpec& spec, double x) {
  const QContext& ctx = spec.ctx;
  const double t = spec.t, c = spec.c, q = ctx.q();
  const double sc = std::sqrt(c);
  WronskianForms w;
  w.w_vv = (LogReal::from(sc / t) *
            qpoch_multi_log({t * t, q / (t * t), -1.0 / c, -c * q}, ctx)).value();
  w.w_vv_three = (LogReal::from(sc / t) *
                  qpoch_multi_log({t * t, q / (t * t) - 1.0 / c, -c * q}, ctx)).value();
  w.w_uv = c_func(spec, 1.0 / t, x) / (-t * sc);
  w.w_uv_inv = c_func(spec, t, x) / (-sc / t);
  return w;
}

namespace {

LogReal green_denominator(const OperatorSpec& spec, double x) {
  if (x == 0.0) throw QError(ErrorKind::InvalidParameter, "Green function needs x != 0");
  const QContext& ctx = spec.ctx;
  const double t = spec.t, sc = std::sqrt(spec.c);
  LogReal ct = c_func_log(spec, t, x);
  double scale = qpoch_inf_scale(-sc / (x * t), ctx) * qpoch_inf_scale(ctx.q() * t / (x * sc), ctx) *
                 qpoch_inf_scale(x * sc / t, ctx);
  if (ct.is_zero() || ct.abs_value() <= ctx.eps_verify() * scale)
    throw QError(ErrorKind::SingularWronskian, "x is numerically in the spectrum");
  return ct / LogReal::from(-sc / t);
}

}  // namespace

double green_function(const OperatorSpec& spec, int m, int n, double x) {
  LogReal w = green_denominator(spec, x);
  int lo = std::min(m, n), hi = std::max(m, n);
  return (u_sol_log(spec, lo, x) * v_sol_log(spec, 1.0 / spec.t, hi, x) / w).value();
}

double green_resolvent_defect(const OperatorSpec& spec, double x, int lo, int hi) {
  LogReal w = green_denominator(spec, x);
  LatticeVector u = u_vector(spec, x);
  LatticeVector v = v_vector(spec, 1.0 / spec.t, x);
  u.materialize(lo - 1, hi + 1);
  v.materialize(lo - 1, hi + 1);
  auto G = [&](int m, int n) {
    int a = std::min(m, n), b = std::max(m, n);
    return (u.eval_log(a) * v.eval_log(b) / w).value();
  };
  double worst = 0.0;
  for (int m = lo; m <= hi; ++m) {
    for (int j = lo; j <= hi; ++j) {
      auto [aj, bj] = coeffs(spec, j);
      double ajm = coeffs(spec, j - 1).first;
      double t1 = G(m, j) * (x - bj), t2 = -ajm * G(m, j - 1), t3 = -aj * G(m, j + 1);
      double defect = std::fabs(t1 + t2 + t3 - (m == j ? 1.0 : 0.0));
      double scale = std::max({1.0, std::fabs(t1), std::fabs(t2), std::fabs(t3)});
      worst = std::max(worst, defect / scale);
    }
  }
  return worst;
}

double eta_point(const OperatorSpec& spec, int p) {
  return -std::sqrt(spec.c) * spec.ctx.pown(p) / spec.t;
}

double xi_point(const OperatorSpec& spec, int p) {
  return spec.t * spec.ctx.pown(p) / std::sqrt(spec.c);
}

std::vector<SpectralPoint> spectrum(const OperatorSpec& spec, int p_min, int p_max) {
  std::vector<SpectralPoint> out;
  for (int p = 0; p <= p_max; ++p) out.push_back({Branch::Eta, p, eta_point(spec, p)});
  for (int p = p_min; p <= p_max; ++p) out.push_back({Branch::Xi, p, xi_point(spec, p)});
  std::sort(out.begin(), out.end(),
            [](const SpectralPoint& a, const SpectralPoint& b) { return a.x < b.x; });
  return out;
}

LogReal eta_norm_log(const OperatorSpec& spec, int p) {
  if (p < 0) throw QError(ErrorKind::InvalidParameter, "eta points need p >= 0");
  const QContext& ctx = spec.ctx;
  const double t2 = spec.t * spec.t, c = spec.c, q = ctx.q();
  LogReal den = qpoch_finite_log(q / t2, p, ctx);
  LogReal tail = qpoch_multi_log({q, -c / t2, -q * t2 / c, q / t2}, ctx);
  if (den.is_zero() || tail.is_zero())
    throw QError(ErrorKind::DegenerateParameter, "(q t^-2;q) vanishes");
  return LogReal::from(t2 / c * ctx.pown(-p)) * qpoch_finite_log(q, p, ctx) / den * tail;
}

LogReal xi_norm_log(const OperatorSpec& spec, int p) {
  const QContext& ctx = spec.ctx;
  const double t2 = spec.t * spec.t, c = spec.c, q = ctx.q();
  LogReal den = qpoch_inf_log(-ctx.pown(p + 1) * t2 / c, ctx);
  if (den.is_zero()) throw QError(ErrorKind::DegenerateParameter, "xi norm denominator vanishes");
  return LogReal::from_log(-p * ctx.log_q(), 1) *
         qpoch_multi_log({-ctx.pown(p + 1) / c, q, q, -c / t2, -q * t2 / c}, ctx) / den;
}

double eta_norm(const OperatorSpec& spec, int p) { return eta_norm_log(spec, p).value(); }
double xi_norm(const OperatorSpec& spec, int p) { return xi_norm_log(spec, p).value(); }

double eta_weight_unnormalized(const OperatorSpec& spec, int p) {
  if (p < 0) throw QError(ErrorKind::InvalidParameter, "eta points need p >= 0");
  const QContext& ctx = spec.ctx;
  const double t2 = spec.t * spec.t, c = spec.c, q = ctx.q();
  LogReal den = qpoch_multi_log({-c / t2, -q * t2 / c, q / t2}, ctx);
  if (den.is_zero()) throw QError(ErrorKind::DegenerateParameter, "(q t^-2;q) vanishes");
  return (LogReal::from(c / t2 * ctx.pown(p)) * qpoch_finite_log(q / t2, p, ctx) /
          qpoch_finite_log(q, p, ctx) / den).value();
}

double eta_weight(const OperatorSpec& spec, int p) {
  return (LogReal::from(eta_weight_unnormalized(spec, p)) / qpoch_inf_log(spec.ctx.q(), spec.ctx))
      .value();
}

double xi_weight(const OperatorSpec& spec, int p) {
  return (LogReal::from(1.0) / xi_norm_log(spec, p)).value();
}

SeriesValue lattice_inner(const OperatorSpec& spec, double x, double y) {
  const double s = 1.0 / spec.t;
  auto term = [&](int k) { return (v_sol_log(spec, s, k, x) * v_sol_log(spec, s, k, y)).value(); };
  return bilateral_sum(term, spec.ctx).sum;
}

std::vector<double> finite_section_eigenvalues(const OperatorSpec& spec, int K) {
  if (K < 2) throw QError(ErrorKind::InvalidParameter, "finite section needs K >= 2");
  std::vector<double> diag, off;
  for (int k = -K; k <= K; ++k) {
    auto [a, b] = coeffs(spec, k);
    diag.push_back(b);
    if (k < K) off.push_back(a);
  }
  return tridiagonal_eigenvalues(diag, off);
}

TailReport ell2_tail_check(const OperatorSpec& spec, Solution sol, double x, Direction dir,
                           int window) {
  if (window < 1) throw QError(ErrorKind::InvalidParameter, "window must be positive");
  auto value = [&](int k) {
    switch (sol) {
      case Solution::Vt: return v_sol_log(spec, spec.t, k, x);
      case Solution::Vtinv: return v_sol_log(spec, 1.0 / spec.t, k, x);
      case Solution::U: return u_sol_log(spec, k, x);
    }
    return LogReal();
  };
  const int step = dir == Direction::PlusInf ? 1 : -1;
  const int n_windows = 4;
  TailReport rep;
  int k = 5 * step;
  for (int w = 0; w < n_windows; ++w) {
    LogReal acc;
    for (int i = 0; i < window; ++i, k += step) acc += value(k).powi(2);
    rep.log_window_sums.push_back(acc.log_abs());
  }
  rep.cauchy_decreasing = true;
  for (std::size_t i = 1; i < rep.log_window_sums.size(); ++i) {
    double r = std::exp(rep.log_window_sums[i] - rep.log_window_sums[i - 1]);
    rep.ratios.push_back(r);
    if (!(r < 0.5)) rep.cauchy_decreasing = false;
  }
  return rep;
}

}  // namespace qortho
