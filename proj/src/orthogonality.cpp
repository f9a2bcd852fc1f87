#include "qortho/orthogonality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qortho/operator.hpp"

namespace qortho {

namespace {

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

VerificationReport from_sum(std::string name, ParamList params, const BilateralSum& s,
                            double predicted, double scale, const Tolerances& tol) {
  VerificationReport r =
      make_report(std::move(name), std::move(params), s.sum.value, predicted, scale, tol);
  r.cancellation = s.sum.cancellation;
  r.k_lo = s.k_lo;
  r.k_hi = s.k_hi;
  return r;
}

// (b;q)_inf 1phi1(a;b;q,z) / (q;q)_inf in log form
LogReal phi_over_q(double a, double b, double z, const QContext& ctx, FormPolicy policy) {
  return phi11_regularized(a, b, z, ctx, policy).value / qpoch_inf_log(ctx.q(), ctx);
}

// symmetric difference with one Richardson step
double derivative(const std::function<double(double)>& f, double x) {
  const double h = 1e-6 * std::max(std::fabs(x), 1e-300);
  auto d = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
  return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

}  // namespace

LogReal weight_log(const MeasureSpec& spec, int k) {
  const QContext& ctx = spec.ctx;
  return LogReal::from_log(k * (spec.alpha + 1.0) * ctx.log_q(), 1) /
         qpoch_inf_log(-spec.c * ctx.pown(k), ctx);
}

double weight(const MeasureSpec& spec, int k) { return weight_log(spec, k).value(); }

BilateralSum functional_L(const MeasureSpec& spec, const LatticeFunction& f,
                          const LatticeFunction& g) {
  auto term = [&](int k) {
    double fg = f(k) * g(k);
    if (fg == 0.0) return 0.0;
    return (weight_log(spec, k) * fg).value();
  };
  return bilateral_sum(term, spec.ctx);
}

LatticeFunction laguerre_on_lattice(const MeasureSpec& spec, int n) {
  return [spec, n](int k) {
    return q_laguerre(n, spec.alpha, spec.c * spec.ctx.pown(k), spec.ctx);
  };
}

LatticeFunction m_on_lattice(const MeasureSpec& spec, int p) {
  return [spec, p](int k) { return m_func(p, spec, spec.c * spec.ctx.pown(k)); };
}

double laguerre_norm(const MeasureSpec& spec, int n) {
  const QContext& ctx = spec.ctx;
  const double qa1 = ctx.pow(spec.alpha + 1.0), c = spec.c, q = ctx.q();
  LogReal v = LogReal::from_log(-n * ctx.log_q(), 1) * qpoch_finite_log(qa1, n, ctx) /
              qpoch_finite_log(q, n, ctx) *
              qpoch_multi_log({q, -c * qa1, -ctx.pow(-spec.alpha) / c}, ctx) /
              qpoch_multi_log({qa1, -c, -q / c}, ctx);
  return v.value();
}

double m_norm(const MeasureSpec& spec, int p) {
  const QContext& ctx = spec.ctx;
  const double a = spec.alpha, c = spec.c, q = ctx.q();
  LogReal v = LogReal::from(c * ctx.pow(a - p)) *
              qpoch_multi_log({-ctx.pown(p + 1) / c, -ctx.pow(-a) / c}, ctx) /
              qpoch_multi_log({-ctx.pow(p + 1 - a) / c, -c * ctx.pow(a + 1.0)}, ctx) /
              qpoch_multi_log({-c, -q / c}, ctx);
  return v.value();
}

VerificationReport laguerre_gram(const MeasureSpec& spec, int n, int p, const Tolerances& tol) {
  if (n < 0 || p < 0) throw QError(ErrorKind::InvalidParameter, "Laguerre degrees must be >= 0");
  BilateralSum s = functional_L(spec, laguerre_on_lattice(spec, n), laguerre_on_lattice(spec, p));
  double dn = laguerre_norm(spec, n), dp = laguerre_norm(spec, p);
  return from_sum("laguerre_gram", {{"n", n}, {"p", p}}, s, delta(n, p) * dp,
                  std::sqrt(dn * dp), tol);
}

VerificationReport m_gram(const MeasureSpec& spec, int p, int r, const Tolerances& tol) {
  BilateralSum s = functional_L(spec, m_on_lattice(spec, p), m_on_lattice(spec, r));
  double dp = m_norm(spec, p), dr = m_norm(spec, r);
  return from_sum("m_gram", {{"p", p}, {"r", r}}, s, delta(p, r) * dp, std::sqrt(dp * dr), tol);
}

VerificationReport cross_gram(const MeasureSpec& spec, int p, int n, const Tolerances& tol) {
  if (n < 0) throw QError(ErrorKind::InvalidParameter, "Laguerre degree must be >= 0");
  BilateralSum s = functional_L(spec, m_on_lattice(spec, p), laguerre_on_lattice(spec, n));
  return from_sum("cross_gram", {{"p", p}, {"n", n}}, s, 0.0,
                  std::sqrt(m_norm(spec, p) * laguerre_norm(spec, n)), tol);
}

VerificationReport monomial_orth(const MeasureSpec& spec, int r, int m, const Tolerances& tol) {
  if (m < 0) throw QError(ErrorKind::InvalidParameter, "monomial degree must be >= 0");
  LatticeFunction mono = [spec, m](int k) { return std::pow(spec.c * spec.ctx.pown(k), m); };
  BilateralSum s = functional_L(spec, m_on_lattice(spec, r), mono);
  double moment = functional_L(spec, mono, mono).sum.value;
  return from_sum("monomial_orth", {{"r", r}, {"m", m}}, s, 0.0,
                  std::sqrt(m_norm(spec, r) * moment), tol);
}

HankelMembers hankel_identity(const MeasureSpec& spec, int p, int r) {
  const QContext& ctx = spec.ctx;
  const double a = spec.alpha, c = spec.c, q = ctx.q();
  const double qa1 = ctx.pow(a + 1.0);
  HankelMembers h;

  auto t1 = [&](int k) {
    LogReal f = phi_over_q(-c * ctx.pow(a - p), qa1, ctx.pown(p + k + 1), ctx, FormPolicy::Auto) *
                phi_over_q(-c * ctx.pow(a - r), qa1, ctx.pown(r + k + 1), ctx, FormPolicy::Auto);
    return (weight_log(spec, k) * f).value();
  };
  auto t2 = [&](int k) {
    LogReal f = phi_over_q(-c * ctx.pown(k), ctx.pown(k + p + 1), qa1, ctx, FormPolicy::Direct) *
                phi_over_q(-c * ctx.pown(k), ctx.pown(k + r + 1), qa1, ctx, FormPolicy::Direct);
    return (weight_log(spec, k) * f).value();
  };
  h.lhs1 = bilateral_sum(t1, ctx).sum.value;
  h.lhs2 = bilateral_sum(t2, ctx).sum.value;
  if (p == r) {
    h.mid = (LogReal::from(c * ctx.pow(a - p)) * qpoch_inf_log(-ctx.pown(p + 1) / c, ctx) /
             qpoch_inf_log(-ctx.pow(p + 1 - a) / c, ctx) *
             qpoch_multi_log({-c * qa1, -ctx.pow(-a) / c}, ctx) /
             qpoch_multi_log({-c, -q / c}, ctx))
                .value();
  }
  return h;
}

VerificationReport dual_orthogonality(const MeasureSpec& spec, int k, int l,
                                      const Tolerances& tol) {
  const QContext& ctx = spec.ctx;
  OperatorSpec op(spec.c, ctx.pow(-spec.alpha / 2.0), ctx);
  const double s = 1.0 / op.t;
  auto eta_term = [&](int p) {
    double x = eta_point(op, p);
    return (v_sol_log(op, s, k, x) * v_sol_log(op, s, l, x) / eta_norm_log(op, p)).value();
  };
  auto xi_term = [&](int p) {
    double x = xi_point(op, p);
    return (v_sol_log(op, s, k, x) * v_sol_log(op, s, l, x) / xi_norm_log(op, p)).value();
  };
  BilateralSum e = unilateral_sum(eta_term, ctx, 0);
  BilateralSum x = bilateral_sum(xi_term, ctx);
  BilateralSum total;
  total.sum.value = e.sum.value + x.sum.value;
  double abs_sum = std::fabs(e.sum.value) * e.sum.cancellation +
                   std::fabs(x.sum.value) * x.sum.cancellation;
  total.sum.cancellation = total.sum.value != 0.0 ? std::fabs(abs_sum / total.sum.value) : 1.0;
  total.k_lo = x.k_lo;
  total.k_hi = std::max(e.k_hi, x.k_hi);
  return from_sum("dual_orthogonality", {{"k", k}, {"l", l}}, total, delta(k, l), 1.0, tol);
}

CdTriple cd_kernel(const MeasureSpec& spec, int N, double x, double y) {
  if (N < 0) throw QError(ErrorKind::InvalidParameter, "cd_kernel needs N >= 0");
  const QContext& ctx = spec.ctx;
  const double a = spec.alpha, q = ctx.q(), qa1 = ctx.pow(a + 1.0);
  CdTriple out;

  CompensatedSum acc;
  for (int p = 0; p <= N; ++p) {
    double w = ctx.pown(p) * qpoch_finite(q, p, ctx) / qpoch_finite(qa1, p, ctx);
    acc.add(w * q_laguerre(p, a, x, ctx) * q_laguerre(p, a, y, ctx));
  }
  out.partial_sum = acc.sum();

  const double pre = qpoch_finite(q, N, ctx) / qpoch_finite(qa1, N, ctx);
  auto num = [&](double u) {
    return u * q_laguerre(N, a + 1.0, u, ctx) * q_laguerre(N, a, y, ctx) -
           y * q_laguerre(N, a + 1.0, y, ctx) * q_laguerre(N, a, u, ctx);
  };
  out.cd_form = x != y ? pre * num(x) / (x - y) : pre * derivative(num, y);

  if (x <= 0.0 || y <= 0.0)
    throw QError(ErrorKind::NegativeBaseFractionalPower, "Bessel limit needs x, y > 0");
  const double lead = (qpoch_inf_log(q, ctx) / qpoch_inf_log(qa1, ctx)).value();
  auto bnum = [&](double u) {
    return std::sqrt(u) * jackson_j2(a + 1.0, 2.0 * std::sqrt(u), ctx) *
               jackson_j2(a, 2.0 * std::sqrt(y), ctx) -
           std::sqrt(y) * jackson_j2(a + 1.0, 2.0 * std::sqrt(y), ctx) *
               jackson_j2(a, 2.0 * std::sqrt(u), ctx);
  };
  double quotient = x != y ? bnum(x) / (x - y) : derivative(bnum, y);
  out.bessel_limit = lead * std::pow(x * y, -a / 2.0) * quotient;
  return out;
}

CorollarySides corollary_sides(const MeasureSpec& spec, int k, int l) {
  const QContext& ctx = spec.ctx;
  const double a = spec.alpha, c = spec.c, q = ctx.q();
  const double qa1 = ctx.pow(a + 1.0), sc = std::sqrt(c);
  CorollarySides out;
  if (k == l) {
    out.lhs = (LogReal::from(c * ctx.pown(-k)) * qpoch_inf_log(-c * ctx.pown(k), ctx) *
               qpoch_multi_log({-c * qa1, -ctx.pow(-a) / c}, ctx) /
               qpoch_multi_log({-c, -q / c}, ctx))
                  .value();
  }

  const double v = ctx.pown(l);
  auto bnum = [&](double u) {
    return std::sqrt(u) * jackson_j2(a + 1.0, 2.0 * sc * std::sqrt(u), ctx) *
               jackson_j2(a, 2.0 * sc * std::sqrt(v), ctx) -
           std::sqrt(v) * jackson_j2(a + 1.0, 2.0 * sc * std::sqrt(v), ctx) *
               jackson_j2(a, 2.0 * sc * std::sqrt(u), ctx);
  };
  const double u = ctx.pown(k);
  const double quotient = k != l ? bnum(u) / (u - v) : derivative(bnum, v);
  out.bessel_term = std::pow(c, 0.5 - a) * quotient;

  auto term = [&](int p) {
    LogReal t = LogReal::from_log(p * ctx.log_q(), 1) *
                qpoch_inf_log(-ctx.pow(p + 1 - a) / c, ctx) /
                qpoch_inf_log(-ctx.pown(p + 1) / c, ctx) *
                phi_over_q(-c * ctx.pow(a - p), qa1, ctx.pown(k + p + 1), ctx, FormPolicy::Auto) *
                phi_over_q(-c * ctx.pow(a - p), qa1, ctx.pown(l + p + 1), ctx, FormPolicy::Auto);
    return t.value();
  };
  out.series_term = ctx.pow(a * ((k + l) / 2.0 - 1.0)) * bilateral_sum(term, ctx).sum.value;
  return out;
}

VerificationReport corollary_check(const MeasureSpec& spec, int k, int l, const Tolerances& tol) {
  CorollarySides s = corollary_sides(spec, k, l);
  double scale = std::max({std::fabs(s.bessel_term), std::fabs(s.series_term), std::fabs(s.lhs)});
  return make_report("corollary_check", {{"k", k}, {"l", l}}, s.rhs(), s.lhs, scale, tol);
}

double berg_constant(const MeasureSpec& spec, int p) {
  double mx = 0.0;
  for (int k = -60; k <= 60; ++k)
    mx = std::max(mx, std::fabs(m_func(p, spec, spec.c * spec.ctx.pown(k))));
  return 1.05 * mx;
}

namespace {

void check_berg_p(const MeasureSpec& spec, int p) {
  // M_p(c q^k) behaves like (q^{p-alpha}/c)^{-k} as k -> -inf, so it is bounded on
  // the lattice only when this ratio exceeds 1
  if (!(std::fabs(spec.ctx.pow(p - spec.alpha) / spec.c) > 1.0))
    throw QError(ErrorKind::InvalidParameter, "perturbed weight needs |q^{p-alpha}/c| > 1");
}

struct BergRun {
  BilateralSum sum;
  double min_factor;
};

BergRun berg_run(const MeasureSpec& spec, double s, int p, int n, int m) {
  if (!(s >= -1.0 && s <= 1.0)) throw QError(ErrorKind::InvalidParameter, "s must lie in [-1,1]");
  check_berg_p(spec, p);
  const double K = berg_constant(spec, p);
  LatticeFunction ln = laguerre_on_lattice(spec, n), lm = laguerre_on_lattice(spec, m);
  LatticeFunction mp = m_on_lattice(spec, p);
  double min_factor = 1.0;
  LatticeFunction f = [&](int k) {
    double factor = 1.0 + s * mp(k) / K;
    min_factor = std::min(min_factor, factor);
    return factor * ln(k);
  };
  BilateralSum sum = functional_L(spec, f, lm);
  return {sum, min_factor};
}

}  // namespace

double berg_min_factor(const MeasureSpec& spec, double s, int p, int n, int m) {
  return berg_run(spec, s, p, n, m).min_factor;
}

VerificationReport berg_perturbed_gram(const MeasureSpec& spec, double s, int p, int n, int m,
                                       const Tolerances& tol) {
  BergRun run = berg_run(spec, s, p, n, m);
  if (run.min_factor < 0.0)
    throw QError(ErrorKind::InvalidParameter, "perturbed weight went negative; K too small");
  double dn = laguerre_norm(spec, n), dm = laguerre_norm(spec, m);
  return from_sum("berg_perturbed_gram", {{"s", s}, {"p", p}, {"n", n}, {"m", m}}, run.sum,
                  delta(n, m) * dn, std::sqrt(dn * dm), tol);
}

Sides genfun_i(double a, double b, double x, double z, const QContext& ctx) {
  if (b == 0.0) throw QError(ErrorKind::InvalidParameter, "genfun_i needs b != 0");
  if (!(z != 0.0 && std::fabs(z * b) < 1.0))
    throw QError(ErrorKind::InvalidParameter, "genfun_i needs 0 < |z| < 1/|b|");
  auto term = [&](int p) {
    const double ap = a * ctx.pown(p) / b;
    if (terminating_index(ap, ctx))
      throw QError(ErrorKind::PoleInLowerParameter, "(a q^p/b;q)_inf vanishes");
    LogReal t = LogReal::from(z * b).powi(p) *
                phi11_regularized(ap, ctx.pown(p + 1), b * x, ctx).value / qpoch_inf_log(ap, ctx);
    return t.value();
  };
  Sides s;
  s.lhs = bilateral_sum(term, ctx).sum.value;
  s.rhs = (qpoch_multi_log({ctx.q(), a * z, x / z}, ctx) / qpoch_multi_log({a / b, b * z}, ctx))
              .value();
  return s;
}

Sides genfun_ii(double d, double y, double w, const QContext& ctx) {
  if (!(std::fabs(d) < std::fabs(w) && std::fabs(w) < 1.0))
    throw QError(ErrorKind::InvalidParameter, "genfun_ii needs |d| < |w| < 1");
  auto term = [&](int r) {
    const double b = ctx.pown(r + 1);
    LogReal phi;
    if (y != 0.0) {
      phi = phi11_regularized(d * ctx.pown(r + 1) / y, b, y, ctx).value;
    } else if (d == 0.0) {
      phi = qpoch_inf_log(b, ctx);
    } else {
      // (d q^{r+1}/y;q)_j y^j -> (-d q^{r+1})^j q^{j(j-1)/2} as y -> 0
      phi = regularized_sum({}, b, 2, d * ctx.pown(r + 1), ctx).value;
    }
    return (LogReal::from(w).powi(r) * phi).value();
  };
  Sides s;
  s.lhs = bilateral_sum(term, ctx).sum.value;
  s.rhs = (qpoch_multi_log({d, ctx.q(), y / w}, ctx) / qpoch_multi_log({w, d / w}, ctx)).value();
  return s;
}

Sides prop52(double a, double b, double d, double y, int l, const QContext& ctx) {
  if (!(std::fabs(y) < 1.0 && y != 0.0))
    throw QError(ErrorKind::InvalidParameter, "prop52 needs 0 < |y| < 1");
  if (b == 0.0) throw QError(ErrorKind::InvalidParameter, "prop52 needs b != 0");
  auto term = [&](int k) {
    const double ak = a * ctx.pown(k) / b;
    if (terminating_index(ak, ctx))
      throw QError(ErrorKind::PoleInLowerParameter, "(a q^k/b;q)_inf vanishes");
    LogReal t = LogReal::from(y).powi(k) / qpoch_inf_log(ak, ctx) *
                phi11_regularized(ak, ctx.pown(k + 1), y, ctx).value *
                phi11_regularized(d * ctx.pown(k - l + 1) / y, ctx.pown(k - l + 1), y, ctx).value;
    return t.value();
  };
  Sides s;
  s.lhs = bilateral_sum(term, ctx).sum.value;
  if (l >= 0) {
    LogReal r = LogReal::from(d).powi(l) * qpoch_finite_log(a * y / (b * d), l, ctx) *
                qpoch_multi_log({d, ctx.q(), ctx.q()}, ctx) / qpoch_finite_log(ctx.q(), l, ctx) /
                qpoch_inf_log(a / b, ctx);
    s.rhs = r.value();
  }
  return s;
}

Sides genfun_i_monomial(const MeasureSpec& spec, int r, int m, double b) {
  if (m < 0) throw QError(ErrorKind::InvalidParameter, "monomial degree must be >= 0");
  const QContext& ctx = spec.ctx;
  const double qa1 = ctx.pow(spec.alpha + 1.0);
  return genfun_i(-b * spec.c * ctx.pown(-r), b, qa1 / b, qa1 * ctx.pown(m) / b, ctx);
}

Sides prop52_hankel(const MeasureSpec& spec, int p, int r) {
  const QContext& ctx = spec.ctx;
  const double qa1 = ctx.pow(spec.alpha + 1.0);
  Sides s = prop52(-spec.c * ctx.pown(-p), 1.0, -spec.c * ctx.pow(spec.alpha - r), qa1, p - r, ctx);
  const double f = (LogReal::from(qa1).powi(-p) / qpoch_inf_log(ctx.q(), ctx).powi(2)).value();
  return {s.lhs * f, s.rhs * f};
}

}  // namespace qortho
