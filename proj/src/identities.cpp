#include "qortho/identities.hpp"

#include <cmath>

namespace qortho {

Sides theta_shift(double a, int k, const QContext& ctx) {
  if (a == 0.0) throw QError(ErrorKind::InvalidParameter, "theta_shift needs a != 0");
  const double q = ctx.q();
  Sides s;
  s.lhs = (qpoch_inf_log(a * ctx.pown(k), ctx) * qpoch_inf_log(ctx.pown(1 - k) / a, ctx)).value();
  LogReal r = LogReal::from(-a).powi(-k) *
              LogReal::from_log(-0.5 * k * (k - 1.0) * ctx.log_q(), 1) *
              qpoch_inf_log(a, ctx) * qpoch_inf_log(q / a, ctx);
  s.rhs = r.value();
  return s;
}

Sides shift_1phi1(double a, int p, double z, const QContext& ctx) {
  const double q = ctx.q();
  if (pole_index(ctx.pown(p + 1) / a, ctx) || a == 0.0)
    throw QError(ErrorKind::PoleInLowerParameter, "(q^{p+1}/a;q)_inf vanishes");
  const double up_l[1] = {a * ctx.pown(-p)};
  const double up_r[1] = {a};
  Sides s;
  s.lhs = regularized_sum(up_l, ctx.pown(1 - p), 1, z, ctx).value.value();
  LogReal r = qpoch_inf_log(q / a, ctx) / qpoch_inf_log(ctx.pown(p + 1) / a, ctx) *
              LogReal::from(a * z / q).powi(p) *
              regularized_sum(up_r, ctx.pown(1 + p), 1, z * ctx.pown(p), ctx).value;
  s.rhs = r.value();
  return s;
}

Sides transform_1phi1_heine(double a, double c, double z, const QContext& ctx) {
  if (pole_index(c, ctx) || pole_index(z, ctx))
    throw QError(ErrorKind::PoleInLowerParameter, "c or z equals q^{-m}");
  Sides s;
  s.lhs = phi_rs(PhiSpec{{a}, {c}, z}, ctx).value;
  if (z == 0.0) {
    s.rhs = (qpoch_inf_log(0.0, ctx) / qpoch_inf_log(c, ctx)).value() *
            phi_rs(PhiSpec{{0.0}, {0.0}, c}, ctx).value;
    return s;
  }
  s.rhs = (qpoch_inf_log(z, ctx) / qpoch_inf_log(c, ctx)).value() *
          phi_rs(PhiSpec{{a * z / c}, {z}, c}, ctx).value;
  return s;
}

Residual qdiff_residual_2phi1(double a, double b, double c, double z, const QContext& ctx,
                              QDiffMode mode) {
  const double q = ctx.q();
  Residual r;
  double t1, t2, t3;
  if (mode == QDiffMode::Hypergeometric) {
    auto f = [&](double w) { return phi_rs(PhiSpec{{a, b}, {c}, w}, ctx).value; };
    t1 = (c - a * b * z) * f(q * z);
    t2 = (-(c + q) + (a + b) * z) * f(z);
    t3 = (q - z) * f(z / q);
  } else {
    auto f = [&](double w) { return phi_rs(PhiSpec{{a}, {c}, w}, ctx).value; };
    t1 = (c - a * z) * f(q * z);
    t2 = (-(c + q) + z) * f(z);
    t3 = q * f(z / q);
  }
  r.value = t1 + t2 + t3;
  r.scale = std::fabs(t1) + std::fabs(t2) + std::fabs(t3);
  return r;
}

SeriesValue jackson_qintegral(const std::function<double(double)>& f, double a_end,
                              double c_end, const QContext& ctx) {
  const double q = ctx.q();
  CompensatedSum sum;
  double qn = 1.0, last = 0.0;
  int small = 0, n = 0;
  for (;; ++n) {
    if (n >= ctx.max_terms())
      throw QError(ErrorKind::TruncationCapExceeded, "q-integral did not settle");
    double xa = a_end * qn * q, xc = c_end * qn * q;
    double term = qn * q * (a_end * f(xa) + c_end * f(-xc));
    sum.add(term);
    last = term;
    if (std::fabs(term) <= ctx.eps_term() * sum.abs_sum()) {
      if (++small >= 3) break;
    } else {
      small = 0;
    }
    qn *= q;
  }
  SeriesValue out;
  out.value = (1.0 - q) * sum.sum();
  out.n_terms = n + 1;
  out.cancellation = sum.cancellation();
  out.abs_err = (1.0 - q) * (4e-16 * sum.abs_sum() + std::fabs(last) / (1.0 - q));
  return out;
}

}  // namespace qortho
