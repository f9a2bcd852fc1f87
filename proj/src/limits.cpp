#include "qortho/limits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <utility>

#include "qortho/orthogonality.hpp"

namespace qortho {

namespace {

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

// the four-way split needs k >= l; the lhs is symmetric in (k, l)
LimitStudyConfig ordered(const LimitStudyConfig& cfg) {
  LimitStudyConfig out = cfg;
  if (out.k < out.l) std::swap(out.k, out.l);
  return out;
}

// P~_{r-kk}(-c q^p; q^alpha, 0, -c q^{-r-1}) for p <= -kk as the terminating 2phi2
// rewriting; the direct 2phi1 cancels catastrophically as p approaches -r
double ptilde_2phi2(const LimitStudyConfig& cfg, int r, int kk, int p) {
  const QContext& ctx = cfg.ctx;
  const double a = cfg.alpha, c = cfg.c, q = ctx.q();
  const int s = -kk - p;
  LogReal pre = qpoch_finite_log(q, r - kk, ctx) * qpoch_finite_log(-c * ctx.pown(p), s, ctx) /
                qpoch_finite_log(ctx.pow(a + 1.0), s, ctx) / qpoch_finite_log(q, s, ctx) *
                LogReal::from(-ctx.pow(a - p + 1.0) / c).powi(s);
  SeriesValue f = phi_rs(PhiSpec{{ctx.pown(-r - p), -c * ctx.pown(-kk)},
                                 {ctx.pow(a + 1.0 + s), ctx.pown(s + 1)},
                                 -ctx.pow(a + s + r + 2.0) / c},
                         ctx);
  return (pre * f.value).value();
}

struct Terms {
  const LimitStudyConfig& cfg;

  double qa1() const { return cfg.ctx.pow(cfg.alpha + 1.0); }

  double bessel(int kk, double x) const {
    return big_qbessel(cfg.alpha, kk, cfg.c, x, cfg.ctx);
  }

  // P~_{r-kk}(-c q^p; q^alpha, 0, -c q^{-r-1})
  double ptilde_at_p(int r, int kk, int p) const {
    if (p <= -kk) return ptilde_2phi2(cfg, r, kk, p);
    return ptilde_direct(r, kk, p);
  }

  double ptilde_direct(int r, int kk, int p) const {
    const QContext& ctx = cfg.ctx;
    return big_qjacobi_tilde(r - kk, ctx.pow(cfg.alpha), cfg.c * ctx.pown(-r - 1),
                             -cfg.c * ctx.pown(p), ctx);
  }

  double finite_n(int r, int n) const {
    const QContext& ctx = cfg.ctx;
    const double x = ctx.pown(n);
    LogReal w = LogReal::from(x) * qpoch_inf_log(ctx.pown(n + 1), ctx) *
                qpoch_inf_log(-ctx.pow(cfg.alpha + n + r + 2.0) / cfg.c, ctx) /
                qpoch_inf_log(ctx.pow(cfg.alpha + n + 1.0), ctx);
    return (w * ptilde_r(cfg, r, cfg.k, x) * ptilde_r(cfg, r, cfg.l, x)).value();
  }

  double finite_p(int r, int p) const {
    if (p < -r) return 0.0;
    const QContext& ctx = cfg.ctx;
    const double c = cfg.c;
    LogReal w = LogReal::from(c * ctx.pow(p - cfg.alpha - 1.0)) *
                qpoch_inf_log(-c * ctx.pow(p - cfg.alpha), ctx) *
                qpoch_inf_log(ctx.pown(p + r + 1), ctx) / qpoch_inf_log(-c * ctx.pown(p), ctx);
    return (w * ptilde_at_p(r, cfg.k, p) * ptilde_at_p(r, cfg.l, p)).value();
  }

  double limit_n(int n) const {
    const QContext& ctx = cfg.ctx;
    const double x = ctx.pown(n);
    LogReal w = LogReal::from(x) * qpoch_inf_log(ctx.pown(n + 1), ctx) /
                qpoch_inf_log(ctx.pow(n + cfg.alpha + 1.0), ctx);
    return (w * bessel(cfg.k, x) * bessel(cfg.l, x)).value();
  }

  double limit_p(int p) const {
    const QContext& ctx = cfg.ctx;
    const double c = cfg.c;
    const double x = -c * ctx.pow(p - cfg.alpha - 1.0);
    LogReal w = LogReal::from(-x) * qpoch_inf_log(-c * ctx.pow(p - cfg.alpha), ctx) /
                qpoch_inf_log(-c * ctx.pown(p), ctx);
    return (w * bessel(cfg.k, x) * bessel(cfg.l, x)).value();
  }
};

double finite_range(const std::function<double(int)>& f, int lo, int hi) {
  CompensatedSum s;
  for (int p = lo; p <= hi; ++p) s.add(f(p));
  return s.sum();
}

}  // namespace

void LimitStudyConfig::validate() const {
  if (!(alpha > -1.0)) throw QError(ErrorKind::InvalidParameter, "alpha must exceed -1");
  if (!(c > 0.0)) throw QError(ErrorKind::InvalidParameter, "c must be positive");
  if (!std::is_sorted(r_values.begin(), r_values.end()))
    throw QError(ErrorKind::InvalidParameter, "r_values must be ascending");
  for (int r : r_values)
    if (r < std::max(k, l)) throw QError(ErrorKind::InvalidParameter, "r must be >= max(k, l)");
}

double bqj_norm(const BigJacobiParams& pr, int k, const QContext& ctx) {
  if (k < 0) throw QError(ErrorKind::InvalidParameter, "degree must be >= 0");
  const double a = pr.a, b = pr.b, c = pr.c, q = ctx.q();
  LogReal M = LogReal::from((1.0 - q) * a * q) *
              qpoch_multi_log({q, -c / a, -a * q / c, a * b * q * q}, ctx) /
              qpoch_multi_log({a * q, b * q, -c * q, -a * b * q / c}, ctx);
  LogReal v = M * ((1.0 - a * b * q) / (1.0 - a * b * ctx.pown(2 * k + 1))) *
              qpoch_finite_log(q, k, ctx) * qpoch_finite_log(b * q, k, ctx) *
              qpoch_finite_log(-a * b * q / c, k, ctx) / qpoch_finite_log(a * b * q, k, ctx) /
              qpoch_finite_log(a * q, k, ctx) / qpoch_finite_log(-c * q, k, ctx) *
              LogReal::from(a * c * q * q).powi(k) *
              LogReal::from_log(0.5 * k * (k - 1.0) * ctx.log_q(), 1);
  return v.value();
}

VerificationReport bqj_orthogonality(const BigJacobiParams& pr, int k, int l,
                                     const QContext& ctx, const Tolerances& tol) {
  if (k < 0 || l < 0) throw QError(ErrorKind::InvalidParameter, "degrees must be >= 0");
  auto f = [&](double x) {
    if (pole_index(x, ctx) || pole_index(-pr.b * x / pr.c, ctx))
      throw QError(ErrorKind::WeightPole, "weight has a pole at x = " + std::to_string(x));
    LogReal w = qpoch_multi_log({x / pr.a, -x / pr.c}, ctx) /
                qpoch_multi_log({x, -pr.b * x / pr.c}, ctx);
    return (w * big_qjacobi(k, pr, x, ctx) * big_qjacobi(l, pr, x, ctx)).value();
  };
  SeriesValue s = jackson_qintegral(f, pr.a, pr.c, ctx);
  double hk = bqj_norm(pr, k, ctx), hl = bqj_norm(pr, l, ctx);
  VerificationReport rep =
      make_report("bqj_orthogonality", {{"k", k}, {"l", l}, {"a", pr.a}, {"b", pr.b}, {"c", pr.c}},
                  s.value, delta(k, l) * hk, std::sqrt(hk * hl), tol);
  rep.cancellation = s.cancellation;
  rep.k_hi = s.n_terms;
  return rep;
}

double ptilde_r(const LimitStudyConfig& cfg, int r, int kk, double x) {
  const QContext& ctx = cfg.ctx;
  if (r < kk) throw QError(ErrorKind::InvalidParameter, "need r >= k");
  return big_qjacobi_tilde(r - kk, ctx.pow(cfg.alpha), cfg.c * ctx.pown(-r - 1),
                           ctx.pow(cfg.alpha + 1.0) * x, ctx);
}

Sides finite_r_orth(const LimitStudyConfig& cfg, int r) {
  cfg.validate();
  if (r < std::max(cfg.k, cfg.l)) throw QError(ErrorKind::InvalidParameter, "r must be >= max(k, l)");
  const QContext& ctx = cfg.ctx;
  const double a = cfg.alpha, c = cfg.c, q = ctx.q();
  Terms t{cfg};
  Sides s;
  s.lhs = unilateral_sum([&](int n) { return t.finite_n(r, n); }, ctx, 0).sum.value +
          unilateral_sum([&](int p) { return t.finite_p(r, p); }, ctx, -r, 1, 10, 400).sum.value;
  if (cfg.k == cfg.l) {
    const int m = r - cfg.k;
    LogReal v = qpoch_multi_log({q, -c * ctx.pow(-r - a - 1.0), -ctx.pow(a + r + 2.0) / c}, ctx) /
                qpoch_multi_log({ctx.pow(a + 1.0), -c * ctx.pown(-r)}, ctx) *
                qpoch_finite_log(q, m, ctx) * qpoch_finite_log(-ctx.pown(cfg.k + 1) / c, m, ctx) /
                qpoch_finite_log(ctx.pow(a + 1.0), m, ctx) *
                LogReal::from_log((a + 1.0) * m * ctx.log_q(), 1);
    s.rhs = v.value();
  }
  return s;
}

VerificationReport finite_r_report(const LimitStudyConfig& cfg, int r, const Tolerances& tol) {
  Sides s = finite_r_orth(cfg, r);
  double scale = s.rhs;
  if (cfg.k != cfg.l) {
    LimitStudyConfig kk = cfg, ll = cfg;
    kk.l = cfg.k;
    ll.k = cfg.l;
    scale = std::sqrt(finite_r_orth(kk, r).rhs * finite_r_orth(ll, r).rhs);
  }
  return make_report("finite_r_orth", {{"r", r}, {"k", cfg.k}, {"l", cfg.l}}, s.lhs, s.rhs,
                     scale, tol);
}

double pointwise_bound(const LimitStudyConfig& cfg, double M) {
  if (!(M > 0.0)) throw QError(ErrorKind::InvalidParameter, "bound needs M > 0");
  const QContext& ctx = cfg.ctx;
  const double qa1 = ctx.pow(cfg.alpha + 1.0);
  return phi_rs(PhiSpec{{-1.0 / M}, {qa1}, -ctx.pow(cfg.alpha + cfg.k + 2.0) * M / cfg.c}, ctx)
      .value;
}

PointwiseLimit limit_pointwise(const LimitStudyConfig& cfg, int r, double x) {
  PointwiseLimit out;
  out.ptilde = ptilde_r(cfg, r, cfg.k, x);
  out.bessel = big_qbessel(cfg.alpha, cfg.k, cfg.c, x, cfg.ctx);
  out.bound = pointwise_bound(cfg, x == 0.0 ? cfg.ctx.pown(10) : std::fabs(x));
  return out;
}

LatticeValues lattice_values(const LimitStudyConfig& cfg, int r, int p) {
  const int k = cfg.k;
  if (p > -k) throw QError(ErrorKind::InvalidParameter, "lattice_values needs p <= -k");
  if (p < -r) throw QError(ErrorKind::InvalidParameter, "lattice_values needs p >= -r");
  const QContext& ctx = cfg.ctx;
  const double a = cfg.alpha, c = cfg.c, q = ctx.q();
  const int s = -k - p;
  // (-c q^p;q)_s / ((q^{alpha+1}, q;q)_s)
  LogReal pre = qpoch_finite_log(-c * ctx.pown(p), s, ctx) /
                qpoch_finite_log(ctx.pow(a + 1.0), s, ctx) / qpoch_finite_log(q, s, ctx);
  LatticeValues out;

  out.ptilde_2phi2 = ptilde_2phi2(cfg, r, k, p);
  out.ptilde_direct = Terms{cfg}.ptilde_direct(r, k, p);
  {
    const double x = -c * ctx.pown(p);
    SeriesValue d = phi_rs(
        PhiSpec{{ctx.pown(k - r), ctx.pow(a + 1.0) / x}, {ctx.pow(a + 1.0)}, -x / (c * ctx.pown(-r - 1))},
        ctx);
    out.direct_term_scale = std::fabs(d.value) * d.cancellation;
  }

  SeriesValue f1 = phi_rs(PhiSpec{{-c * ctx.pown(-k)}, {ctx.pown(s + 1), ctx.pow(a + 1.0 + s)},
                                  -ctx.pow(-2.0 * p - k + a + 2.0) / c},
                          ctx);
  out.bessel_1phi2 = (qpoch_inf_log(q, ctx) * pre *
                      LogReal::from(-ctx.pow(a - p + 1.0) / c).powi(s) * f1.value)
                         .value();
  out.bessel_direct = big_qbessel(a, k, c, -c * ctx.pow(p - a - 1.0), ctx);

  SeriesValue fb = phi_rs(PhiSpec{{-c * ctx.pown(-k)}, {ctx.pow(a + 1.0), q},
                                  ctx.pow(k + a + 2.0) / c},
                          ctx);
  out.bound = (pre * LogReal::from(ctx.pow(a - p + 1.0) / c).powi(s) * fb.value).value();
  return out;
}

namespace {

std::array<double, 4> limit_pieces(const LimitStudyConfig& cfg) {
  LimitStudyConfig o = ordered(cfg);
  const QContext& ctx = o.ctx;
  Terms t{o};
  auto lp = [&](int p) { return t.limit_p(p); };
  std::array<double, 4> out{};
  out[0] = unilateral_sum([&](int n) { return t.limit_n(n); }, ctx, 0).sum.value;
  out[1] = unilateral_sum(lp, ctx, -o.l + 1).sum.value;
  out[2] = finite_range(lp, -o.k + 1, -o.l);
  out[3] = unilateral_sum(lp, ctx, -o.k, -1).sum.value;
  return out;
}

std::array<double, 4> finite_pieces(const LimitStudyConfig& cfg, int r) {
  LimitStudyConfig o = ordered(cfg);
  const QContext& ctx = o.ctx;
  Terms t{o};
  auto fp = [&](int p) { return t.finite_p(r, p); };
  std::array<double, 4> out{};
  out[0] = unilateral_sum([&](int n) { return t.finite_n(r, n); }, ctx, 0).sum.value;
  out[1] = unilateral_sum(fp, ctx, -o.l + 1).sum.value;
  out[2] = finite_range(fp, -o.k + 1, -o.l);
  out[3] = finite_range(fp, -r, -o.k);
  return out;
}

}  // namespace

EqeSides eqe_sides(const LimitStudyConfig& cfg) {
  const QContext& ctx = cfg.ctx;
  const double a = cfg.alpha, c = cfg.c, q = ctx.q();
  std::array<double, 4> pieces = limit_pieces(cfg);
  EqeSides s;
  s.sum_n = pieces[0];
  s.sum_p = pieces[1] + pieces[2] + pieces[3];
  if (cfg.k == cfg.l) {
    LogReal v = LogReal::from_log(-cfg.k * (a + 1.0) * ctx.log_q(), 1) *
                (qpoch_inf_log(q, ctx) / qpoch_inf_log(ctx.pow(a + 1.0), ctx)).powi(2) *
                qpoch_multi_log({-c * ctx.pow(-a - 1.0), -ctx.pow(a + 2.0) / c,
                                 -ctx.pown(cfg.k + 1) / c},
                                ctx) /
                qpoch_multi_log({-c, -q / c}, ctx);
    s.rhs = v.value();
  }
  return s;
}

VerificationReport eqe_check(const LimitStudyConfig& cfg, const Tolerances& tol) {
  EqeSides s = eqe_sides(cfg);
  double scale = s.rhs;
  if (cfg.k != cfg.l) {
    LimitStudyConfig kk = cfg, ll = cfg;
    kk.l = cfg.k;
    ll.k = cfg.l;
    scale = std::sqrt(eqe_sides(kk).rhs * eqe_sides(ll).rhs);
  }
  return make_report("eqe_check", {{"k", cfg.k}, {"l", cfg.l}}, s.lhs(), s.rhs, scale, tol);
}

VerificationReport eqe_vs_corollary(const LimitStudyConfig& cfg, const Tolerances& tol) {
  const QContext& ctx = cfg.ctx;
  const double a = cfg.alpha;
  EqeSides s = eqe_sides(cfg);
  MeasureSpec dual(a, 1.0 / cfg.c, ctx);
  CorollarySides cs = corollary_sides(dual, cfg.k + 1, cfg.l + 1);
  const double F = (LogReal::from(cfg.c) *
                    (qpoch_inf_log(ctx.q(), ctx) / qpoch_inf_log(ctx.pow(a + 1.0), ctx)).powi(2) *
                    LogReal::from_log(-a * (cfg.k + cfg.l + 2) / 2.0 * ctx.log_q(), 1))
                       .value();
  double scale = std::max({std::fabs(s.sum_n), std::fabs(s.sum_p), std::fabs(F * cs.bessel_term),
                           std::fabs(F * cs.series_term)});
  return make_report("eqe_vs_corollary", {{"k", cfg.k}, {"l", cfg.l}}, s.lhs(), F * cs.rhs(),
                     scale, tol);
}

ConvergenceStudy convergence_study(const LimitStudyConfig& cfg) {
  cfg.validate();
  ConvergenceStudy out;
  std::array<double, 4> lim = limit_pieces(cfg);
  for (int r : cfg.r_values) {
    ConvergenceRow row;
    row.r = r;
    row.limit = lim;
    row.finite = finite_pieces(cfg, r);
    for (int i = 0; i < 4; ++i) {
      row.distance[i] = std::fabs(row.finite[i] - row.limit[i]);
      row.total += row.distance[i];
    }
    out.rows.push_back(row);
  }
  // a distance at the rounding floor may wobble; allow a factor 2 there
  const double floor = 1e-14 * std::max(1.0, std::fabs(lim[0] + lim[1] + lim[2] + lim[3]));
  out.non_increasing = true;
  for (std::size_t i = 1; i < out.rows.size(); ++i)
    if (out.rows[i].total > std::max(out.rows[i - 1].total, 2.0 * floor))
      out.non_increasing = false;

  // first piece: log max_r |n-th term| against n
  LimitStudyConfig o = ordered(cfg);
  Terms t{o};
  const QContext& ctx = o.ctx;
  const int n_fit = 20;
  std::vector<double> xs, ys;
  for (int n = 0; n < n_fit; ++n) {
    double m = 0.0;
    for (int r : cfg.r_values) m = std::max(m, std::fabs(t.finite_n(r, n)));
    if (m == 0.0) continue;
    xs.push_back(n);
    ys.push_back(std::log(m));
    out.first_sum_constant = std::max(out.first_sum_constant, m * ctx.pown(-n));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  out.first_sum_slope = sxy / sxx;

  // fourth piece: successive ratios |t_{p-1}/t_p| keep shrinking
  const int r_max = cfg.r_values.empty() ? 40 : cfg.r_values.back();
  std::vector<double> mags;
  for (int p = -o.k; p >= std::max(-r_max, -o.k - 12); --p) mags.push_back(std::fabs(t.limit_p(p)));
  out.fourth_super_geometric = mags.size() >= 3;
  for (std::size_t i = 2; i < mags.size(); ++i) {
    if (mags[i] == 0.0) break;
    if (!(mags[i] / mags[i - 1] < mags[i - 1] / mags[i - 2])) out.fourth_super_geometric = false;
  }
  return out;
}

}  // namespace qortho
