#include "qortho/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "qortho/identities.hpp"
#include "qortho/limits.hpp"
#include "qortho/operator.hpp"
#include "qortho/orthogonality.hpp"

namespace qortho {

double RunConfig::t_value() const { return t ? *t : std::pow(q, -alpha / 2.0); }

QContext RunConfig::context() const { return QContext(q, 1e-16, 1e-10, max_terms); }

Tolerances RunConfig::tol(double rtol_default, double atol_default) const {
  return Tolerances{rtol.value_or(rtol_default), atol.value_or(atol_default)};
}

bool SuiteResult::all_pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

namespace {

// std::uniform_real_distribution is implementation defined; this mapping is not
class Grid {
 public:
  explicit Grid(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double sign() { return (rng_() & 1u) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 rng_;
};

// seeds differ per suite so that adding a suite leaves the others unchanged
std::uint64_t suite_seed(std::uint64_t seed, std::uint64_t salt) {
  return seed * 0x9E3779B97F4A7C15ull + salt;
}

using Check = std::function<VerificationReport()>;

struct Job {
  std::string name;
  ParamList params;
  Check run;
};

std::vector<VerificationReport> run_jobs(const std::vector<Job>& jobs, ExecPolicy policy) {
  return parallel_reports(
      jobs.size(),
      [&](std::size_t i) {
        try {
          return jobs[i].run();
        } catch (const std::exception& e) {
          return error_report(jobs[i].name, jobs[i].params, e.what());
        }
      },
      policy);
}

VerificationReport sides_report(std::string name, ParamList params, const Sides& s,
                                const Tolerances& tol) {
  double scale = std::max(std::fabs(s.lhs), std::fabs(s.rhs));
  return make_report(std::move(name), std::move(params), s.lhs, s.rhs, scale, tol);
}

// ---------------------------------------------------------------- q-series

std::vector<Job> qseries_jobs(const RunConfig& cfg) {
  const QContext ctx = cfg.context();
  const Tolerances tol = cfg.tol(1e-10, 1e-10);
  Grid g(suite_seed(cfg.seed, 1));
  std::vector<Job> jobs;
  const int n = 50;
  for (int i = 0; i < n; ++i) {
    double a = g.sign() * g.uniform(0.1, 3.0);
    int k = g.integer(-6, 6);
    ParamList p{{"a", a}, {"k", k}};
    jobs.push_back({"theta_shift", p, [=] {
                      return sides_report("theta_shift", p, theta_shift(a, k, ctx), tol);
                    }});
  }
  for (int i = 0; i < n; ++i) {
    double a = g.sign() * g.uniform(0.1, 2.0);
    int k = g.integer(-4, 4);
    double z = g.uniform(-2.0, 2.0);
    ParamList p{{"a", a}, {"p", k}, {"z", z}};
    jobs.push_back({"shift_1phi1", p, [=] {
                      return sides_report("shift_1phi1", p, shift_1phi1(a, k, z, ctx), tol);
                    }});
  }
  for (int i = 0; i < n; ++i) {
    double a = g.uniform(-2.0, 2.0);
    double c = g.uniform(-0.9, 0.9);
    double z = g.uniform(-0.9, 0.9);
    ParamList p{{"a", a}, {"c", c}, {"z", z}};
    jobs.push_back({"transform_1phi1_heine", p, [=] {
                      return sides_report("transform_1phi1_heine", p,
                                          transform_1phi1_heine(a, c, z, ctx), tol);
                    }});
  }
  for (int i = 0; i < n; ++i) {
    const bool confluent = i % 2 == 1;
    double a = g.uniform(-2.0, 2.0);
    double b = g.uniform(-2.0, 2.0);
    double c = g.uniform(-0.9, 0.9);
    double z = confluent ? g.uniform(-2.0, 2.0) : g.uniform(-0.45, 0.45);
    ParamList p{{"a", a}, {"b", b}, {"c", c}, {"z", z}, {"confluent", confluent ? 1 : 0}};
    jobs.push_back({"qdiff_residual", p, [=] {
                      Residual r = qdiff_residual_2phi1(
                          a, b, c, z, ctx,
                          confluent ? QDiffMode::Confluent : QDiffMode::Hypergeometric);
                      // residual against the size of its three terms
                      return make_report("qdiff_residual", p, r.value, 0.0, r.scale,
                                         Tolerances{tol.rtol, tol.rtol});
                    }});
  }
  return jobs;
}

// ---------------------------------------------------------------- operator

std::vector<Job> operator_jobs(const RunConfig& cfg) {
  const QContext ctx = cfg.context();
  const Tolerances tol = cfg.tol(1e-10, 1e-10);
  const Tolerances closed = cfg.tol(1e-9, 1e-9);
  const Tolerances green = cfg.tol(1e-8, 1e-8);
  const double c = cfg.c, t = cfg.t_value();
  std::vector<Job> jobs;

  struct Pt {
    const char* label;
    int p;
    bool eta;
  };
  for (Pt pt : {Pt{"eta", 0, true}, Pt{"eta", 1, true}, Pt{"xi", -1, false}, Pt{"xi", 0, false},
                Pt{"xi", 1, false}}) {
    ParamList p{{pt.eta ? "eta_p" : "xi_p", pt.p}};
    jobs.push_back({"eigen_residual", p, [=] {
                      OperatorSpec op(c, t, ctx);
                      const double x = pt.eta ? eta_point(op, pt.p) : xi_point(op, pt.p);
                      LatticeVector v = v_vector(op, 1.0 / t, x);
                      v.materialize(-9, 9);
                      double worst = 0.0;
                      for (int k = -8; k <= 8; ++k) {
                        auto [ak, bk] = coeffs(op, k);
                        double am = coeffs(op, k - 1).first;
                        double scale = std::fabs(ak * v(k + 1)) + std::fabs(bk * v(k)) +
                                       std::fabs(am * v(k - 1)) + std::fabs(x * v(k));
                        worst = std::max(worst, std::fabs(apply_L(op, v, k) - x * v(k)) / scale);
                      }
                      return make_report("eigen_residual", p, worst, 0.0, 1.0,
                                         Tolerances{tol.rtol, tol.rtol});
                    }});
  }

  const double x0 = 0.9;
  struct Pair {
    const char* name;
    Solution u, v;
  };
  for (Pair pr : {Pair{"wronskian_constancy_vt_vtinv", Solution::Vt, Solution::Vtinv},
                  Pair{"wronskian_constancy_u_vt", Solution::U, Solution::Vt},
                  Pair{"wronskian_constancy_u_vtinv", Solution::U, Solution::Vtinv}}) {
    ParamList p{{"x", x0}};
    jobs.push_back({pr.name, p, [=] {
                      OperatorSpec op(c, t, ctx);
                      auto vec = [&](Solution s) {
                        switch (s) {
                          case Solution::Vt: return v_vector(op, t, x0);
                          case Solution::Vtinv: return v_vector(op, 1.0 / t, x0);
                          case Solution::U: break;
                        }
                        return u_vector(op, x0);
                      };
                      LatticeVector u = vec(pr.u), v = vec(pr.v);
                      u.materialize(-10, 11);
                      v.materialize(-10, 11);
                      const double w0 = wronskian(op, u, v, 0);
                      double worst = 0.0;
                      for (int k = -10; k <= 10; ++k) {
                        double ak = coeffs(op, k).first;
                        double scale = std::max(std::fabs(w0), ak * (std::fabs(u(k + 1) * v(k)) +
                                                                     std::fabs(u(k) * v(k + 1))));
                        worst = std::max(worst, std::fabs(wronskian(op, u, v, k) - w0) / scale);
                      }
                      return make_report(pr.name, p, worst, 0.0, 1.0,
                                         Tolerances{tol.rtol, tol.rtol});
                    }});
  }

  {
    ParamList p{{"x", x0}};
    jobs.push_back({"wronskian_vt_vtinv_closed_form", p, [=] {
                      OperatorSpec op(c, t, ctx);
                      LatticeVector u = v_vector(op, t, x0), v = v_vector(op, 1.0 / t, x0);
                      return make_report("wronskian_vt_vtinv_closed_form", p, wronskian(op, u, v, 0),
                                         wronskian_closed_forms(op, x0).w_vv, 0.0, closed);
                    }});
    jobs.push_back({"wronskian_u_vt_closed_form", p, [=] {
                      OperatorSpec op(c, t, ctx);
                      LatticeVector u = u_vector(op, x0), v = v_vector(op, t, x0);
                      return make_report("wronskian_u_vt_closed_form", p, wronskian(op, u, v, 0),
                                         wronskian_closed_forms(op, x0).w_uv, 0.0, closed);
                    }});
    jobs.push_back({"wronskian_u_vtinv_closed_form", p, [=] {
                      OperatorSpec op(c, t, ctx);
                      LatticeVector u = u_vector(op, x0), v = v_vector(op, 1.0 / t, x0);
                      return make_report("wronskian_u_vtinv_closed_form", p, wronskian(op, u, v, 0),
                                         wronskian_closed_forms(op, x0).w_uv_inv, 0.0, closed);
                    }});
    jobs.push_back({"green_resolvent", p, [=] {
                      OperatorSpec op(c, t, ctx);
                      return make_report("green_resolvent", p, green_resolvent_defect(op, x0, -6, 6),
                                         0.0, 1.0, Tolerances{green.rtol, green.atol});
                    }});
  }
  for (int k : {0, 1}) {
    ParamList p{{"x", x0}, {"k", k}};
    jobs.push_back({"connection_formula", p, [=] {
                      OperatorSpec op(c, t, ctx);
                      Residual r = connection_residual(op, x0, k);
                      return make_report("connection_formula", p, r.value, 0.0, r.scale,
                                         Tolerances{tol.rtol, tol.rtol});
                    }});
  }
  for (int pp = 0; pp <= 2; ++pp) {
    ParamList p{{"p", pp}};
    jobs.push_back({"eta_norm", p, [=] {
                      OperatorSpec op(c, t, ctx);
                      double x = eta_point(op, pp);
                      SeriesValue s = lattice_inner(op, x, x);
                      return make_report("eta_norm", p, s.value, eta_norm(op, pp), 0.0, closed);
                    }});
    jobs.push_back({"eta_weight_times_norm", p, [=] {
                      OperatorSpec op(c, t, ctx);
                      return make_report("eta_weight_times_norm", p,
                                         eta_weight(op, pp) * eta_norm(op, pp), 1.0, 1.0, closed);
                    }});
  }
  for (int pp = -2; pp <= 2; ++pp) {
    ParamList p{{"p", pp}};
    jobs.push_back({"xi_norm", p, [=] {
                      OperatorSpec op(c, t, ctx);
                      double x = xi_point(op, pp);
                      SeriesValue s = lattice_inner(op, x, x);
                      return make_report("xi_norm", p, s.value, xi_norm(op, pp), 0.0, closed);
                    }});
  }
  for (auto [pe, px] : {std::pair{0, 0}, std::pair{1, -1}, std::pair{2, 1}}) {
    ParamList p{{"eta_p", pe}, {"xi_p", px}};
    jobs.push_back({"spectral_cross_inner", p, [=] {
                      OperatorSpec op(c, t, ctx);
                      SeriesValue s = lattice_inner(op, eta_point(op, pe), xi_point(op, px));
                      double scale = std::sqrt(eta_norm(op, pe) * xi_norm(op, px));
                      return make_report("spectral_cross_inner", p, s.value, 0.0, scale, closed);
                    }});
  }
  return jobs;
}

std::vector<Job> finite_section_jobs(const RunConfig& cfg) {
  const QContext ctx = cfg.context();
  const double c = cfg.c, t = cfg.t_value();
  const Tolerances tol = cfg.tol(1e-6, 1e-6);
  std::vector<Job> jobs;
  struct Target {
    const char* label;
    int p;
    bool eta;
  };
  for (Target tg : {Target{"xi", 0, false}, Target{"xi", 1, false}, Target{"eta", 0, true},
                    Target{"eta", 1, true}}) {
    ParamList p{{tg.eta ? "eta_p" : "xi_p", tg.p}};
    jobs.push_back({"finite_section", p, [=] {
                      OperatorSpec op(c, t, ctx);
                      const double x = tg.eta ? eta_point(op, tg.p) : xi_point(op, tg.p);
                      double prev = INFINITY, d = 0.0;
                      bool monotone = true;
                      for (int K : {10, 20, 30}) {
                        auto ev = finite_section_eigenvalues(op, K);
                        d = INFINITY;
                        for (double e : ev) d = std::min(d, std::fabs(e - x));
                        if (d > prev) monotone = false;
                        prev = d;
                      }
                      VerificationReport r = custom_report("finite_section", p, d, 0.0,
                                                           monotone && d <= tol.atol);
                      r.k_lo = -30;
                      r.k_hi = 30;
                      return r;
                    }});
  }
  return jobs;
}

// ---------------------------------------------------------------- theorem 4.1

std::vector<Job> theorem41_jobs(const RunConfig& cfg) {
  const QContext ctx = cfg.context();
  const MeasureSpec spec(cfg.alpha, cfg.c, ctx);
  const Tolerances tol = cfg.tol(1e-9, 1e-10);
  std::vector<Job> jobs;
  for (int n = 0; n <= 8; ++n)
    for (int m = n; m <= 8; ++m)
      jobs.push_back({"laguerre_gram", {{"n", n}, {"p", m}},
                      [=] { return laguerre_gram(spec, n, m, tol); }});
  for (int p = -4; p <= 4; ++p)
    for (int r = p; r <= 4; ++r)
      jobs.push_back({"m_gram", {{"p", p}, {"r", r}}, [=] { return m_gram(spec, p, r, tol); }});
  for (int p = -4; p <= 4; ++p)
    for (int n = 0; n <= 8; ++n)
      jobs.push_back({"cross_gram", {{"p", p}, {"n", n}}, [=] { return cross_gram(spec, p, n, tol); }});
  for (int p = -2; p <= 2; ++p)
    for (int r = p; r <= 2; ++r) {
      ParamList pl{{"p", p}, {"r", r}};
      jobs.push_back({"hankel_identity", pl, [=] {
                        HankelMembers h = hankel_identity(spec, p, r);
                        double scale = std::sqrt(m_norm(spec, p) * m_norm(spec, r));
                        VerificationReport a =
                            make_report("hankel_identity", pl, h.lhs1, h.mid, scale, tol);
                        VerificationReport b =
                            make_report("hankel_identity", pl, h.lhs2, h.mid, scale, tol);
                        return a.abs_err >= b.abs_err ? a : b;
                      }});
    }
  return jobs;
}

// ---------------------------------------------------------------- dual, corollary

std::vector<Job> dual_jobs(const RunConfig& cfg) {
  const QContext ctx = cfg.context();
  const MeasureSpec spec(cfg.alpha, cfg.c, ctx);
  const Tolerances tol = cfg.tol(1e-7, 1e-7);
  std::vector<Job> jobs;
  for (int k = -4; k <= 4; ++k)
    for (int l = -4; l <= 4; ++l)
      jobs.push_back({"dual_orthogonality", {{"k", k}, {"l", l}},
                      [=] { return dual_orthogonality(spec, k, l, tol); }});
  return jobs;
}

std::vector<Job> corollary_jobs(const RunConfig& cfg) {
  const QContext ctx = cfg.context();
  const MeasureSpec spec(cfg.alpha, cfg.c, ctx);
  const Tolerances tol = cfg.tol(1e-7, 1e-7);
  const Tolerances exact = cfg.tol(1e-10, 1e-10);
  const Tolerances limit = cfg.tol(1e-6, 1e-6);
  std::vector<Job> jobs;
  for (int k = -4; k <= 4; ++k)
    for (int l = -4; l <= 4; ++l)
      jobs.push_back({"corollary_check", {{"k", k}, {"l", l}},
                      [=] { return corollary_check(spec, k, l, tol); }});
  const double x = cfg.c * cfg.q * cfg.q, y = cfg.c * cfg.q * cfg.q * cfg.q;
  for (int N = 0; N <= 30; ++N) {
    ParamList p{{"N", N}, {"x", x}, {"y", y}};
    jobs.push_back({"cd_kernel_exact", p, [=] {
                      CdTriple c3 = cd_kernel(spec, N, x, y);
                      double scale = std::max(std::fabs(c3.partial_sum), std::fabs(c3.cd_form));
                      return make_report("cd_kernel_exact", p, c3.partial_sum, c3.cd_form, scale,
                                         exact);
                    }});
  }
  {
    ParamList p{{"N", 60}, {"x", x}, {"y", y}};
    jobs.push_back({"cd_kernel_bessel_limit", p, [=] {
                      CdTriple c3 = cd_kernel(spec, 60, x, y);
                      return make_report("cd_kernel_bessel_limit", p, c3.cd_form, c3.bessel_limit,
                                         1.0, limit);
                    }});
  }
  return jobs;
}

// ---------------------------------------------------------------- berg

std::vector<Job> berg_jobs(const RunConfig& cfg) {
  const QContext ctx = cfg.context();
  const MeasureSpec spec(cfg.alpha, cfg.c, ctx);
  const Tolerances tol = cfg.tol(1e-9, 1e-10);
  // smallest p with |q^{p-alpha}/c| > 1
  int p = 0;
  while (!(std::fabs(ctx.pow(p - cfg.alpha) / cfg.c) > 1.0)) --p;
  std::vector<Job> jobs;
  for (double s : {-1.0, -0.5, 0.5, 1.0})
    for (int n = 0; n <= 3; ++n)
      for (int m = n; m <= 3; ++m)
        jobs.push_back({"berg_perturbed_gram", {{"s", s}, {"p", p}, {"n", n}, {"m", m}},
                        [=] { return berg_perturbed_gram(spec, s, p, n, m, tol); }});
  return jobs;
}

// ---------------------------------------------------------------- section 5

std::vector<Job> genfun_jobs(const RunConfig& cfg) {
  const QContext ctx = cfg.context();
  const MeasureSpec spec(cfg.alpha, cfg.c, ctx);
  const Tolerances tol = cfg.tol(1e-10, 1e-10);
  const Tolerances tol52 = cfg.tol(1e-9, 1e-9);
  Grid g(suite_seed(cfg.seed, 8));
  std::vector<Job> jobs;
  for (int i = 0; i < 20; ++i) {
    double b = g.sign() * g.uniform(0.3, 1.2);
    double a = g.uniform(-0.9, 0.9);
    double x = g.uniform(-1.0, 1.0);
    double z = g.sign() * g.uniform(0.1, 0.8) / std::fabs(b);
    ParamList p{{"a", a}, {"b", b}, {"x", x}, {"z", z}};
    jobs.push_back(
        {"genfun_i", p, [=] { return sides_report("genfun_i", p, genfun_i(a, b, x, z, ctx), tol); }});
  }
  for (int i = 0; i < 20; ++i) {
    double w = g.sign() * g.uniform(0.3, 0.9);
    double d = g.sign() * g.uniform(0.0, 0.9) * std::fabs(w);
    double y = g.uniform(-1.0, 1.0);
    ParamList p{{"d", d}, {"y", y}, {"w", w}};
    jobs.push_back(
        {"genfun_ii", p, [=] { return sides_report("genfun_ii", p, genfun_ii(d, y, w, ctx), tol); }});
  }
  for (double d : {0.4, 1.7})
    for (int l = -3; l <= 5; ++l) {
      ParamList p{{"a", 0.3}, {"b", 0.8}, {"d", d}, {"y", 0.6}, {"l", l}};
      jobs.push_back({"prop52", p, [=] {
                        Sides s = prop52(0.3, 0.8, d, 0.6, l, ctx);
                        // zero targets are measured against the l = 0 size
                        double scale = std::max({std::fabs(s.lhs), std::fabs(s.rhs),
                                                 std::fabs(prop52(0.3, 0.8, d, 0.6, 0, ctx).rhs)});
                        return make_report("prop52", p, s.lhs, s.rhs, scale, tol52);
                      }});
    }
  for (int r = -2; r <= 2; ++r)
    for (int m = 0; m <= 5; ++m)
      jobs.push_back({"monomial_orth", {{"r", r}, {"m", m}},
                      [=] { return monomial_orth(spec, r, m, tol); }});
  for (int r = -1; r <= 1; ++r)
    for (int m = 0; m <= 2; ++m) {
      ParamList p{{"r", r}, {"m", m}};
      jobs.push_back({"genfun_i_monomial", p, [=] {
                        Sides s = genfun_i_monomial(spec, r, m);
                        return make_report("genfun_i_monomial", p, s.lhs, s.rhs, 1.0, tol);
                      }});
    }
  for (int p = -1; p <= 1; ++p)
    for (int r = -1; r <= 1; ++r) {
      ParamList pl{{"p", p}, {"r", r}};
      jobs.push_back({"prop52_hankel", pl, [=] {
                        Sides s = prop52_hankel(spec, p, r);
                        double scale = std::sqrt(m_norm(spec, p) * m_norm(spec, r));
                        return make_report("prop52_hankel", pl, s.lhs, s.rhs, scale, tol52);
                      }});
    }
  return jobs;
}

// ---------------------------------------------------------------- section 6

std::vector<Job> bigjacobi_jobs(const RunConfig& cfg) {
  const QContext ctx = cfg.context();
  const Tolerances tol = cfg.tol(1e-9, 1e-9);
  std::vector<Job> jobs;
  struct P3 {
    double a, b, c;
  };
  for (P3 pr : {P3{ctx.pow(cfg.alpha), 0.0, cfg.c}, P3{0.7, 0.3, 1.5}})
    for (int k = 0; k <= 6; ++k)
      for (int l = k; l <= 6; ++l)
        jobs.push_back({"bqj_orthogonality", {{"k", k}, {"l", l}, {"a", pr.a}, {"b", pr.b}, {"c", pr.c}},
                        [=] {
                          BigJacobiParams params(pr.a, pr.b, pr.c, ctx);
                          return bqj_orthogonality(params, k, l, ctx, tol);
                        }});
  return jobs;
}

std::vector<Job> limits_jobs(const RunConfig& cfg) {
  const QContext ctx = cfg.context();
  const Tolerances tol = cfg.tol(1e-9, 1e-9);
  const Tolerances lim = cfg.tol(1e-6, 1e-6);
  const Tolerances cor = cfg.tol(1e-7, 1e-7);
  LimitStudyConfig base;
  base.alpha = cfg.alpha;
  base.c = cfg.c;
  base.r_values = cfg.r_values;
  base.ctx = ctx;
  const int r_top = cfg.r_values.empty() ? 30 : cfg.r_values.back();
  std::vector<Job> jobs;

  for (auto [k, l] : {std::pair{0, 0}, std::pair{2, 2}, std::pair{1, 0}})
    for (int r : cfg.r_values) {
      LimitStudyConfig lc = base;
      lc.k = k;
      lc.l = l;
      jobs.push_back({"finite_r_orth", {{"r", r}, {"k", k}, {"l", l}},
                      [=] { return finite_r_report(lc, r, tol); }});
    }

  for (double x : {1.0, cfg.q, cfg.q * cfg.q}) {
    ParamList p{{"r", r_top}, {"k", 0}, {"x", x}};
    jobs.push_back({"limit_pointwise", p, [=] {
                      PointwiseLimit pl = limit_pointwise(base, r_top, x);
                      return make_report("limit_pointwise", p, pl.ptilde, pl.bessel, 1.0, lim);
                    }});
    jobs.push_back({"limit_pointwise_bound", p, [=] {
                      PointwiseLimit pl = limit_pointwise(base, r_top, x);
                      double m = std::max(std::fabs(pl.ptilde), std::fabs(pl.bessel));
                      return custom_report("limit_pointwise_bound", p, m, pl.bound, m <= pl.bound);
                    }});
  }

  for (int k : {0, 1})
    for (int r : cfg.r_values)
      for (int p = -k; p >= std::max(-6, -r); --p) {
        LimitStudyConfig lc = base;
        lc.k = k;
        ParamList pl{{"r", r}, {"k", k}, {"p", p}};
        jobs.push_back({"lattice_values", pl, [=] {
                          LatticeValues v = lattice_values(lc, r, p);
                          // the direct 2phi1 cancels heavily here; its rounding scales with |terms|
                          double sp = std::max(std::fabs(v.ptilde_2phi2), v.direct_term_scale);
                          double sb = std::max(std::fabs(v.bessel_1phi2), std::fabs(v.bessel_direct));
                          VerificationReport a = make_report("lattice_values", pl, v.ptilde_2phi2,
                                                             v.ptilde_direct, sp, tol);
                          VerificationReport b = make_report("lattice_values", pl, v.bessel_1phi2,
                                                             v.bessel_direct, sb, tol);
                          a.cancellation = v.direct_term_scale / std::fabs(v.ptilde_2phi2);
                          VerificationReport worst = a.abs_err / a.scale >= b.abs_err / b.scale ? a : b;
                          if (!(std::max(std::fabs(v.ptilde_2phi2), std::fabs(v.bessel_1phi2)) <= v.bound))
                            worst.pass = false;
                          return worst;
                        }});
      }

  for (auto [k, l] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{0, 1}, std::pair{2, -1}}) {
    LimitStudyConfig lc = base;
    lc.k = k;
    lc.l = l;
    jobs.push_back({"eqe_check", {{"k", k}, {"l", l}}, [=] { return eqe_check(lc, tol); }});
    jobs.push_back({"eqe_vs_corollary", {{"k", k}, {"l", l}},
                    [=] { return eqe_vs_corollary(lc, cor); }});
  }

  {
    LimitStudyConfig lc = base;
    for (std::size_t i = 0; i < cfg.r_values.size(); ++i) {
      ParamList p{{"r", cfg.r_values[i]}};
      jobs.push_back({"convergence_distance", p, [=] {
                        ConvergenceStudy st = convergence_study(lc);
                        const ConvergenceRow& row = st.rows[i];
                        double prev = i == 0 ? row.total : st.rows[i - 1].total;
                        return custom_report("convergence_distance", p, row.total, prev,
                                             st.non_increasing);
                      }});
    }
    jobs.push_back({"convergence_first_sum_slope", {}, [=] {
                      ConvergenceStudy st = convergence_study(lc);
                      double target = std::log(cfg.q);
                      return custom_report("convergence_first_sum_slope", {}, st.first_sum_slope,
                                           target, st.first_sum_slope <= target + 0.01);
                    }});
    jobs.push_back({"convergence_fourth_sum_decay", {}, [=] {
                      ConvergenceStudy st = convergence_study(lc);
                      return custom_report("convergence_fourth_sum_decay", {},
                                           st.fourth_super_geometric ? 1.0 : 0.0, 1.0,
                                           st.fourth_super_geometric);
                    }});
  }
  return jobs;
}

using JobFactory = std::vector<Job> (*)(const RunConfig&);

struct SuiteDef {
  const char* name;
  JobFactory jobs;
};

const std::vector<SuiteDef>& suite_defs() {
  static const std::vector<SuiteDef> defs{
      {"qseries-identities", qseries_jobs}, {"operator", operator_jobs},
      {"finite-section", finite_section_jobs}, {"theorem41", theorem41_jobs},
      {"dual", dual_jobs},                  {"corollary", corollary_jobs},
      {"berg", berg_jobs},                  {"genfun", genfun_jobs},
      {"bigjacobi", bigjacobi_jobs},        {"limits", limits_jobs}};
  return defs;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& d : suite_defs()) v.emplace_back(d.name);
    return v;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  if (name == "all") return true;
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<SuiteResult> run_suite(const std::string& name, const RunConfig& cfg) {
  if (!is_suite(name)) throw QError(ErrorKind::UnknownFunction, "unknown suite '" + name + "'");
  std::vector<SuiteResult> out;
  for (const auto& d : suite_defs()) {
    if (name != "all" && name != d.name) continue;
    out.push_back({d.name, run_jobs(d.jobs(cfg), cfg.policy)});
  }
  return out;
}

}  // namespace qortho
