// One line per acceptance criterion at the default parameters. Exit status is
// nonzero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qortho/operator.hpp"
#include "qortho/output.hpp"
#include "qortho/suites.hpp"

using namespace qortho;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Tally {
  std::size_t total = 0, passed = 0;
  double worst = 0.0;  // largest err / allowed over the counted reports
  std::string worst_name;
  double seconds = 0.0;
};

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Tally tally(const std::vector<std::string>& suites, const std::set<std::string>& names,
            const RunConfig& cfg) {
  Tally t;
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& s : suites)
    for (const SuiteResult& res : run_suite(s, cfg))
      for (const VerificationReport& r : res.reports) {
        if (!names.count(r.name)) continue;
        ++t.total;
        t.passed += r.pass;
        // the quantity the pass rule actually bounds
        double e = !r.error.empty() ? INFINITY
                   : r.predicted != 0.0 ? std::min(r.rel_err, r.abs_err / r.scale)
                                        : r.abs_err / r.scale;
        if (r.name == "limit_pointwise_bound") e = 0.0;  // a yes/no check, no error to rank
        if (t.worst_name.empty() || e > t.worst) {
          t.worst = e;
          t.worst_name = r.name;
        }
      }
  t.seconds = elapsed(t0);
  return t;
}

Outcome from_tally(const Tally& t, std::optional<double> budget_s = std::nullopt) {
  char buf[256];
  bool ok = t.total > 0 && t.passed == t.total && (!budget_s || t.seconds <= *budget_s);
  int n = std::snprintf(buf, sizeof buf, "%zu/%zu reports, worst %.2e (%s), %.2f s", t.passed,
                        t.total, t.worst, t.worst_name.c_str(), t.seconds);
  if (budget_s) std::snprintf(buf + n, sizeof buf - n, " of %.0f s", *budget_s);
  return {ok, buf};
}

Outcome criterion1(const RunConfig& cfg) {
  return from_tally(tally({"qseries-identities"},
                          {"theta_shift", "shift_1phi1", "transform_1phi1_heine", "qdiff_residual"},
                          cfg),
                    5.0);
}

Outcome criterion2(const RunConfig& cfg) {
  return from_tally(
      tally({"operator"},
            {"eigen_residual", "wronskian_constancy_vt_vtinv", "wronskian_constancy_u_vt",
             "wronskian_constancy_u_vtinv", "wronskian_vt_vtinv_closed_form",
             "wronskian_u_vt_closed_form", "wronskian_u_vtinv_closed_form", "green_resolvent"},
            cfg),
      10.0);
}

Outcome criterion3(const RunConfig& cfg) {
  OperatorSpec op(cfg.c, cfg.t_value(), cfg.context());
  const double targets[] = {xi_point(op, 0), xi_point(op, 1), eta_point(op, 0), eta_point(op, 1)};
  double dist[3] = {0, 0, 0};
  const int Ks[] = {10, 20, 30};
  for (int i = 0; i < 3; ++i) {
    std::vector<double> ev = finite_section_eigenvalues(op, Ks[i]);
    for (double x : targets) {
      double d = INFINITY;
      for (double e : ev) d = std::min(d, std::fabs(e - x));
      dist[i] = std::max(dist[i], d);
    }
  }
  bool monotone = dist[1] <= dist[0] && dist[2] <= dist[1];
  char buf[200];
  std::snprintf(buf, sizeof buf, "max distance K=10: %.3e, K=20: %.3e, K=30: %.3e (need <= 1e-6)%s",
                dist[0], dist[1], dist[2], monotone ? ", non-increasing" : ", NOT monotone");
  return {monotone && dist[2] <= 1e-6, buf};
}

Outcome criterion4(const RunConfig& cfg) {
  return from_tally(tally({"theorem41"}, {"laguerre_gram", "m_gram", "cross_gram"}, cfg), 20.0);
}

Outcome criterion5(const RunConfig& cfg) {
  return from_tally(tally({"dual", "corollary"}, {"dual_orthogonality", "corollary_check"}, cfg),
                    30.0);
}

Outcome criterion6(const RunConfig& cfg) {
  return from_tally(tally({"corollary"}, {"cd_kernel_exact", "cd_kernel_bessel_limit"}, cfg));
}

Outcome criterion7(const RunConfig& cfg) {
  return from_tally(tally({"berg"}, {"berg_perturbed_gram"}, cfg));
}

Outcome criterion8(const RunConfig& cfg) {
  return from_tally(tally({"genfun"}, {"genfun_i", "genfun_ii", "prop52", "monomial_orth"}, cfg));
}

Outcome criterion9(const RunConfig& cfg) {
  return from_tally(tally({"bigjacobi", "limits"},
                          {"bqj_orthogonality", "finite_r_orth", "limit_pointwise",
                           "limit_pointwise_bound", "lattice_values", "eqe_vs_corollary"},
                          cfg),
                    60.0);
}

Outcome criterion10(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  std::string a = format_results("all", cfg, run_suite("all", cfg), OutputFormat::Json);
  std::string b = format_results("all", cfg, run_suite("all", cfg), OutputFormat::Json);
  char buf[160];
  std::snprintf(buf, sizeof buf, "two runs of verify all: %zu and %zu bytes, %s, %.2f s", a.size(),
                b.size(), a == b ? "identical" : "DIFFERENT", elapsed(t0));
  return {a == b && !a.empty(), buf};
}

}  // namespace

int main() {
  RunConfig cfg;  // q = 0.5, alpha = 0.25, c = 2, t = q^{-1/8}, seed 1
  using Fn = Outcome (*)(const RunConfig&);
  const Fn criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                         criterion6, criterion7, criterion8, criterion9, criterion10};
  int failed = 0;
  for (int i = 0; i < 10; ++i) {
    Outcome o;
    try {
      o = criteria[i](cfg);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %2d: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
