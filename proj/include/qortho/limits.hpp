#pragma once

#include <array>
#include <vector>

#include "qortho/families.hpp"
#include "qortho/identities.hpp"
#include "qortho/report.hpp"

namespace qortho {

struct LimitStudyConfig {
  double alpha = 0.25;
  double c = 2.0;
  int k = 0;
  int l = 0;
  std::vector<int> r_values{10, 20, 30, 40};
  std::vector<double> sample_points;
  QContext ctx;

  void validate() const;
};

// squared norm of P_k(.; a, b, -c) from the closed form
double bqj_norm(const BigJacobiParams& params, int k, const QContext& ctx);
VerificationReport bqj_orthogonality(const BigJacobiParams& params, int k, int l,
                                     const QContext& ctx, const Tolerances& tol = {});

// P~_{r-kk}(q^{alpha+1} x; q^alpha, 0, -c q^{-r-1})
double ptilde_r(const LimitStudyConfig& cfg, int r, int kk, double x);

Sides finite_r_orth(const LimitStudyConfig& cfg, int r);
VerificationReport finite_r_report(const LimitStudyConfig& cfg, int r, const Tolerances& tol = {});

struct PointwiseLimit {
  double ptilde = 0.0;
  double bessel = 0.0;
  double bound = 0.0;
};
// majorant 1phi1(-1/M; q^{alpha+1}; q, -q^{alpha+k+2} M/c)
double pointwise_bound(const LimitStudyConfig& cfg, double M);
// x = 0 is checked against the M = q^10 bound
PointwiseLimit limit_pointwise(const LimitStudyConfig& cfg, int r, double x);

struct LatticeValues {
  double ptilde_2phi2 = 0.0;
  double ptilde_direct = 0.0;
  double direct_term_scale = 0.0;  // sum of |terms| of the direct 2phi1
  double bessel_1phi2 = 0.0;
  double bessel_direct = 0.0;
  double bound = 0.0;
};
// values at x = -c q^{p-alpha-1}, i.e. P~ at -c q^p; needs -r <= p <= -k
LatticeValues lattice_values(const LimitStudyConfig& cfg, int r, int p);

struct EqeSides {
  double sum_n = 0.0;  // over q^n, n >= 0
  double sum_p = 0.0;  // over -c q^{p-alpha-1}, p in Z
  double rhs = 0.0;
  double lhs() const { return sum_n + sum_p; }
};
EqeSides eqe_sides(const LimitStudyConfig& cfg);
VerificationReport eqe_check(const LimitStudyConfig& cfg, const Tolerances& tol = {});
// eqe lhs against c ((q;q)_inf/(q^{alpha+1};q)_inf)^2 q^{-alpha(k+l+2)/2} times the
// corollary rhs at (k+1, l+1) with c replaced by 1/c
VerificationReport eqe_vs_corollary(const LimitStudyConfig& cfg, const Tolerances& tol = {});

struct ConvergenceRow {
  int r = 0;
  std::array<double, 4> finite{};  // the four pieces of the finite-r lhs
  std::array<double, 4> limit{};   // the same pieces of the limit lhs
  std::array<double, 4> distance{};
  double total = 0.0;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  bool non_increasing = false;
  double first_sum_slope = 0.0;   // fitted log-slope of max_r |n-th term|
  double first_sum_constant = 0.0;
  bool fourth_super_geometric = false;
};
// pieces: n >= 0; p >= -l+1; -k+1 <= p <= -l; p <= -k (with k >= l after a swap)
ConvergenceStudy convergence_study(const LimitStudyConfig& cfg);

}  // namespace qortho
