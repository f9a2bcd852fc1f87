#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "qortho/identities.hpp"
#include "qortho/series.hpp"

namespace qortho {

// Parameters of the doubly infinite Jacobi operator
//   (L u)_k = a_k u_{k+1} + b_k u_k + a_{k-1} u_{k-1}.
struct OperatorSpec {
  double c;
  double t;
  QContext ctx;
  bool degenerate = false;  // t = +-q^{m/2}

  OperatorSpec(double c_, double t_, QContext ctx_ = QContext());
};

enum class Branch { Eta, Xi };

struct SpectralPoint {
  Branch branch;
  int p;
  double x;
};

// Lazily evaluated sequence u_k. A materialized window caches values; outside
// of it the generator is called again, which is deterministic.
class LatticeVector {
 public:
  using Generator = std::function<LogReal(int)>;

  explicit LatticeVector(Generator gen) : gen_(std::move(gen)) {}

  LogReal eval_log(int k) const;
  double operator()(int k) const { return eval_log(k).value(); }
  void materialize(int lo, int hi);
  std::pair<int, int> window() const { return {lo_, hi_}; }

 private:
  Generator gen_;
  int lo_ = 0, hi_ = -1;
  std::vector<LogReal> cache_;
};

std::pair<double, double> coeffs(const OperatorSpec& spec, int k);
double apply_L(const OperatorSpec& spec, const LatticeVector& u, int k);

// V^s_k(x); s = +-q^{-m/2} (m >= 1) is refused unless allow_degenerate, in
// which case the regularized 1phi1 is used
LogReal v_sol_log(const OperatorSpec& spec, double s, int k, double x,
                  bool allow_degenerate = false);
double v_sol(const OperatorSpec& spec, double s, int k, double x);

// U_k(x): the 2phi1 where it converges (q^{1-k}/c < 1), the connection formula beyond
LogReal u_sol_log(const OperatorSpec& spec, int k, double x);
double u_sol(const OperatorSpec& spec, int k, double x);
// the 2phi1 form only; DivergentSeries outside its domain
LogReal u_sol_direct_log(const OperatorSpec& spec, int k, double x);

LatticeVector v_vector(const OperatorSpec& spec, double s, double x);
LatticeVector u_vector(const OperatorSpec& spec, double x);

LogReal c_func_log(const OperatorSpec& spec, double s, double x);
double c_func(const OperatorSpec& spec, double s, double x);
double big_C(const OperatorSpec& spec, double s);

// U - C_t c_t V^t - C_{1/t} c_{1/t} V^{1/t} at k, with the largest term as scale
Residual connection_residual(const OperatorSpec& spec, double x, int k);

// both sides of V^{+-q^{-m/2}}_k(x) = (-c)^m (...)_inf/(...)_inf V^{+-q^{m/2}}_k(x);
// sign = +1 or -1 selects the branch
Sides degenerate_t_relation(const OperatorSpec& spec, int m, int sign, int k, double x);

double wronskian(const OperatorSpec& spec, const LatticeVector& u, const LatticeVector& v, int k);

struct WronskianForms {
  double w_vv = 0.0;          // [V^t, V^{1/t}], four-parameter product reading
  double w_vv_three = 0.0;    // same display read with three parameters
  double w_uv = 0.0;          // [U, V^t]
  double w_uv_inv = 0.0;      // [U, V^{1/t}]
};
WronskianForms wronskian_closed_forms(const OperatorSpec& spec, double x);

double green_function(const OperatorSpec& spec, int m, int n, double x);

// max over m, j in [lo, hi] of |sum_n G(m,n)((x-L)e_j)_n - delta_{mj}| / scale
double green_resolvent_defect(const OperatorSpec& spec, double x, int lo, int hi);

std::vector<SpectralPoint> spectrum(const OperatorSpec& spec, int p_min, int p_max);
double eta_point(const OperatorSpec& spec, int p);
double xi_point(const OperatorSpec& spec, int p);

double eta_norm(const OperatorSpec& spec, int p);
LogReal eta_norm_log(const OperatorSpec& spec, int p);
LogReal xi_norm_log(const OperatorSpec& spec, int p);
double xi_norm(const OperatorSpec& spec, int p);
// weight of the point mass at eta_p, normalized so that eta_weight * eta_norm = 1
double eta_weight(const OperatorSpec& spec, int p);
// the same weight before dividing by (q;q)_inf; equals (q;q)_inf / eta_norm
double eta_weight_unnormalized(const OperatorSpec& spec, int p);
double xi_weight(const OperatorSpec& spec, int p);

// sum_k V^{1/t}_k(x) V^{1/t}_k(y), adaptive in both directions
SeriesValue lattice_inner(const OperatorSpec& spec, double x, double y);

std::vector<double> finite_section_eigenvalues(const OperatorSpec& spec, int K);

enum class Solution { Vt, Vtinv, U };
enum class Direction { PlusInf, MinusInf };

struct TailReport {
  std::vector<double> log_window_sums;  // log of sum |u_k|^2 per window
  std::vector<double> ratios;           // successive window-sum ratios
  bool cauchy_decreasing = false;       // every ratio < 1/2
};

TailReport ell2_tail_check(const OperatorSpec& spec, Solution sol, double x, Direction dir,
                           int window);

}  // namespace qortho
