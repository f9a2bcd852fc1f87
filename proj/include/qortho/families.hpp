#pragma once

#include "qortho/series.hpp"

namespace qortho {

struct MeasureSpec {
  double alpha;
  double c;
  QContext ctx;

  MeasureSpec(double alpha_, double c_, QContext ctx_ = QContext())
      : alpha(alpha_), c(c_), ctx(ctx_) {
    if (!(alpha > -1.0)) throw QError(ErrorKind::InvalidParameter, "alpha must exceed -1");
    if (!(c > 0.0)) throw QError(ErrorKind::InvalidParameter, "c must be positive");
  }
};

struct BigJacobiParams {
  double a;
  double b;
  double c;

  BigJacobiParams(double a_, double b_, double c_, const QContext& ctx) : a(a_), b(b_), c(c_) {
    if (!(a > 0.0 && a < 1.0 / ctx.q()))
      throw QError(ErrorKind::InvalidParameter, "big q-Jacobi needs 0 < a < 1/q");
    if (!(b > -1.0 / ctx.q())) throw QError(ErrorKind::InvalidParameter, "big q-Jacobi needs b > -1/q");
    if (!(c > 0.0)) throw QError(ErrorKind::InvalidParameter, "big q-Jacobi needs c > 0");
  }
};

// L_n^{(alpha)}(x;q)
double q_laguerre(int n, double alpha, double x, const QContext& ctx);

enum class MForm { Auto, A, B };

struct MValue {
  double value = 0.0;
  double rel_err = 0.0;
  double cancellation = 1.0;
  MForm form = MForm::A;
};

// M_p^{(alpha;c)}(x;q). Form A is the 1phi1 with argument x q^{p+1}/c, form B
// the rewritten one with lower parameter x q^{p+1}/c (kept regularized, so the
// lattice points where that parameter hits q^{-m} are fine). Auto evaluates
// both, raises FormMismatch if two well-conditioned values disagree, and
// otherwise returns the better-conditioned one.
MValue m_func_eval(int p, const MeasureSpec& spec, double x, MForm form = MForm::Auto);
double m_func(int p, const MeasureSpec& spec, double x, MForm form = MForm::Auto);

// Jackson's second q-Bessel function J^{(2)}_alpha(x;q)
double jackson_j2(double alpha, double x, const QContext& ctx);

enum class BesselForm { Auto, J, C };

// big q-Bessel function J_{alpha,k}^c(x;q)
double big_qbessel(double alpha, int k, double c, double x, const QContext& ctx,
                   BesselForm form = BesselForm::Auto);

// P_k(x; a, b, -c; q), by the three-term recurrence
double big_qjacobi(int k, const BigJacobiParams& params, double x, const QContext& ctx);

// the same polynomial summed as the terminating 3phi2
double big_qjacobi_series(int k, const BigJacobiParams& params, double x, const QContext& ctx);
// P~_k(x; a, 0, -c; q) as a 2phi1; x = 0 is taken as the limit of the terms
double big_qjacobi_tilde(int k, double a, double c, double x, const QContext& ctx);
// (-q^{-k}/c;q)_k P_k(x; a, 0, -c; q), the other side of the same identity
double big_qjacobi_tilde_scaled(int k, double a, double c, double x, const QContext& ctx);

}  // namespace qortho
