#pragma once

#include <functional>

#include "qortho/families.hpp"
#include "qortho/identities.hpp"
#include "qortho/report.hpp"
#include "qortho/series.hpp"

namespace qortho {

// value at the lattice point c q^k
using LatticeFunction = std::function<double(int)>;

double weight(const MeasureSpec& spec, int k);
LogReal weight_log(const MeasureSpec& spec, int k);

// sum_k weight(k) f(k) g(k) over Z
BilateralSum functional_L(const MeasureSpec& spec, const LatticeFunction& f,
                          const LatticeFunction& g);

LatticeFunction laguerre_on_lattice(const MeasureSpec& spec, int n);
LatticeFunction m_on_lattice(const MeasureSpec& spec, int p);

// closed-form squared norms of L_n and M_p
double laguerre_norm(const MeasureSpec& spec, int n);
double m_norm(const MeasureSpec& spec, int p);

VerificationReport laguerre_gram(const MeasureSpec& spec, int n, int p, const Tolerances& tol = {});
VerificationReport m_gram(const MeasureSpec& spec, int p, int r, const Tolerances& tol = {});
VerificationReport cross_gram(const MeasureSpec& spec, int p, int n, const Tolerances& tol = {});
VerificationReport monomial_orth(const MeasureSpec& spec, int r, int m, const Tolerances& tol = {});

struct HankelMembers {
  double lhs1 = 0.0;  // sum with the 1phi1's at argument q^{p+k+1}
  double mid = 0.0;   // closed form
  double lhs2 = 0.0;  // sum with the regularized 1phi1's in the lower parameter
};
HankelMembers hankel_identity(const MeasureSpec& spec, int p, int r);

// t is fixed by t^{-2} = q^alpha
VerificationReport dual_orthogonality(const MeasureSpec& spec, int k, int l,
                                      const Tolerances& tol = {});

struct CdTriple {
  double partial_sum = 0.0;
  double cd_form = 0.0;
  double bessel_limit = 0.0;
};
CdTriple cd_kernel(const MeasureSpec& spec, int N, double x, double y);

struct CorollarySides {
  double lhs = 0.0;
  double bessel_term = 0.0;
  double series_term = 0.0;
  double rhs() const { return bessel_term + series_term; }
};
CorollarySides corollary_sides(const MeasureSpec& spec, int k, int l);
VerificationReport corollary_check(const MeasureSpec& spec, int k, int l,
                                   const Tolerances& tol = {});

// K = 1.05 max_{|k|<=60} |M_p(c q^k)|. Admissible p have |q^{p-alpha}/c| > 1.
double berg_constant(const MeasureSpec& spec, int p);
// smallest factor 1 + s M_p(c q^k)/K over the window used by the Gram sum
double berg_min_factor(const MeasureSpec& spec, double s, int p, int n, int m);
VerificationReport berg_perturbed_gram(const MeasureSpec& spec, double s, int p, int n, int m,
                                       const Tolerances& tol = {});

Sides genfun_i(double a, double b, double x, double z, const QContext& ctx);
Sides genfun_ii(double d, double y, double w, const QContext& ctx);
Sides prop52(double a, double b, double d, double y, int l, const QContext& ctx);

// genfun_i at a = -b c q^{-r}, x = q^{alpha+1}/b, z b = q^{alpha+1+m}: rhs vanishes
Sides genfun_i_monomial(const MeasureSpec& spec, int r, int m, double b = 0.5);
// prop52 at a/b = -c q^{-p}, d = -c q^{alpha-r}, y = q^{alpha+1}, l = p - r,
// rescaled to the Hankel sum
Sides prop52_hankel(const MeasureSpec& spec, int p, int r);

}  // namespace qortho
