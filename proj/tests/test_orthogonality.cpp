#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "qortho/orthogonality.hpp"

using namespace qortho;
namespace o = oracle;

namespace {
const QContext ctx(0.5);
const MeasureSpec spec(0.25, 2.0, ctx);
double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }
double side_rel(const Sides& s) { return std::fabs(s.lhs - s.rhs) / std::max(std::fabs(s.lhs), std::fabs(s.rhs)); }
}  // namespace

TEST_CASE("lattice weight") {
  for (int k : {-6, 0, 5}) {
    o::ld ref = std::pow(0.5L, k * 1.25L) / o::poch_inf(-2.0L * std::pow(0.5L, (o::ld)k), 0.5L);
    CHECK(rel(weight(spec, k), double(ref)) < 1e-13);
  }
  CHECK(rel(weight(spec, 60) / weight(spec, 61), std::pow(0.5, -1.25)) < 1e-12);
}

TEST_CASE("total mass is the n = p = 0 norm") {
  const o::ld q = 0.5L, c = 2.0L, qa1 = std::pow(q, 1.25L);
  o::ld ref = o::poch_inf(q, q) * o::poch_inf(-c * qa1, q) * o::poch_inf(-std::pow(q, -0.25L) / c, q) /
              (o::poch_inf(qa1, q) * o::poch_inf(-c, q) * o::poch_inf(-q / c, q));
  LatticeFunction one = [](int) { return 1.0; };
  CHECK(rel(functional_L(spec, one, one).sum.value, double(ref)) < 1e-13);
  CHECK(rel(laguerre_norm(spec, 0), double(ref)) < 1e-14);
  CHECK(functional_L(spec, [](int) { return 0.0; }, one).sum.value == 0.0);
}

TEST_CASE("Gram matrices") {
  CHECK(laguerre_gram(spec, 0, 1).pass);
  CHECK(laguerre_gram(spec, 3, 3).rel_err < 1e-12);
  CHECK(m_gram(spec, 0, 1).pass);
  CHECK(m_gram(spec, 0, 0).rel_err < 1e-12);
  CHECK(m_gram(spec, -2, -2).rel_err < 1e-12);
  for (auto [p, n] : {std::pair{0, 0}, std::pair{-3, 5}, std::pair{4, 2}}) CHECK(cross_gram(spec, p, n).pass);
  for (auto [r, m] : {std::pair{0, 0}, std::pair{2, 3}, std::pair{-1, 1}}) CHECK(monomial_orth(spec, r, m).pass);
  CHECK_FALSE(laguerre_gram(spec, 2, 2, Tolerances{1e-30, 1e-30}).pass);
}

TEST_CASE("Hankel transform identity") {
  HankelMembers h = hankel_identity(spec, 0, 0);
  const o::ld q = 0.5L, c = 2.0L, a = 0.25L;
  o::ld mid = c * std::pow(q, a) * o::poch_inf(-q / c, q) / o::poch_inf(-std::pow(q, 1 - a) / c, q) *
              o::poch_inf(-c * std::pow(q, a + 1), q) * o::poch_inf(-std::pow(q, -a) / c, q) /
              (o::poch_inf(-c, q) * o::poch_inf(-q / c, q));
  CHECK(rel(h.mid, double(mid)) < 1e-13);
  CHECK(rel(h.lhs1, h.mid) < 1e-10);
  CHECK(rel(h.lhs2, h.mid) < 1e-10);
  HankelMembers off = hankel_identity(spec, 0, 1);
  CHECK(std::fabs(off.lhs1) < 1e-10);
  CHECK(std::fabs(off.lhs2) < 1e-10);
}

TEST_CASE("dual orthogonality and the corollary") {
  for (auto [k, l] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{-2, -2}}) {
    VerificationReport r = dual_orthogonality(spec, k, l);
    CHECK(r.pass);
    CHECK(r.predicted == (k == l ? 1.0 : 0.0));
  }
  for (auto [k, l] : {std::pair{0, 0}, std::pair{0, 2}, std::pair{-1, -1}}) CHECK(corollary_check(spec, k, l).pass);
  CorollarySides cs = corollary_sides(spec, 0, 2);
  CHECK(cs.lhs == 0.0);
  CHECK(std::fabs(cs.rhs()) < 1e-9);
}

TEST_CASE("Christoffel-Darboux kernel") {
  const double x = 0.5, y = 0.25;
  CdTriple z = cd_kernel(spec, 0, x, y);
  CHECK(z.partial_sum == 1.0);
  CHECK(rel(z.cd_form, 1.0) < 1e-13);
  // explicit partial sum with the brute-force polynomials
  o::ld ref = 0;
  for (int p = 0; p <= 6; ++p)
    ref += std::pow(0.5L, (o::ld)p) * o::poch(0.5L, 0.5L, p) / o::poch(std::pow(0.5L, 1.25L), 0.5L, p) *
           o::laguerre(p, 0.25L, x, 0.5L) * o::laguerre(p, 0.25L, y, 0.5L);
  CdTriple six = cd_kernel(spec, 6, x, y);
  CHECK(rel(six.partial_sum, double(ref)) < 1e-13);
  CHECK(rel(six.cd_form, six.partial_sum) < 1e-11);
  CdTriple far = cd_kernel(spec, 60, x, y);
  CHECK(std::fabs(far.cd_form - far.bessel_limit) < 1e-12);
  // diagonal uses the derivative form
  CdTriple diag = cd_kernel(spec, 5, x, x);
  CHECK(rel(diag.cd_form, diag.partial_sum) < 1e-8);
}

TEST_CASE("perturbed weights 1 + s M_p / K") {
  CHECK(berg_perturbed_gram(spec, 0.0, -1, 2, 2).computed ==
        doctest::Approx(laguerre_gram(spec, 2, 2).computed).epsilon(1e-15));
  CHECK(berg_perturbed_gram(spec, 1.0, -1, 2, 3).pass);
  VerificationReport d = berg_perturbed_gram(spec, -0.5, -1, 1, 1);
  CHECK(d.pass);
  CHECK(rel(d.predicted, laguerre_norm(spec, 1)) < 1e-15);
  CHECK(berg_min_factor(spec, -1.0, -1, 3, 3) >= 0.0);
  // p = 0 is not admissible for alpha = 0.25, c = 2
  CHECK_THROWS_AS(berg_perturbed_gram(spec, 0.5, 0, 1, 1), QError);
}

TEST_CASE("generating functions") {
  Sides a0 = genfun_i(0.0, 0.8, 0.2, 0.5, ctx);
  double ref = double(o::poch_inf(0.5L, 0.5L) * o::poch_inf(0.4L, 0.5L) / o::poch_inf(0.4L, 0.5L));
  CHECK(rel(a0.rhs, ref) < 1e-14);
  CHECK(side_rel(a0) < 1e-12);
  CHECK(side_rel(genfun_i(0.3, 0.8, 0.2, 0.5, ctx)) < 1e-10);

  Sides d0 = genfun_ii(0.0, 0.0, 0.6, ctx);
  CHECK(rel(d0.rhs, double(o::poch_inf(0.5L, 0.5L) / o::poch_inf(0.6L, 0.5L))) < 1e-14);
  CHECK(side_rel(d0) < 1e-12);
  CHECK(side_rel(genfun_ii(0.1, 0.3, 0.6, ctx)) < 1e-10);
  Sides zero = genfun_ii(0.1, 0.6, 0.6, ctx);
  CHECK(zero.rhs == 0.0);
  CHECK(std::fabs(zero.lhs) < 1e-13);

  Sides neg = prop52(0.3, 0.8, 0.4, 0.6, -1, ctx);
  CHECK(neg.rhs == 0.0);
  CHECK(std::fabs(neg.lhs) < 1e-12);
  Sides l0 = prop52(0.3, 0.8, 0.4, 0.6, 0, ctx);
  o::ld r0 = o::poch_inf(0.4L, 0.5L) * o::poch_inf(0.5L, 0.5L) * o::poch_inf(0.5L, 0.5L) /
             o::poch_inf(0.375L, 0.5L);
  CHECK(rel(l0.rhs, double(r0)) < 1e-13);
  CHECK(side_rel(l0) < 1e-10);

  Sides mono = genfun_i_monomial(spec, 1, 2);
  CHECK(mono.rhs == 0.0);
  CHECK(std::fabs(mono.lhs) < 1e-10);
}
