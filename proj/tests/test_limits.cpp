#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "qortho/limits.hpp"

using namespace qortho;
namespace o = oracle;

namespace {
const QContext ctx(0.5);
double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }
LimitStudyConfig config(int k, int l) {
  LimitStudyConfig c;
  c.k = k;
  c.l = l;
  c.ctx = ctx;
  return c;
}
}  // namespace

TEST_CASE("big q-Jacobi orthogonality on the q-integral") {
  BigJacobiParams b0(std::pow(0.5, 0.25), 0.0, 2.0, ctx);
  CHECK(bqj_orthogonality(b0, 0, 1, ctx).pass);
  VerificationReport d0 = bqj_orthogonality(b0, 0, 0, ctx);
  CHECK(d0.pass);
  CHECK(rel(d0.predicted, bqj_norm(b0, 0, ctx)) < 1e-15);
  CHECK(bqj_orthogonality(b0, 2, 2, ctx).rel_err < 1e-9);
  BigJacobiParams gen(0.7, 0.3, 1.5, ctx);
  CHECK(bqj_orthogonality(gen, 3, 3, ctx).rel_err < 1e-9);
  CHECK(bqj_orthogonality(gen, 1, 4, ctx).pass);
}

TEST_CASE("finite-r orthogonality") {
  Sides off = finite_r_orth(config(0, 1), 8);
  CHECK(off.rhs == 0.0);
  CHECK(std::fabs(off.lhs) < 1e-10 * finite_r_orth(config(0, 0), 8).rhs);
  // r = k: P~_0 = 1 and the lhs is a bare weight sum
  Sides bare = finite_r_orth(config(2, 2), 2);
  CHECK(rel(bare.lhs, bare.rhs) < 1e-11);
  CHECK(ptilde_r(config(2, 2), 2, 2, 0.37) == 1.0);
  Sides six = finite_r_orth(config(0, 0), 6);
  CHECK(rel(six.lhs, six.rhs) < 1e-9);
  CHECK(finite_r_report(config(1, 1), 20).pass);
}

TEST_CASE("pointwise limit and its majorant") {
  LimitStudyConfig c = config(0, 0);
  PointwiseLimit pl = limit_pointwise(c, 30, 1.0);
  CHECK(std::fabs(pl.ptilde - pl.bessel) < 1e-6);
  CHECK(std::fabs(pl.ptilde) < pl.bound);
  CHECK(std::fabs(pl.bessel) < pl.bound);
  PointwiseLimit zero = limit_pointwise(c, 30, 0.0);
  CHECK(std::fabs(zero.ptilde - zero.bessel) < 1e-6);
  CHECK(std::fabs(zero.bessel) < zero.bound);
  // the approach is geometric in r
  // (x = 1 is exact at every r: both series stop after one term)
  const double b = limit_pointwise(c, 30, 0.3).bessel;
  double d10 = std::fabs(limit_pointwise(c, 10, 0.3).ptilde - b);
  double d20 = std::fabs(limit_pointwise(c, 20, 0.3).ptilde - b);
  CHECK(d20 < d10);
}

TEST_CASE("lattice values: four forms agree") {
  LatticeValues v = lattice_values(config(0, 0), 10, -2);
  CHECK(rel(v.ptilde_2phi2, v.ptilde_direct) < 1e-9);
  CHECK(rel(v.bessel_1phi2, v.bessel_direct) < 1e-9);
  CHECK(std::fabs(v.ptilde_2phi2) < v.bound);
  LatticeValues edge = lattice_values(config(1, 1), 10, -1);
  CHECK(rel(edge.ptilde_2phi2, edge.ptilde_direct) < 1e-12);
  CHECK_THROWS_AS(lattice_values(config(1, 1), 10, 0), QError);
}

TEST_CASE("limit orthogonality") {
  EqeSides s = eqe_sides(config(0, 0));
  const o::ld q = 0.5L, c = 2.0L, a = 0.25L;
  o::ld rhs = std::pow(o::poch_inf(q, q) / o::poch_inf(std::pow(q, a + 1), q), 2) *
              o::poch_inf(-c * std::pow(q, -a - 1), q) * o::poch_inf(-std::pow(q, a + 2) / c, q) *
              o::poch_inf(-q / c, q) / (o::poch_inf(-c, q) * o::poch_inf(-q / c, q));
  CHECK(rel(s.rhs, double(rhs)) < 1e-13);
  CHECK(rel(s.lhs(), s.rhs) < 1e-9);
  CHECK(eqe_check(config(0, 1)).pass);
  CHECK(eqe_vs_corollary(config(1, 1)).pass);
}

TEST_CASE("convergence study") {
  LimitStudyConfig c = config(0, 0);
  c.r_values = {10, 20, 30};
  ConvergenceStudy st = convergence_study(c);
  REQUIRE(st.rows.size() == 3);
  CHECK(st.rows[1].total < st.rows[0].total);
  CHECK(st.rows[2].total < st.rows[1].total);
  CHECK(st.non_increasing);
  CHECK(st.first_sum_slope <= std::log(0.5) + 0.01);
  CHECK(st.fourth_super_geometric);
}

TEST_CASE("limit config validation") {
  LimitStudyConfig c = config(3, 0);
  c.r_values = {2, 10};
  CHECK_THROWS_AS(c.validate(), QError);
  c.r_values = {20, 10};
  CHECK_THROWS_AS(c.validate(), QError);
}
