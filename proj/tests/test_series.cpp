#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "qortho/identities.hpp"
#include "qortho/series.hpp"

using namespace qortho;
namespace o = oracle;

namespace {
const QContext ctx(0.5);
double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }
double side_rel(const Sides& s) { return std::fabs(s.lhs - s.rhs) / std::max(std::fabs(s.lhs), std::fabs(s.rhs)); }
}  // namespace

TEST_CASE("finite q-Pochhammer") {
  CHECK(qpoch_finite(0.7, 0, ctx) == 1.0);
  CHECK(qpoch_finite(1.0, 3, ctx) == 0.0);
  CHECK(qpoch_finite(0.3, 2, ctx) == doctest::Approx(0.595).epsilon(1e-15));
}

TEST_CASE("infinite q-Pochhammer") {
  CHECK(qpoch_inf(0.0, ctx).value == 1.0);
  CHECK(rel(qpoch_inf(0.5, ctx).value, 0.2887880950866024) < 1e-14);
  SeriesValue neg = qpoch_inf(-2.0, ctx);
  CHECK(neg.value > 3.0);
  CHECK(rel(neg.value, double(o::poch_inf(-2.0L, 0.5L))) < 1e-14);
  CHECK(qpoch_inf_log(-40.0, ctx).value() == doctest::Approx(double(o::poch_inf(-40.0L, 0.5L))).epsilon(1e-13));

  const double ps[] = {0.3, -0.3};
  CHECK(rel(qpoch_multi(ps, ctx).value, qpoch_inf(0.3, ctx).value * qpoch_inf(-0.3, ctx).value) < 1e-15);
  CHECK(qpoch_multi({}, ctx).value == 1.0);
}

TEST_CASE("basic hypergeometric series against brute force") {
  CHECK(phi_rs(PhiSpec{{0.2}, {0.6}, 0.0}, ctx).value == 1.0);
  CHECK(phi_rs(PhiSpec{{1.0, 0.4}, {0.3}, 0.7}, ctx).value == 1.0);
  CHECK(rel(phi_rs(PhiSpec{{0.2}, {0.6}, 0.3}, ctx).value, double(o::phi({0.2L}, {0.6L}, 0.5L, 0.3L))) < 1e-14);
  CHECK(rel(phi_rs(PhiSpec{{0.2, -0.7}, {0.45}, 0.8}, ctx).value,
            double(o::phi({0.2L, -0.7L}, {0.45L}, 0.5L, 0.8L, 2000))) < 1e-13);
  CHECK(rel(phi_rs(PhiSpec{{}, {0.3}, -5.0}, ctx).value, double(o::phi({}, {0.3L}, 0.5L, -5.0L))) < 1e-12);
  // terminating: exact finite sum
  PhiSpec term{{ctx.pown(-4), 0.3}, {0.7}, 1.3};
  CHECK(rel(phi_rs(term, ctx).value, double(o::phi({16.0L, 0.3L}, {0.7L}, 0.5L, 1.3L, 5))) < 1e-14);
}

TEST_CASE("regularized 1phi1 stays finite at a pole of the lower parameter") {
  // (q^{-2};q)_inf 1phi1(a; q^{-2}; q, z): only terms j >= 3 survive
  const double a = 0.4, z = 0.3, b = 4.0;
  o::ld ref = 0;
  for (int j = 3; j < 200; ++j)
    ref += o::poch(a, 0.5L, j) / o::poch(0.5L, 0.5L, j) * o::poch_inf(b * std::pow(0.5L, j), 0.5L) *
           std::pow(-1.0L, j) * std::pow(0.5L, (o::ld)j * (j - 1) / 2) * std::pow((o::ld)z, j);
  CHECK(rel(phi11_regularized(a, b, z, ctx).value.value(), double(ref)) < 1e-12);
  CHECK_THROWS_AS(phi11(a, b, z, ctx), QError);
}

TEST_CASE("bilateral sum against the triple product") {
  // sum_k q^{k^2} z^k = (q^2, -q z, -q/z; q^2)_inf
  for (double z : {0.3, 1.0, -2.5}) {
    BilateralSum s = bilateral_sum([z](int k) { return std::pow(0.5, double(k) * k) * std::pow(z, k); }, ctx);
    double ref = double(o::poch_inf(0.25L, 0.25L) * o::poch_inf(-0.5L * z, 0.25L) * o::poch_inf(-0.5L / z, 0.25L));
    CHECK(rel(s.sum.value, ref) < 1e-14);
    CHECK(s.k_lo < 0);
    CHECK(s.k_hi > 0);
  }
  CHECK_THROWS_AS(bilateral_sum([](int) { return 1.0; }, ctx), QError);
}

TEST_CASE("identities") {
  CHECK(side_rel(theta_shift(-1.3, 3, ctx)) < 1e-12);
  CHECK(side_rel(theta_shift(0.4, -2, ctx)) < 1e-12);
  Sides same = theta_shift(0.7, 0, ctx);
  CHECK(same.lhs == same.rhs);
  CHECK(side_rel(shift_1phi1(0.3, 2, 0.4, ctx)) < 1e-12);
  CHECK(side_rel(shift_1phi1(0.3, -2, 0.4, ctx)) < 1e-12);
  CHECK(side_rel(shift_1phi1(0.3, 0, 0.4, ctx)) < 1e-15);
  CHECK(side_rel(transform_1phi1_heine(0.2, 0.7, 0.3, ctx)) < 1e-12);
  CHECK(side_rel(transform_1phi1_heine(0.0, 0.7, 0.3, ctx)) < 1e-12);
  CHECK(side_rel(transform_1phi1_heine(0.2, 0.7, 0.7, ctx)) < 1e-15);

  Residual r = qdiff_residual_2phi1(0.2, 0.3, 0.0, 0.1, ctx);
  CHECK(std::fabs(r.value) < 1e-14 * r.scale);
  r = qdiff_residual_2phi1(0.4, 0.0, 0.6, 0.2, ctx, QDiffMode::Confluent);
  CHECK(std::fabs(r.value) < 1e-14 * r.scale);
  r = qdiff_residual_2phi1(0.4, 0.0, 0.6, 0.0, ctx, QDiffMode::Confluent);
  CHECK(std::fabs(r.value) < 1e-15 * std::max(r.scale, 1.0));
}

TEST_CASE("Jackson q-integral") {
  CHECK(jackson_qintegral([](double) { return 0.0; }, 1, 1, ctx).value == 0.0);
  CHECK(jackson_qintegral([](double) { return 1.0; }, 1, 1, ctx).value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::fabs(jackson_qintegral([](double x) { return x; }, 1, 1, ctx).value) < 1e-16);
  // x^2 over [-c, a]: (1-q)(a^3 + c^3) q^3/(1-q^3)
  double v = jackson_qintegral([](double x) { return x * x; }, 2.0, 0.5, ctx).value;
  CHECK(rel(v, 0.5 * (8.0 + 0.125) * 0.125 / (1 - 0.125)) < 1e-15);
}
