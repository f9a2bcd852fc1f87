#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "qortho/operator.hpp"
#include "qortho/tridiag.hpp"

using namespace qortho;
namespace o = oracle;

namespace {
const QContext ctx(0.5);
const double t0 = std::pow(0.5, -0.125);
double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }
}  // namespace

TEST_CASE("Jacobi coefficients") {
  OperatorSpec op(1.0, 1.0, ctx);
  auto [a0, b0] = coeffs(op, 0);
  CHECK(rel(a0, std::sqrt(2.0) / std::sqrt(0.5)) < 1e-15);
  CHECK(rel(b0, 2.0) < 1e-15);
  OperatorSpec neg(2.0, -1.0, ctx);
  CHECK(rel(coeffs(neg, 3).second, -2.0 / std::sqrt(2.0) * 8.0) < 1e-15);
  CHECK_THROWS_AS(OperatorSpec(2.0, 0.5, ctx), QError);
}

TEST_CASE("V solutions") {
  OperatorSpec op(2.0, t0, ctx);
  const double s = t0, x = 0.7, c = 2.0, q = 0.5;
  o::ld qs2 = q * (o::ld)s * s;
  o::ld ref = o::poch_inf(qs2, q) * std::sqrt(o::poch_inf(-q / c, q)) *
              o::phi({-s * std::sqrt((o::ld)c) / x}, {qs2}, q, x * s * q * std::sqrt((o::ld)c));
  CHECK(rel(v_sol(op, s, 0, x), double(ref)) < 1e-13);

  // eigenvector property at eta_0
  const double e0 = eta_point(op, 0);
  LatticeVector v = v_vector(op, 1.0 / t0, e0);
  for (int k = -8; k <= 8; ++k) {
    auto [ak, bk] = coeffs(op, k);
    double scale = std::fabs(ak * v(k + 1)) + std::fabs(bk * v(k)) + std::fabs(e0 * v(k));
    CHECK(std::fabs(apply_L(op, v, k) - e0 * v(k)) < 1e-13 * scale);
  }
  CHECK_THROWS_AS(v_sol(op, std::pow(0.5, -1.0), 0, x), QError);
}

TEST_CASE("U: direct series and connection formula agree where both exist") {
  OperatorSpec op(2.0, t0, ctx);
  for (int k : {1, 0, -3}) {
    double direct = u_sol_direct_log(op, k, 1.1).value();
    Residual r = connection_residual(op, 1.1, k);
    CHECK(std::fabs(r.value) < 1e-12 * r.scale);
    CHECK(rel(u_sol(op, k, 1.1), direct) < 1e-13);
  }
  // l2 on the left
  TailReport tr = ell2_tail_check(op, Solution::U, 0.9, Direction::MinusInf, 5);
  CHECK(tr.cauchy_decreasing);
}

TEST_CASE("c-function zeros at the spectrum") {
  OperatorSpec op(2.0, t0, ctx);
  for (int p : {-1, 0, 2}) CHECK(std::fabs(c_func(op, t0, xi_point(op, p))) < 1e-12);
  for (int p : {0, 1}) CHECK(std::fabs(c_func(op, t0, eta_point(op, p))) < 1e-12);
  o::ld sc = std::sqrt(2.0L), s = 1.3L, x = 0.7L;
  o::ld ref = o::poch_inf(-sc / (x * s), 0.5L) * o::poch_inf(0.5L * s / (x * sc), 0.5L) *
              o::poch_inf(x * sc / s, 0.5L);
  OperatorSpec op2(2.0, 1.3, ctx);
  CHECK(rel(c_func(op2, 1.3, 0.7), double(ref)) < 1e-13);
}

TEST_CASE("spectrum and norms") {
  OperatorSpec op(2.0, t0, ctx);
  CHECK(rel(eta_point(op, 0), -std::sqrt(2.0) * std::pow(0.5, 0.125)) < 1e-15);
  CHECK(rel(xi_point(op, 0), std::pow(0.5, -0.125) / std::sqrt(2.0)) < 1e-15);
  for (const SpectralPoint& sp : spectrum(op, -3, 5))
    CHECK((sp.branch == Branch::Eta ? sp.x < 0 : sp.x > 0));

  const o::ld q = 0.5L, c = 2.0L, t2 = (o::ld)t0 * t0;
  for (int p = 0; p <= 2; ++p) {
    o::ld ref = t2 / c * std::pow(q, (o::ld)-p) * o::poch(q, q, p) / o::poch(q / t2, q, p) *
                o::poch_inf(q, q) * o::poch_inf(-c / t2, q) * o::poch_inf(-q * t2 / c, q) *
                o::poch_inf(q / t2, q);
    CHECK(rel(eta_norm(op, p), double(ref)) < 1e-13);
    CHECK(rel(lattice_inner(op, eta_point(op, p), eta_point(op, p)).value, double(ref)) < 1e-10);
    CHECK(rel(eta_weight(op, p) * eta_norm(op, p), 1.0) < 1e-13);
  }
  for (int p = -1; p <= 1; ++p) {
    o::ld ref = std::pow(q, (o::ld)-p) * o::poch_inf(-std::pow(q, (o::ld)p + 1) / c, q) *
                o::poch_inf(q, q) * o::poch_inf(q, q) * o::poch_inf(-c / t2, q) *
                o::poch_inf(-q * t2 / c, q) / o::poch_inf(-std::pow(q, (o::ld)p + 1) * t2 / c, q);
    CHECK(rel(xi_norm(op, p), double(ref)) < 1e-13);
    CHECK(rel(lattice_inner(op, xi_point(op, p), xi_point(op, p)).value, double(ref)) < 1e-10);
  }
  // eigenvectors for different points are orthogonal
  double cross = lattice_inner(op, eta_point(op, 0), xi_point(op, 0)).value;
  CHECK(std::fabs(cross) < 1e-10 * std::sqrt(eta_norm(op, 0) * xi_norm(op, 0)));
}

TEST_CASE("Wronskians and the Green function") {
  OperatorSpec op(2.0, t0, ctx);
  const double x = 0.9;
  LatticeVector u = v_vector(op, t0, x), v = v_vector(op, 1.0 / t0, x);
  WronskianForms w = wronskian_closed_forms(op, x);
  for (int k : {-3, 0, 5}) CHECK(rel(wronskian(op, u, v, k), w.w_vv) < 1e-10);
  CHECK(rel(w.w_vv, -0.2137804637641451) < 1e-13);
  LatticeVector uu = u_vector(op, x);
  CHECK(rel(wronskian(op, uu, u, 0), w.w_uv) < 1e-10);
  CHECK(rel(wronskian(op, uu, v, 0), w.w_uv_inv) < 1e-10);

  const double mid = 0.5 * (xi_point(op, 0) + xi_point(op, 1));
  CHECK(green_function(op, 2, -1, mid) == doctest::Approx(green_function(op, -1, 2, mid)).epsilon(1e-14));
  CHECK(green_resolvent_defect(op, mid, -5, 5) < 1e-12);
  CHECK_THROWS_AS(green_function(op, 0, 0, xi_point(op, 0)), QError);
}

TEST_CASE("tridiagonal eigenvalues") {
  std::vector<double> ev = tridiagonal_eigenvalues({2, 2, 2}, {1, 1});
  REQUIRE(ev.size() == 3);
  CHECK(ev[0] == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ev[2] == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(sturm_count({2, 2, 2}, {1, 1}, 2.5) == 2);

  // truncations approach the discrete spectrum, slowly
  OperatorSpec op(2.0, t0, ctx);
  const double target = xi_point(op, 0);
  double prev = INFINITY;
  for (int K : {10, 20, 30}) {
    double d = INFINITY;
    for (double e : finite_section_eigenvalues(op, K)) d = std::min(d, std::fabs(e - target));
    CHECK(d <= prev);
    prev = d;
  }
}
