#include <doctest.h>

#include <cstring>

#include "qortho/kernels.hpp"
#include "qortho/output.hpp"
#include "qortho/suites.hpp"

using namespace qortho;

namespace {
bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }
}  // namespace

TEST_CASE("serial and parallel kernels are bitwise identical") {
  MeasureSpec spec(0.25, 2.0, QContext(0.5));
  std::vector<LatticeFunction> fs;
  for (int n = 0; n < 6; ++n) fs.push_back(laguerre_on_lattice(spec, n));
  for (int p = -2; p <= 2; ++p) fs.push_back(m_on_lattice(spec, p));
  std::vector<double> s = gram_matrix(spec, fs, ExecPolicy::Serial);
  std::vector<double> p = gram_matrix(spec, fs, ExecPolicy::Parallel);
  REQUIRE(s.size() == p.size());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(same_bits(s[i], p[i]));
  // symmetric by construction
  CHECK(same_bits(s[1], s[fs.size()]));

  std::vector<double> ts = lattice_table(fs[3], -20, 20, ExecPolicy::Serial);
  std::vector<double> tp = lattice_table(fs[3], -20, 20, ExecPolicy::Parallel);
  for (std::size_t i = 0; i < ts.size(); ++i) CHECK(same_bits(ts[i], tp[i]));
}

TEST_CASE("the lowest failing index is the one reported") {
  auto fn = [](std::size_t i) -> double {
    if (i == 17 || i == 40) throw QError(ErrorKind::NonSummable, "index " + std::to_string(i));
    return double(i);
  };
  for (ExecPolicy pol : {ExecPolicy::Serial, ExecPolicy::Parallel}) {
    try {
      parallel_map(64, fn, pol);
      FAIL("expected an exception");
    } catch (const QError& e) {
      CHECK(std::string(e.what()).find("index 17") != std::string::npos);
    }
  }
}

TEST_CASE("suite reports do not depend on the execution policy") {
  RunConfig a, b;
  b.policy = ExecPolicy::Serial;
  for (const char* name : {"qseries-identities", "theorem41", "genfun"}) {
    std::string ja = format_results(name, a, run_suite(name, a), OutputFormat::Json);
    std::string jb = format_results(name, b, run_suite(name, b), OutputFormat::Json);
    CHECK(ja == jb);
  }
}

TEST_CASE("seeded grids") {
  RunConfig a, b;
  b.seed = 2;
  auto ra = run_suite("qseries-identities", a)[0].reports;
  auto rb = run_suite("qseries-identities", b)[0].reports;
  REQUIRE(ra.size() == rb.size());
  CHECK(ra[0].params != rb[0].params);
  CHECK(ra[0].params == run_suite("qseries-identities", a)[0].reports[0].params);
  CHECK_THROWS_AS(run_suite("no-such-suite", a), QError);
}

TEST_CASE("report rule") {
  VerificationReport r = make_report("x", {}, 1.0 + 1e-12, 1.0, 1.0, Tolerances{1e-10, 0.0});
  CHECK(r.pass);
  r = make_report("x", {}, 1e-12, 0.0, 1.0, Tolerances{1e-10, 1e-11});
  CHECK(r.pass);
  r = make_report("x", {}, 1e-10, 0.0, 1.0, Tolerances{1e-3, 1e-11});
  CHECK_FALSE(r.pass);
  r = make_report("x", {}, NAN, 1.0, 1.0, Tolerances{1.0, 1.0});
  CHECK_FALSE(r.pass);
}
