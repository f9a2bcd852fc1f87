// qortho: evaluate functions, run verification suites, tabulate families.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qortho/limits.hpp"
#include "qortho/operator.hpp"
#include "qortho/orthogonality.hpp"
#include "qortho/output.hpp"
#include "qortho/suites.hpp"

using namespace qortho;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// key=value arguments of eval and table
class Args {
 public:
  explicit Args(const std::vector<std::string>& raw) {
    for (const auto& a : raw) {
      auto eq = a.find('=');
      if (eq == std::string::npos || eq == 0)
        throw QError(ErrorKind::InvalidParameter, "expected key=value, got '" + a + "'");
      std::string key = a.substr(0, eq), val = a.substr(eq + 1);
      try {
        std::size_t used = 0;
        double v = std::stod(val, &used);
        if (used != val.size()) throw std::invalid_argument(val);
        vals_[key] = v;
      } catch (const std::logic_error&) {
        throw QError(ErrorKind::InvalidParameter, "'" + key + "' is not a number: " + val);
      }
    }
  }

  double num(const std::string& key) {
    auto it = vals_.find(key);
    if (it == vals_.end()) throw QError(ErrorKind::InvalidParameter, "missing parameter " + key);
    used_.insert(key);
    return it->second;
  }
  double num(const std::string& key, double dflt) { return vals_.count(key) ? num(key) : dflt; }
  int integer(const std::string& key) { return to_int(key, num(key)); }
  int integer(const std::string& key, int dflt) { return vals_.count(key) ? integer(key) : dflt; }

  // unused keys are almost always typos
  void finish() const {
    for (const auto& [k, v] : vals_)
      if (!used_.count(k)) throw QError(ErrorKind::InvalidParameter, "unknown parameter " + k);
  }

 private:
  static int to_int(const std::string& key, double v) {
    if (v != std::floor(v) || std::fabs(v) > 1e6)
      throw QError(ErrorKind::InvalidParameter, key + " must be an integer");
    return static_cast<int>(v);
  }
  std::map<std::string, double> vals_;
  std::set<std::string> used_;
};

// what eval prints: a value with diagnostics, a pair of sides, or a report
struct EvalOut {
  double value = 0.0;
  std::optional<double> abs_err;
  std::optional<int> n_terms;
  double cancellation = 1.0;
  std::optional<Sides> sides;
  std::optional<VerificationReport> report;
};

EvalOut of(double v) { return EvalOut{v}; }
EvalOut of(const SeriesValue& s) { return EvalOut{s.value, s.abs_err, s.n_terms, s.cancellation}; }
EvalOut of(const Sides& s) {
  EvalOut o{s.lhs};
  o.sides = s;
  return o;
}
EvalOut of(const VerificationReport& r) {
  EvalOut o{r.computed};
  o.abs_err = r.abs_err;
  o.cancellation = r.cancellation;
  o.report = r;
  return o;
}

using EvalFn = std::function<EvalOut(Args&, const RunConfig&)>;

const std::map<std::string, EvalFn>& eval_table() {
  static const std::map<std::string, EvalFn> table = [] {
    std::map<std::string, EvalFn> t;
    auto ctx = [](const RunConfig& c) { return c.context(); };
    auto mspec = [](Args& a, const RunConfig& c) {
      return MeasureSpec(a.num("alpha", c.alpha), a.num("c", c.c), c.context());
    };
    auto ospec = [](Args& a, const RunConfig& c) {
      return OperatorSpec(a.num("c", c.c), a.num("t", c.t_value()), c.context());
    };
    auto lspec = [](Args& a, const RunConfig& c) {
      LimitStudyConfig l;
      l.alpha = a.num("alpha", c.alpha);
      l.c = a.num("c", c.c);
      l.k = a.integer("k", 0);
      l.l = a.integer("l", 0);
      l.r_values = c.r_values;
      l.ctx = c.context();
      l.validate();
      return l;
    };
    auto tol = [](const RunConfig& c, double r, double a) { return c.tol(r, a); };

    // q-series
    t["qpoch_inf"] = [=](Args& a, const RunConfig& c) { return of(qpoch_inf(a.num("a"), ctx(c))); };
    t["qpoch_finite"] = [=](Args& a, const RunConfig& c) {
      return of(qpoch_finite(a.num("a"), a.integer("n"), ctx(c)));
    };
    t["phi11"] = [=](Args& a, const RunConfig& c) {
      return of(phi_rs(PhiSpec{{a.num("a")}, {a.num("b")}, a.num("z")}, ctx(c)));
    };
    t["phi21"] = [=](Args& a, const RunConfig& c) {
      return of(phi_rs(PhiSpec{{a.num("a"), a.num("b")}, {a.num("c")}, a.num("z")}, ctx(c)));
    };
    t["theta_shift"] = [=](Args& a, const RunConfig& c) {
      return of(theta_shift(a.num("a"), a.integer("k"), ctx(c)));
    };
    t["shift_1phi1"] = [=](Args& a, const RunConfig& c) {
      return of(shift_1phi1(a.num("a"), a.integer("p"), a.num("z"), ctx(c)));
    };
    t["transform_1phi1_heine"] = [=](Args& a, const RunConfig& c) {
      return of(transform_1phi1_heine(a.num("a"), a.num("c"), a.num("z"), ctx(c)));
    };
    t["qdiff_residual"] = [=](Args& a, const RunConfig& c) {
      Residual r = qdiff_residual_2phi1(a.num("a"), a.num("b", 0.0), a.num("c"), a.num("z"), ctx(c),
                                        a.integer("confluent", 0) ? QDiffMode::Confluent
                                                                  : QDiffMode::Hypergeometric);
      EvalOut o{r.value};
      o.abs_err = r.scale;
      return o;
    };

    // families
    t["q_laguerre"] = [=](Args& a, const RunConfig& c) {
      return of(q_laguerre(a.integer("n"), a.num("alpha", c.alpha), a.num("x"), ctx(c)));
    };
    t["m_func"] = [=](Args& a, const RunConfig& c) {
      MeasureSpec s = mspec(a, c);
      MValue m = m_func_eval(a.integer("p"), s, a.num("x"));
      EvalOut o{m.value};
      o.cancellation = m.cancellation;
      return o;
    };
    t["jackson_j2"] = [=](Args& a, const RunConfig& c) {
      return of(jackson_j2(a.num("alpha", c.alpha), a.num("x"), ctx(c)));
    };
    t["big_qbessel"] = [=](Args& a, const RunConfig& c) {
      return of(big_qbessel(a.num("alpha", c.alpha), a.integer("k"), a.num("c", c.c), a.num("x"),
                            ctx(c)));
    };
    t["big_qjacobi"] = [=](Args& a, const RunConfig& c) {
      BigJacobiParams p(a.num("a"), a.num("b"), a.num("c", c.c), ctx(c));
      return of(big_qjacobi(a.integer("k"), p, a.num("x"), ctx(c)));
    };
    t["big_qjacobi_tilde"] = [=](Args& a, const RunConfig& c) {
      return of(big_qjacobi_tilde(a.integer("k"), a.num("a"), a.num("c", c.c), a.num("x"), ctx(c)));
    };

    // operator
    t["v_sol"] = [=](Args& a, const RunConfig& c) {
      OperatorSpec s = ospec(a, c);
      return of(v_sol(s, a.num("s", s.t), a.integer("k"), a.num("x")));
    };
    t["u_sol"] = [=](Args& a, const RunConfig& c) {
      OperatorSpec s = ospec(a, c);
      return of(u_sol(s, a.integer("k"), a.num("x")));
    };
    t["c_func"] = [=](Args& a, const RunConfig& c) {
      OperatorSpec s = ospec(a, c);
      return of(c_func(s, a.num("s", s.t), a.num("x")));
    };
    t["green_function"] = [=](Args& a, const RunConfig& c) {
      OperatorSpec s = ospec(a, c);
      return of(green_function(s, a.integer("m"), a.integer("n"), a.num("x")));
    };
    t["eta_point"] = [=](Args& a, const RunConfig& c) {
      return of(eta_point(ospec(a, c), a.integer("p")));
    };
    t["xi_point"] = [=](Args& a, const RunConfig& c) { return of(xi_point(ospec(a, c), a.integer("p"))); };
    t["eta_norm"] = [=](Args& a, const RunConfig& c) { return of(eta_norm(ospec(a, c), a.integer("p"))); };
    t["xi_norm"] = [=](Args& a, const RunConfig& c) { return of(xi_norm(ospec(a, c), a.integer("p"))); };
    t["eta_weight"] = [=](Args& a, const RunConfig& c) {
      return of(eta_weight(ospec(a, c), a.integer("p")));
    };
    t["xi_weight"] = [=](Args& a, const RunConfig& c) { return of(xi_weight(ospec(a, c), a.integer("p"))); };
    t["lattice_inner"] = [=](Args& a, const RunConfig& c) {
      return of(lattice_inner(ospec(a, c), a.num("x"), a.num("y")));
    };

    // orthogonality
    t["laguerre_gram"] = [=](Args& a, const RunConfig& c) {
      return of(laguerre_gram(mspec(a, c), a.integer("n"), a.integer("p"), tol(c, 1e-9, 1e-10)));
    };
    t["m_gram"] = [=](Args& a, const RunConfig& c) {
      return of(m_gram(mspec(a, c), a.integer("p"), a.integer("r"), tol(c, 1e-9, 1e-10)));
    };
    t["cross_gram"] = [=](Args& a, const RunConfig& c) {
      return of(cross_gram(mspec(a, c), a.integer("p"), a.integer("n"), tol(c, 1e-9, 1e-10)));
    };
    t["monomial_orth"] = [=](Args& a, const RunConfig& c) {
      return of(monomial_orth(mspec(a, c), a.integer("r"), a.integer("m"), tol(c, 1e-10, 1e-10)));
    };
    t["dual_orthogonality"] = [=](Args& a, const RunConfig& c) {
      return of(dual_orthogonality(mspec(a, c), a.integer("k"), a.integer("l"), tol(c, 1e-7, 1e-7)));
    };
    t["corollary_check"] = [=](Args& a, const RunConfig& c) {
      return of(corollary_check(mspec(a, c), a.integer("k"), a.integer("l"), tol(c, 1e-7, 1e-7)));
    };
    t["berg_perturbed_gram"] = [=](Args& a, const RunConfig& c) {
      return of(berg_perturbed_gram(mspec(a, c), a.num("s"), a.integer("p"), a.integer("n"),
                                    a.integer("m"), tol(c, 1e-9, 1e-10)));
    };
    t["genfun_i"] = [=](Args& a, const RunConfig& c) {
      return of(genfun_i(a.num("a"), a.num("b"), a.num("x"), a.num("z"), ctx(c)));
    };
    t["genfun_ii"] = [=](Args& a, const RunConfig& c) {
      return of(genfun_ii(a.num("d"), a.num("y"), a.num("w"), ctx(c)));
    };
    t["prop52"] = [=](Args& a, const RunConfig& c) {
      return of(prop52(a.num("a"), a.num("b"), a.num("d"), a.num("y"), a.integer("l"), ctx(c)));
    };

    // limits
    t["bqj_orthogonality"] = [=](Args& a, const RunConfig& c) {
      BigJacobiParams p(a.num("a"), a.num("b"), a.num("c", c.c), ctx(c));
      return of(bqj_orthogonality(p, a.integer("k"), a.integer("l"), ctx(c), tol(c, 1e-9, 1e-9)));
    };
    t["ptilde_r"] = [=](Args& a, const RunConfig& c) {
      LimitStudyConfig l = lspec(a, c);
      return of(ptilde_r(l, a.integer("r"), l.k, a.num("x")));
    };
    t["finite_r_orth"] = [=](Args& a, const RunConfig& c) {
      LimitStudyConfig l = lspec(a, c);
      return of(finite_r_report(l, a.integer("r"), tol(c, 1e-9, 1e-9)));
    };
    t["limit_pointwise"] = [=](Args& a, const RunConfig& c) {
      LimitStudyConfig l = lspec(a, c);
      PointwiseLimit p = limit_pointwise(l, a.integer("r"), a.num("x"));
      return of(make_report("limit_pointwise", {}, p.ptilde, p.bessel, 1.0, tol(c, 1e-6, 1e-6)));
    };
    t["eqe_check"] = [=](Args& a, const RunConfig& c) {
      return of(eqe_check(lspec(a, c), tol(c, 1e-9, 1e-9)));
    };
    return t;
  }();
  return table;
}

void print_eval(std::ostream& os, const std::string& name, const EvalOut& o, OutputFormat fmt) {
  if (fmt == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["function"] = name;
    j["value"] = o.value;
    if (o.abs_err) j["abs_err"] = *o.abs_err;
    if (o.n_terms) j["n_terms"] = *o.n_terms;
    j["cancellation"] = o.cancellation;
    if (o.sides) {
      j["lhs"] = o.sides->lhs;
      j["rhs"] = o.sides->rhs;
    }
    if (o.report) {
      j["predicted"] = o.report->predicted;
      j["rel_err"] = o.report->rel_err;
      j["pass"] = o.report->pass;
    }
    os << j.dump(2) << '\n';
    return;
  }
  if (fmt == OutputFormat::Csv) {
    os << "function,value,abs_err,n_terms,cancellation\n"
       << name << ',' << format_double(o.value) << ','
       << (o.abs_err ? format_double(*o.abs_err) : "") << ','
       << (o.n_terms ? std::to_string(*o.n_terms) : "") << ',' << format_double(o.cancellation)
       << '\n';
    return;
  }
  os << name << " = " << format_double(o.value) << '\n';
  if (o.sides) os << "  lhs " << format_double(o.sides->lhs) << "\n  rhs " << format_double(o.sides->rhs) << '\n';
  if (o.report)
    os << "  predicted " << format_double(o.report->predicted) << "\n  rel_err "
       << format_double(o.report->rel_err) << "\n  pass " << (o.report->pass ? "true" : "false")
       << '\n';
  if (o.abs_err) os << "  abs_err " << format_double(*o.abs_err) << '\n';
  if (o.n_terms) os << "  n_terms " << *o.n_terms << '\n';
  os << "  cancellation " << format_double(o.cancellation) << '\n';
}

// table FAMILY: one CSV row per lattice point
std::string make_table(const std::string& family, Args& a, const RunConfig& cfg) {
  std::ostringstream os;
  const QContext ctx = cfg.context();
  auto krange = [&](int lo, int hi) {
    std::pair<int, int> r{a.integer("k_min", lo), a.integer("k_max", hi)};
    if (r.first > r.second) throw QError(ErrorKind::InvalidParameter, "k_min exceeds k_max");
    return r;
  };
  if (family == "laguerre" || family == "m_func") {
    MeasureSpec spec(cfg.alpha, cfg.c, ctx);
    const bool lag = family == "laguerre";
    const int idx = lag ? a.integer("n") : a.integer("p");
    auto [lo, hi] = krange(-5, 5);
    a.finish();
    LatticeFunction f = lag ? laguerre_on_lattice(spec, idx) : m_on_lattice(spec, idx);
    std::vector<double> vals = lattice_table(f, lo, hi, cfg.policy);
    os << "k,x," << (lag ? "L_n" : "M_p") << ",weight\n";
    for (int k = lo; k <= hi; ++k)
      os << k << ',' << format_double(cfg.c * ctx.pown(k)) << ',' << format_double(vals[k - lo])
         << ',' << format_double(weight(spec, k)) << '\n';
  } else if (family == "big_qbessel") {
    const int kk = a.integer("k", 0);
    auto [lo, hi] = krange(-5, 5);
    a.finish();
    os << "p,x,J\n";
    for (int p = lo; p <= hi; ++p) {
      double x = -cfg.c * ctx.pow(p - cfg.alpha - 1.0);
      os << p << ',' << format_double(x) << ','
         << format_double(big_qbessel(cfg.alpha, kk, cfg.c, x, ctx)) << '\n';
    }
  } else if (family == "v_sol" || family == "u_sol") {
    OperatorSpec op(cfg.c, cfg.t_value(), ctx);
    const double x = a.num("x");
    const double s = a.num("s", op.t);
    auto [lo, hi] = krange(-10, 10);
    a.finish();
    os << "k," << family << '\n';
    for (int k = lo; k <= hi; ++k)
      os << k << ','
         << format_double(family == "v_sol" ? v_sol(op, s, k, x) : u_sol(op, k, x)) << '\n';
  } else if (family == "spectrum") {
    OperatorSpec op(cfg.c, cfg.t_value(), ctx);
    const int lo = a.integer("p_min", -3), hi = a.integer("p_max", 5);
    a.finish();
    os << "branch,p,x,weight\n";
    for (const SpectralPoint& sp : spectrum(op, lo, hi)) {
      const bool eta = sp.branch == Branch::Eta;
      os << (eta ? "eta" : "xi") << ',' << sp.p << ',' << format_double(sp.x) << ','
         << format_double(eta ? eta_weight(op, sp.p) : xi_weight(op, sp.p)) << '\n';
    }
  } else {
    throw QError(ErrorKind::UnknownFunction, "unknown family '" + family + "'");
  }
  return os.str();
}

void emit(const std::string& text, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_file, std::ios::binary);
  if (!f) throw QError(ErrorKind::InvalidParameter, "cannot open " + out_file);
  f << text;
}

bool usage_error(ErrorKind k) {
  return k == ErrorKind::InvalidParameter || k == ErrorKind::UnknownFunction ||
         k == ErrorKind::DegenerateParameter;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-orthogonal families on the lattice c q^k: evaluation and verification"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  RunConfig cfg;
  std::optional<double> t, rtol, atol;
  std::optional<int> max_terms;
  std::string output = "text", out_file, r_list;
  bool timing = false, serial = false;

  app.add_option("--q", cfg.q, "base q in (0,1)")->capture_default_str();
  app.add_option("--alpha", cfg.alpha, "alpha > -1")->capture_default_str();
  app.add_option("--c", cfg.c, "lattice scale c > 0")->capture_default_str();
  app.add_option("--t", t, "operator parameter t (default q^{-alpha/2})");
  app.add_option("--rtol", rtol, "relative tolerance override");
  app.add_option("--atol", atol, "absolute tolerance override");
  app.add_option("--max-terms", max_terms, "series term cap (overrides QORTHO_MAX_TERMS)");
  app.add_option("--output", output, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--out", out_file, "write to FILE instead of stdout");
  app.add_option("--seed", cfg.seed, "seed for randomized grids")->capture_default_str();
  app.add_option("--r", r_list, "comma separated r values for the limits suite");
  app.add_flag("--timing", timing, "include wall time in the report");
  app.add_flag("--serial", serial, "run checks on one thread");

  std::string eval_name;
  std::vector<std::string> eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate one function: eval NAME key=value ...");
  eval->add_option("name", eval_name)->required();
  eval->add_option("params", eval_args);

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite)->required();

  std::string family;
  std::vector<std::string> table_args;
  auto* table = app.add_subcommand("table", "tabulate a family as CSV: table FAMILY key=value ...");
  table->add_option("family", family)->required();
  table->add_option("params", table_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (const char* env = std::getenv("QORTHO_MAX_TERMS")) {
      try {
        cfg.max_terms = std::stoi(env);
      } catch (const std::logic_error&) {
        throw QError(ErrorKind::InvalidParameter, "QORTHO_MAX_TERMS is not an integer");
      }
    }
    if (max_terms) cfg.max_terms = *max_terms;
    cfg.t = t;
    cfg.rtol = rtol;
    cfg.atol = atol;
    if ((rtol && !(*rtol >= 0.0)) || (atol && !(*atol >= 0.0)))
      throw QError(ErrorKind::InvalidParameter, "tolerances must be nonnegative");
    if (serial) cfg.policy = ExecPolicy::Serial;
    if (!r_list.empty()) {
      cfg.r_values.clear();
      std::stringstream ss(r_list);
      for (std::string item; std::getline(ss, item, ',');) {
        try {
          cfg.r_values.push_back(std::stoi(item));
        } catch (const std::logic_error&) {
          throw QError(ErrorKind::InvalidParameter, "--r expects integers, got '" + item + "'");
        }
      }
      if (!std::is_sorted(cfg.r_values.begin(), cfg.r_values.end()) || cfg.r_values.front() < 0)
        throw QError(ErrorKind::InvalidParameter, "--r values must be ascending and nonnegative");
    }
    // validates q, alpha, c up front so bad input is a usage error, not a failed report
    MeasureSpec(cfg.alpha, cfg.c, cfg.context());
    OperatorSpec(cfg.c, cfg.t_value(), cfg.context());

    const OutputFormat fmt = output == "json"  ? OutputFormat::Json
                             : output == "csv" ? OutputFormat::Csv
                                               : OutputFormat::Text;

    if (*eval) {
      auto it = eval_table().find(eval_name);
      if (it == eval_table().end())
        throw QError(ErrorKind::UnknownFunction, "unknown function '" + eval_name + "'");
      Args args(eval_args);
      EvalOut o = it->second(args, cfg);
      args.finish();
      std::ostringstream os;
      print_eval(os, eval_name, o, fmt);
      emit(os.str(), out_file);
      return o.report && !o.report->pass ? kExitFail : 0;
    }

    if (*verify) {
      if (!is_suite(suite)) throw QError(ErrorKind::UnknownFunction, "unknown suite '" + suite + "'");
      auto t0 = std::chrono::steady_clock::now();
      std::vector<SuiteResult> res = run_suite(suite, cfg);
      std::optional<double> ms;
      if (timing)
        ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      emit(format_results(suite, cfg, res, fmt, ms), out_file);
      bool ok = std::all_of(res.begin(), res.end(), [](const auto& s) { return s.all_pass(); });
      return ok ? 0 : kExitFail;
    }

    Args args(table_args);
    emit(make_table(family, args, cfg), out_file);
    return 0;
  } catch (const QError& e) {
    std::cerr << "qortho: " << e.what() << '\n';
    return usage_error(e.kind()) ? kExitUsage : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "qortho: " << e.what() << '\n';
    return kExitFail;
  }
}
