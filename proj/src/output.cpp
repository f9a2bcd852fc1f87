#include "qortho/output.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace qortho {

namespace {

using nlohmann::ordered_json;

ordered_json num(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  j["q"] = cfg.q;
  j["alpha"] = cfg.alpha;
  j["c"] = cfg.c;
  j["t"] = cfg.t_value();
  j["rtol"] = cfg.rtol ? ordered_json(*cfg.rtol) : ordered_json(nullptr);
  j["atol"] = cfg.atol ? ordered_json(*cfg.atol) : ordered_json(nullptr);
  j["max_terms"] = cfg.max_terms;
  j["seed"] = cfg.seed;
  j["r"] = cfg.r_values;
  return j;
}

ordered_json report_json(const std::string& suite, const VerificationReport& r) {
  ordered_json j;
  j["suite"] = suite;
  j["name"] = r.name;
  ordered_json p = ordered_json::object();
  for (const auto& [k, v] : r.params) {
    // lattice indices and degrees read better without a trailing .0
    if (v == std::trunc(v) && std::fabs(v) < 1e15)
      p[k] = static_cast<long long>(v);
    else
      p[k] = num(v);
  }
  j["params"] = p;
  j["computed"] = num(r.computed);
  j["predicted"] = num(r.predicted);
  j["abs_err"] = num(r.abs_err);
  j["rel_err"] = num(r.rel_err);
  j["cancellation"] = num(r.cancellation);
  j["pass"] = r.pass;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string params_string(const ParamList& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ' ';
    out += k + "=" + format_double(v);
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_results(const std::string& suite, const RunConfig& cfg,
                           const std::vector<SuiteResult>& results, OutputFormat format,
                           std::optional<double> wall_time_ms) {
  std::size_t total = 0, passed = 0;
  for (const auto& s : results)
    for (const auto& r : s.reports) {
      ++total;
      passed += r.pass;
    }

  if (format == OutputFormat::Json) {
    ordered_json j;
    j["suite"] = suite;
    j["config"] = config_json(cfg);
    ordered_json reps = ordered_json::array();
    for (const auto& s : results)
      for (const auto& r : s.reports) reps.push_back(report_json(s.suite, r));
    j["reports"] = std::move(reps);
    ordered_json sum;
    sum["total"] = total;
    sum["passed"] = passed;
    if (wall_time_ms) sum["wall_time_ms"] = *wall_time_ms;
    j["summary"] = sum;
    return j.dump(2) + "\n";
  }

  std::ostringstream os;
  if (format == OutputFormat::Csv) {
    os << "suite,name,params,computed,predicted,abs_err,rel_err,cancellation,pass,error\n";
    for (const auto& s : results)
      for (const auto& r : s.reports)
        os << s.suite << ',' << r.name << ',' << csv_escape(params_string(r.params)) << ','
           << format_double(r.computed) << ',' << format_double(r.predicted) << ','
           << format_double(r.abs_err) << ',' << format_double(r.rel_err) << ','
           << format_double(r.cancellation) << ',' << (r.pass ? "true" : "false") << ','
           << csv_escape(r.error) << '\n';
    return os.str();
  }

  for (const auto& s : results) {
    std::size_t np = 0;
    for (const auto& r : s.reports) {
      np += r.pass;
      char line[160];
      std::snprintf(line, sizeof line, "%-4s %-30s abs=%-10.3g rel=%-10.3g ",
                    r.pass ? "ok" : "FAIL", r.name.c_str(), r.abs_err, r.rel_err);
      os << line << params_string(r.params);
      if (!r.error.empty()) os << "  [" << r.error << "]";
      os << '\n';
    }
    os << "# " << s.suite << ": " << np << "/" << s.reports.size() << " passed\n";
  }
  os << "# total: " << passed << "/" << total << " passed";
  if (wall_time_ms) {
    char ms[32];
    std::snprintf(ms, sizeof ms, " in %.1f ms", *wall_time_ms);
    os << ms;
  }
  os << '\n';
  return os.str();
}

}  // namespace qortho
