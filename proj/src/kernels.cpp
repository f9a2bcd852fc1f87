#include "qortho/kernels.hpp"

#include <exception>

namespace qortho {

namespace {

template <class T, class Fn>
std::vector<T> run(std::size_t n, const Fn& fn, ExecPolicy policy) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  const long long count = static_cast<long long>(n);
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
      try {
        out[i] = fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    for (long long i = 0; i < count; ++i) {
      try {
        out[i] = fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace

std::vector<double> parallel_map(std::size_t n, const std::function<double(std::size_t)>& fn,
                                 ExecPolicy policy) {
  return run<double>(n, fn, policy);
}

std::vector<VerificationReport> parallel_reports(
    std::size_t n, const std::function<VerificationReport(std::size_t)>& fn, ExecPolicy policy) {
  return run<VerificationReport>(n, fn, policy);
}

std::vector<double> gram_matrix(const MeasureSpec& spec, const std::vector<LatticeFunction>& fs,
                                ExecPolicy policy) {
  const std::size_t m = fs.size();
  std::vector<std::pair<std::size_t, std::size_t>> upper;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) upper.emplace_back(i, j);
  std::vector<double> vals = parallel_map(
      upper.size(),
      [&](std::size_t idx) {
        auto [i, j] = upper[idx];
        return functional_L(spec, fs[i], fs[j]).sum.value;
      },
      policy);
  std::vector<double> g(m * m);
  for (std::size_t idx = 0; idx < upper.size(); ++idx) {
    auto [i, j] = upper[idx];
    g[i * m + j] = g[j * m + i] = vals[idx];
  }
  return g;
}

std::vector<double> lattice_table(const LatticeFunction& f, int k_lo, int k_hi, ExecPolicy policy) {
  if (k_hi < k_lo) return {};
  return parallel_map(static_cast<std::size_t>(k_hi - k_lo + 1),
                      [&](std::size_t i) { return f(k_lo + static_cast<int>(i)); }, policy);
}

}  // namespace qortho
