#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qortho/context.hpp"
#include "qortho/log_real.hpp"

namespace qortho {

inline constexpr double kCancellationWarning = 1e12;

struct SeriesValue {
  double value = 0.0;
  double abs_err = 0.0;
  int n_terms = 0;
  double cancellation = 1.0;

  bool unreliable() const { return cancellation > kCancellationWarning; }
};

// Sum in log-sign form, for series whose prefactors leave the double range.
struct LogSeries {
  LogReal value;
  double rel_err = 0.0;
  int n_terms = 0;
  double cancellation = 1.0;
};

// Neumaier's variant of Kahan summation; also tracks sum of magnitudes.
class CompensatedSum {
 public:
  void add(double x);
  double sum() const { return sum_ + comp_; }
  double abs_sum() const { return abs_sum_; }
  // multiply the accumulated state by an exact power of two
  void scale(int exp2);
  double cancellation() const;

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_sum_ = 0.0;
};

struct PhiSpec {
  std::vector<double> upper;
  std::vector<double> lower;
  double z = 0.0;
};

// n >= 0 with a == q^{-n} (to 1e-12 relative), if any
std::optional<int> terminating_index(double a, const QContext& ctx);
// m >= 0 with b == q^{-m}; such a lower parameter is a pole
std::optional<int> pole_index(double b, const QContext& ctx);

double qpoch_finite(double a, int n, const QContext& ctx);
LogReal qpoch_finite_log(double a, int n, const QContext& ctx);
SeriesValue qpoch_inf(double a, const QContext& ctx);
LogReal qpoch_inf_log(double a, const QContext& ctx);
SeriesValue qpoch_multi(std::span<const double> params, const QContext& ctx);
LogReal qpoch_multi_log(std::initializer_list<double> params, const QContext& ctx);
// prod (1 + |a| q^j): the size a vanishing product is compared against
double qpoch_inf_scale(double a, const QContext& ctx);

SeriesValue phi_rs(const PhiSpec& spec, const QContext& ctx);

enum class FormPolicy { Auto, Direct, Transformed };

// Sum_j (upper;q)_j/(q;q)_j (b q^j;q)_inf ((-1)^j q^{j(j-1)/2})^power z^j,
// i.e. (b;q)_inf times an r-phi-1 series, which stays finite at b = q^{-m}.
LogSeries regularized_sum(std::span<const double> upper, double b, int power, double z,
                          const QContext& ctx);

// (b;q)_inf 1phi1(a; b; q, z). Auto picks between the direct series and the
// (z;q)_inf 1phi1(az/b; z; q, b) rewriting by cancellation.
LogSeries phi11_regularized(double a, double b, double z, const QContext& ctx,
                            FormPolicy policy = FormPolicy::Auto);

// plain 1phi1 through the regularized sum; throws PoleInLowerParameter at b = q^{-m}
double phi11(double a, double b, double z, const QContext& ctx,
             FormPolicy policy = FormPolicy::Auto);

}  // namespace qortho

#include <functional>

namespace qortho {

struct BilateralSum {
  SeriesValue sum;
  int k_lo = 0;
  int k_hi = 0;
};

// sum over k in Z of term(k). Starts on [-k_start, k_start] and extends each side
// until 5 consecutive terms fall below eps_term times the running sum of |terms|.
// NonSummable if a side reaches |k| = k_cap without settling.
BilateralSum bilateral_sum(const std::function<double(int)>& term, const QContext& ctx,
                           int k_start = 10, int k_cap = 200);

// one-sided version over k = k_first, k_first + step, ...
BilateralSum unilateral_sum(const std::function<double(int)>& term, const QContext& ctx,
                            int k_first, int step = 1, int min_terms = 10, int k_cap = 200);

}  // namespace qortho
