#include "qortho/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qortho {

int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x) {
  const double pivmin = std::numeric_limits<double>::min() * 1e4;
  int count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    double e2 = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
    d = diag[i] - x - (i == 0 ? 0.0 : e2 / d);
    if (std::fabs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag,
                                            const std::vector<double>& off) {
  const int n = static_cast<int>(diag.size());
  std::vector<double> out(n);
  if (n == 0) return out;

  // Gershgorin bounds
  double lo = diag[0], hi = diag[0];
  for (int i = 0; i < n; ++i) {
    double r = (i > 0 ? std::fabs(off[i - 1]) : 0.0) + (i + 1 < n ? std::fabs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double norm = std::max(std::fabs(lo), std::fabs(hi));

  for (int i = 0; i < n; ++i) {
    double a = lo, b = hi;
    for (int it = 0; it < 2000; ++it) {
      double mid = 0.5 * (a + b);
      if (b - a <= 2.0 * eps * std::max(std::fabs(a), std::fabs(b)) + eps * eps * norm) break;
      if (mid <= a || mid >= b) break;
      if (sturm_count(diag, off, mid) > i)
        b = mid;
      else
        a = mid;
    }
    out[i] = 0.5 * (a + b);
  }
  return out;
}

}  // namespace qortho
