#pragma once
// Brute-force references for the unit tests. Long double, no stopping rules,
// nothing shared with the library beyond the definitions themselves.
#include <cmath>
#include <vector>

namespace oracle {

using ld = long double;

inline ld poch(ld a, ld q, int n) {
  ld p = 1;
  for (int j = 0; j < n; ++j) p *= 1 - a * std::pow(q, (ld)j);
  return p;
}

inline ld poch_inf(ld a, ld q) { return poch(a, q, 3000); }

// r phi s with the (-1)^j q^{j(j-1)/2} factor to the power 1+s-r, summed to a fixed length
inline ld phi(const std::vector<ld>& up, const std::vector<ld>& lo, ld q, ld z, int terms = 400) {
  ld sum = 0, term = 1;
  const int extra = 1 + (int)lo.size() - (int)up.size();
  for (int j = 0; j < terms; ++j) {
    sum += term;
    ld r = z / (1 - std::pow(q, (ld)j + 1));
    for (ld a : up) r *= 1 - a * std::pow(q, (ld)j);
    for (ld b : lo) r /= 1 - b * std::pow(q, (ld)j);
    for (int e = 0; e < extra; ++e) r *= -std::pow(q, (ld)j);
    term *= r;
    if (term == 0) break;
  }
  return sum;
}

// L_n^{(alpha)}(x;q) as the explicit finite sum
inline ld laguerre(int n, ld alpha, ld x, ld q) {
  ld qa1 = std::pow(q, alpha + 1), sum = 0;
  for (int j = 0; j <= n; ++j)
    sum += poch(std::pow(q, (ld)-n), q, j) / (poch(qa1, q, j) * poch(q, q, j)) *
           std::pow(q, (ld)j * (j - 1) / 2) * std::pow(x * std::pow(q, n + alpha + 1), (ld)j);
  return poch(qa1, q, n) / poch(q, q, n) * sum;
}

}  // namespace oracle
