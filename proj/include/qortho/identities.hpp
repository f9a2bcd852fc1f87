#pragma once

#include <functional>
#include <utility>

#include "qortho/series.hpp"

namespace qortho {

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
};

// (a q^k, q^{1-k}/a;q)_inf against (-a)^{-k} q^{-k(k-1)/2} (a, q/a;q)_inf
Sides theta_shift(double a, int k, const QContext& ctx);

// (q^{1-p};q)_inf 1phi1(a q^{-p}; q^{1-p}; q, z) against
// (q/a;q)_inf/(q^{p+1}/a;q)_inf (az/q)^p (q^{1+p};q)_inf 1phi1(a; q^{1+p}; q, z q^p)
Sides shift_1phi1(double a, int p, double z, const QContext& ctx);

// 1phi1(a;c;q,z) against (z;q)_inf/(c;q)_inf 1phi1(az/c; z; q, c)
Sides transform_1phi1_heine(double a, double c, double z, const QContext& ctx);

enum class QDiffMode { Hypergeometric, Confluent };

struct Residual {
  double value = 0.0;
  double scale = 0.0;  // |term1| + |term2| + |term3|
};

// second order q-difference equation for 2phi1(a,b;c;q,z), or its confluent
// limit for 1phi1(a;c;q,z) (b is ignored then)
Residual qdiff_residual_2phi1(double a, double b, double c, double z, const QContext& ctx,
                              QDiffMode mode = QDiffMode::Hypergeometric);

// (1-q) sum_n q^n [a q f(a q^{n+1}) + c q f(-c q^{n+1})]
SeriesValue jackson_qintegral(const std::function<double(double)>& f, double a_end,
                              double c_end, const QContext& ctx);

}  // namespace qortho
