#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qortho/orthogonality.hpp"
#include "qortho/report.hpp"

namespace qortho {

// Parallel loops run each index independently and never reduce across threads,
// so Serial and Parallel give bitwise identical results.
enum class ExecPolicy { Serial, Parallel };

// out[i] = fn(i). An exception from any index is rethrown after the loop; the
// lowest failing index wins so the outcome does not depend on scheduling.
std::vector<double> parallel_map(std::size_t n, const std::function<double(std::size_t)>& fn,
                                 ExecPolicy policy);
std::vector<VerificationReport> parallel_reports(
    std::size_t n, const std::function<VerificationReport(std::size_t)>& fn, ExecPolicy policy);

// row-major Gram matrix of fs under functional_L; only i <= j is summed
std::vector<double> gram_matrix(const MeasureSpec& spec, const std::vector<LatticeFunction>& fs,
                                ExecPolicy policy);

// f(k) for k = k_lo..k_hi
std::vector<double> lattice_table(const LatticeFunction& f, int k_lo, int k_hi, ExecPolicy policy);

}  // namespace qortho
