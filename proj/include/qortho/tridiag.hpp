#pragma once

#include <vector>

namespace qortho {

// Number of eigenvalues of the symmetric tridiagonal matrix strictly below x.
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double x);

// All eigenvalues in ascending order, by bisection on Sturm sequences.
// off[i] couples rows i and i+1.
std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag,
                                            const std::vector<double>& off);

}  // namespace qortho
