#pragma once

#include <complex>
#include <span>
#include <vector>

namespace limitwalk::poly {

using cplx = std::complex<double>;

struct AberthOptions {
  int max_iterations = 1000;
};

/// p(z) and p'(z) for ascending coefficients.
void horner(std::span<const double> coeffs, cplx z, cplx& value, cplx& derivative) noexcept;

/// All roots of the polynomial with ascending real coefficients, by
/// Aberth-Ehrlich simultaneous iteration started from the Newton-polygon
/// radii. Trailing zero coefficients are ignored; leading zero coefficients
/// contribute roots at 0.
std::vector<cplx> aberth_roots(std::span<const double> coeffs, const AberthOptions& options = {});

}  // namespace limitwalk::poly
