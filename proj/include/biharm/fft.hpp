#ifndef BIHARM_FFT_HPP
#define BIHARM_FFT_HPP

#include <complex>
#include <vector>

#include "biharm/grid.hpp"

namespace biharm::fft {

/// Semi-discrete Fourier transform pair.
///
/// forward:  F_k = dx^d * sum_x f(x) e^{-i xi_k . x},  x on the centered lattice
/// inverse:  f(x) = L^-d  * sum_k F_k e^{+i xi_k . x}
///
/// The pair is an exact inverse and satisfies the discrete Plancherel identity
/// sum_x |f|^2 dx^d = L^-d sum_k |F_k|^2.
void forward(const GridSpec& g, const cd* in, cd* out);
void inverse(const GridSpec& g, const cd* in, cd* out);

void forward(const GridSpec& g, const std::vector<cd>& in, std::vector<cd>& out);
void inverse(const GridSpec& g, const std::vector<cd>& in, std::vector<cd>& out);

}  // namespace biharm::fft

#endif
