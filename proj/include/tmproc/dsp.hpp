/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TMPROC_DSP_HPP
#define TMPROC_DSP_HPP

#include "tmproc/types.hpp"

namespace tmproc {

/// In-place radix-2 FFT; size must be a power of two.
/// inverse applies the 1/N factor so ifft(fft(x)) == x.
void fft(cvector& data, bool inverse);

std::size_t next_pow2(std::size_t n);

/// Zero-pads x to pad_factor * next_pow2(n) and returns its FFT together
/// with the angular-frequency grid (fftfreq layout, rad/s for sample
/// spacing dt).
struct Spectrum {
    cvector bins;
    dvector omega;
    std::size_t n_time = 0; // original length
    double dt = 0.0;
};

Spectrum spectrum(const cvector& x, double dt, int pad_factor = 4);

/// Inverse of spectrum(): returns the first n_time samples.
cvector inverse_spectrum(const Spectrum& s);

/// Parseval sum: sum |X_k|^2 * dt / N over the padded transform equals
/// sum |x_k|^2 * dt.
double spectral_squared_norm(const Spectrum& s);

/// Continuous phase profile of a complex envelope where |a| > threshold;
/// regions below threshold keep the last valid phase. Returns the indices
/// where a wrap by 2*pi was applied.
std::vector<std::size_t> unwrap_phase(const cvector& amp, double threshold,
                                      dvector& phase_out);

} // namespace tmproc

#endif
