/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tmproc/dsp.hpp"

#include <cmath>

namespace tmproc {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft(cvector& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw Error(Errc::invalid_argument, "fft: size must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / double(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= double(n);
}

Spectrum spectrum(const cvector& x, double dt, int pad_factor) {
    Spectrum s;
    s.n_time = x.size();
    s.dt = dt;
    const std::size_t np = next_pow2(x.size()) * std::size_t(pad_factor);
    s.bins = x;
    s.bins.resize(np, cplx(0.0));
    fft(s.bins, false);
    s.omega.resize(np);
    const double dw = 2.0 * M_PI / (double(np) * dt);
    for (std::size_t k = 0; k < np; ++k) {
        const double idx = (k <= np / 2) ? double(k) : double(k) - double(np);
        s.omega[k] = idx * dw;
    }
    return s;
}

cvector inverse_spectrum(const Spectrum& s) {
    cvector buf(s.bins);
    fft(buf, true);
    buf.resize(s.n_time);
    return buf;
}

double spectral_squared_norm(const Spectrum& s) {
    double acc = 0.0;
    for (const auto& b : s.bins) acc += std::norm(b);
    return acc * s.dt / double(s.bins.size());
}

std::vector<std::size_t> unwrap_phase(const cvector& amp, double threshold,
                                      dvector& phase_out) {
    phase_out.assign(amp.size(), 0.0);
    std::vector<std::size_t> resets;
    double last = 0.0;
    double offset = 0.0;
    bool started = false;
    for (std::size_t k = 0; k < amp.size(); ++k) {
        if (std::abs(amp[k]) <= threshold) {
            phase_out[k] = started ? phase_out[k - 1] : 0.0;
            continue;
        }
        double ph = std::arg(amp[k]);
        if (started) {
            double d = ph + offset - last;
            while (d > M_PI) {
                offset -= 2.0 * M_PI;
                d -= 2.0 * M_PI;
                resets.push_back(k);
            }
            while (d < -M_PI) {
                offset += 2.0 * M_PI;
                d += 2.0 * M_PI;
                resets.push_back(k);
            }
        }
        phase_out[k] = ph + offset;
        last = phase_out[k];
        started = true;
    }
    return resets;
}

} // namespace tmproc
