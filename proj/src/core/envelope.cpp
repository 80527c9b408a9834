/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tmproc/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "tmproc/dsp.hpp"

namespace tmproc {

TemporalEnvelope::TemporalEnvelope(TimeGrid grid, cvector amplitude)
    : m_grid(grid), m_amp(std::move(amplitude)) {
    if (m_amp.size() != m_grid.size())
        throw Error(Errc::invalid_argument,
                    "TemporalEnvelope: amplitude length does not match grid");
}

double TemporalEnvelope::squared_norm() const {
    double s = 0.0;
    for (const auto& a : m_amp) s += std::norm(a);
    return s * m_grid.dt();
}

double TemporalEnvelope::norm() const { return std::sqrt(squared_norm()); }

TemporalEnvelope with_unit_flag(TemporalEnvelope e) {
    e.m_unit = true;
    return e;
}

TemporalEnvelope TemporalEnvelope::normalized() const {
    const double n = norm();
    if (n <= 0.0)
        throw Error(Errc::zero_energy, "normalize: zero-norm envelope");
    cvector out(m_amp);
    for (auto& a : out) a /= n;
    return with_unit_flag(TemporalEnvelope(m_grid, std::move(out)));
}

TemporalEnvelope TemporalEnvelope::scaled(cplx factor) const {
    cvector out(m_amp);
    for (auto& a : out) a *= factor;
    return TemporalEnvelope(m_grid, std::move(out));
}

TemporalEnvelope TemporalEnvelope::time_reversed() const {
    cvector out(m_amp.rbegin(), m_amp.rend());
    TemporalEnvelope r(m_grid, std::move(out));
    r.m_unit = m_unit;
    return r;
}

TemporalEnvelope TemporalEnvelope::delayed(double offset) const {
    TemporalEnvelope r(m_grid.shifted(offset), m_amp);
    r.m_unit = m_unit;
    return r;
}

void TemporalEnvelope::check_support() const {
    double peak = 0.0;
    for (const auto& a : m_amp) peak = std::max(peak, std::abs(a));
    if (peak <= 0.0) return;
    const double edge = std::max(std::abs(m_amp.front()), std::abs(m_amp.back()));
    if (edge > 1e-6 * peak)
        throw Error(Errc::grid_too_short,
                    "envelope support exceeds grid (edge magnitude > 1e-6 of peak)");
}

double TemporalEnvelope::centroid() const {
    double w = 0.0, s = 0.0;
    for (std::size_t k = 0; k < m_amp.size(); ++k) {
        const double p = std::norm(m_amp[k]);
        w += p;
        s += p * m_grid.t(k);
    }
    if (w <= 0.0)
        throw Error(Errc::zero_energy, "centroid: zero-norm envelope");
    return s / w;
}

SpinWave::SpinWave(SpaceGrid grid, cvector amplitude)
    : m_grid(grid), m_amp(std::move(amplitude)) {
    if (m_amp.size() != m_grid.size())
        throw Error(Errc::invalid_argument,
                    "SpinWave: amplitude length does not match grid");
}

double SpinWave::squared_norm() const {
    double s = 0.0;
    for (const auto& a : m_amp) s += std::norm(a);
    return s * m_grid.dz();
}

SpinWave SpinWave::scaled(cplx factor) const {
    cvector out(m_amp);
    for (auto& a : out) a *= factor;
    return SpinWave(m_grid, std::move(out));
}

cplx overlap(const TemporalEnvelope& a, const TemporalEnvelope& b) {
    if (a.grid() != b.grid())
        throw Error(Errc::grid_mismatch, "overlap: envelopes on different grids");
    cplx s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
    return s * a.grid().dt();
}

cplx overlap(const SpinWave& a, const SpinWave& b) {
    if (a.grid() != b.grid())
        throw Error(Errc::grid_mismatch, "overlap: spin waves on different grids");
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += std::conj(a[j]) * b[j];
    return s * a.grid().dz();
}

TemporalEnvelope superpose(const std::vector<std::pair<cplx, TemporalEnvelope>>& terms) {
    if (terms.empty())
        throw Error(Errc::invalid_argument, "superpose: empty term list");
    const TimeGrid& g = terms.front().second.grid();
    cvector acc(g.size(), cplx(0.0));
    for (const auto& [coeff, env] : terms) {
        if (env.grid() != g)
            throw Error(Errc::grid_mismatch, "superpose: envelopes on different grids");
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += coeff * env[k];
    }
    return TemporalEnvelope(g, std::move(acc));
}

TemporalEnvelope resample_refined(const TemporalEnvelope& e) {
    // Spectral zero-padding; envelopes vanish at the grid edges so periodic
    // wrap-around is negligible.
    const std::size_t n = e.size();
    const std::size_t np = next_pow2(n);
    cvector buf(e.amplitude());
    buf.resize(np, cplx(0.0));
    fft(buf, false);
    cvector up(2 * np, cplx(0.0));
    const std::size_t half = np / 2;
    for (std::size_t k = 0; k < half; ++k) up[k] = buf[k];
    for (std::size_t k = half; k < np; ++k) up[k + np] = buf[k];
    // split the Nyquist bin symmetrically
    up[half] = 0.5 * buf[half];
    up[2 * np - half] = 0.5 * buf[half];
    fft(up, true);
    TimeGrid fine = e.grid().refined();
    cvector out(fine.size());
    // samples scale by 2 from the length doubling under the 1/N convention
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = up[k] * 2.0;
    return TemporalEnvelope(fine, std::move(out));
}

} // namespace tmproc
