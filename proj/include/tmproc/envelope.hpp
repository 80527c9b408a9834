/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TMPROC_ENVELOPE_HPP
#define TMPROC_ENVELOPE_HPP

#include <utility>

#include "tmproc/grid.hpp"
#include "tmproc/types.hpp"

namespace tmproc {

/// Complex field amplitude sampled on a uniform time grid.
/// Squared norm is sum |a_k|^2 dt (photon number for signal fields,
/// pulse energy W for Rabi envelopes).
class TemporalEnvelope {
  public:
    TemporalEnvelope() = default;
    TemporalEnvelope(TimeGrid grid, cvector amplitude);

    const TimeGrid& grid() const { return m_grid; }
    const cvector& amplitude() const { return m_amp; }
    cvector& amplitude() { return m_amp; }
    std::size_t size() const { return m_amp.size(); }
    cplx operator[](std::size_t k) const { return m_amp[k]; }

    double squared_norm() const;
    double norm() const;
    bool unit_normalized() const { return m_unit; }

    /// Returns a unit-normalized copy (and sets the flag on it).
    TemporalEnvelope normalized() const;
    TemporalEnvelope scaled(cplx factor) const;
    /// Samples reversed in time about the grid centre.
    TemporalEnvelope time_reversed() const;
    /// Same samples on a grid shifted by offset.
    TemporalEnvelope delayed(double offset) const;

    /// Checks edge magnitude < 1e-6 of peak; throws grid_too_short otherwise.
    void check_support() const;

    /// First moment of |a|^2 (energy centroid), in seconds.
    double centroid() const;

  private:
    TimeGrid m_grid;
    cvector m_amp;
    bool m_unit = false;

    friend TemporalEnvelope with_unit_flag(TemporalEnvelope e);
};

/// Complex spin-wave amplitude on a space grid. Squared norm is
/// sum |b_j|^2 dz (stored excitation number).
class SpinWave {
  public:
    SpinWave() = default;
    SpinWave(SpaceGrid grid, cvector amplitude);

    const SpaceGrid& grid() const { return m_grid; }
    const cvector& amplitude() const { return m_amp; }
    std::size_t size() const { return m_amp.size(); }
    cplx operator[](std::size_t j) const { return m_amp[j]; }

    double squared_norm() const;
    SpinWave scaled(cplx factor) const;

  private:
    SpaceGrid m_grid;
    cvector m_amp;
};

/// Discrete L2 inner product: sum conj(a_k) b_k dt.
cplx overlap(const TemporalEnvelope& a, const TemporalEnvelope& b);
cplx overlap(const SpinWave& a, const SpinWave& b);

/// Pointwise linear combination of envelopes on a common grid.
TemporalEnvelope superpose(const std::vector<std::pair<cplx, TemporalEnvelope>>& terms);

/// Band-limited resampling onto the 2x refined grid (spectral zero padding).
TemporalEnvelope resample_refined(const TemporalEnvelope& e);

} // namespace tmproc

#endif
