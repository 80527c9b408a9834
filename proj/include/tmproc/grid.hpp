/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TMPROC_GRID_HPP
#define TMPROC_GRID_HPP

#include <cstddef>

#include "tmproc/types.hpp"

namespace tmproc {

/// Uniform time grid. Sample k sits at t_start + k*dt, k = 0..n_samples-1.
class TimeGrid {
  public:
    TimeGrid() = default;
    TimeGrid(double t_start, double dt, std::size_t n_samples);

    double t_start() const { return m_t_start; }
    double dt() const { return m_dt; }
    std::size_t size() const { return m_n; }
    double t(std::size_t k) const { return m_t_start + m_dt * double(k); }
    double t_end() const { return t(m_n - 1); }
    double duration() const { return m_dt * double(m_n - 1); }

    bool operator==(const TimeGrid& o) const;
    bool operator!=(const TimeGrid& o) const { return !(*this == o); }

    /// Grid with the same span and 2x the sample density (n -> 2n-1).
    TimeGrid refined() const { return TimeGrid(m_t_start, m_dt / 2.0, 2 * m_n - 1); }
    /// Same sampling, shifted in time.
    TimeGrid shifted(double offset) const { return TimeGrid(m_t_start + offset, m_dt, m_n); }

  private:
    double m_t_start = 0.0;
    double m_dt = 1.0;
    std::size_t m_n = 2;
};

/// Uniform space grid covering z in [0, L] inclusive.
class SpaceGrid {
  public:
    SpaceGrid() = default;
    SpaceGrid(double length, std::size_t n_samples);

    double length() const { return m_length; }
    std::size_t size() const { return m_n; }
    double dz() const { return m_length / double(m_n - 1); }
    double z(std::size_t j) const { return dz() * double(j); }

    bool operator==(const SpaceGrid& o) const;
    bool operator!=(const SpaceGrid& o) const { return !(*this == o); }

    SpaceGrid refined() const { return SpaceGrid(m_length, 2 * m_n - 1); }

  private:
    double m_length = 1.0;
    std::size_t m_n = 2;
};

} // namespace tmproc

#endif
