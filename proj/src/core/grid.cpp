/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tmproc/grid.hpp"

#include <cmath>

namespace tmproc {

TimeGrid::TimeGrid(double t_start, double dt, std::size_t n_samples)
    : m_t_start(t_start), m_dt(dt), m_n(n_samples) {
    if (!(dt > 0.0))
        throw Error(Errc::invalid_argument, "TimeGrid: dt must be positive");
    if (n_samples < 2)
        throw Error(Errc::invalid_argument, "TimeGrid: need at least 2 samples");
}

bool TimeGrid::operator==(const TimeGrid& o) const {
    if (m_n != o.m_n) return false;
    const double scale = std::max(std::abs(m_dt), std::abs(o.m_dt));
    return std::abs(m_dt - o.m_dt) <= 1e-12 * scale &&
           std::abs(m_t_start - o.m_t_start) <= 1e-9 * scale * double(m_n);
}

SpaceGrid::SpaceGrid(double length, std::size_t n_samples)
    : m_length(length), m_n(n_samples) {
    if (!(length > 0.0))
        throw Error(Errc::invalid_argument, "SpaceGrid: length must be positive");
    if (n_samples < 2)
        throw Error(Errc::invalid_argument, "SpaceGrid: need at least 2 samples");
}

bool SpaceGrid::operator==(const SpaceGrid& o) const {
    return m_n == o.m_n &&
           std::abs(m_length - o.m_length) <= 1e-12 * std::max(m_length, o.m_length);
}

} // namespace tmproc
