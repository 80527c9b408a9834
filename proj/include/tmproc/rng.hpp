/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TMPROC_RNG_HPP
#define TMPROC_RNG_HPP

#include <cstdint>

#include "tmproc/types.hpp"

namespace tmproc {

/// xoshiro256** seeded through splitmix64. Self-contained so that seeded
/// streams are identical across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double uniform();
    /// Standard normal (Box-Muller; consumes two uniforms per pair).
    double gaussian();
    /// Poisson with the given mean (inversion for small, PTRD-style
    /// rejection for large means). Deterministic for a given stream state.
    std::uint64_t poisson(double mean);
    /// Unit vector drawn from the rotation-invariant measure on the
    /// complex d-sphere.
    cvector complex_unit_vector(std::size_t dim);

  private:
    std::uint64_t m_state[4];
    bool m_have_spare = false;
    double m_spare = 0.0;
};

} // namespace tmproc

#endif
