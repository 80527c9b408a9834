/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tmproc/rng.hpp"

#include <cmath>

namespace tmproc {

namespace {
inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
inline std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
}
} // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : m_state) w = splitmix64(s);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(m_state[1] * 5ULL, 7) * 9ULL;
    const std::uint64_t t = m_state[1] << 17;
    m_state[2] ^= m_state[0];
    m_state[3] ^= m_state[1];
    m_state[1] ^= m_state[2];
    m_state[0] ^= m_state[3];
    m_state[2] ^= t;
    m_state[3] = rotl(m_state[3], 45);
    return result;
}

double Rng::uniform() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (m_have_spare) {
        m_have_spare = false;
        return m_spare;
    }
    double u1 = 0.0;
    do { u1 = uniform(); } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    m_spare = r * std::sin(2.0 * M_PI * u2);
    m_have_spare = true;
    return r * std::cos(2.0 * M_PI * u2);
}

std::uint64_t Rng::poisson(double mean) {
    if (!(mean >= 0.0))
        throw Error(Errc::invalid_argument, "poisson: mean must be non-negative");
    if (mean == 0.0) return 0;
    if (mean < 30.0) {
        // Knuth inversion
        const double limit = std::exp(-mean);
        double prod = uniform();
        std::uint64_t n = 0;
        while (prod > limit) {
            prod *= uniform();
            ++n;
        }
        return n;
    }
    // split recursively: Poisson(a+b) = Poisson(a) + Poisson(b)
    const double half = std::floor(mean / 2.0);
    return poisson(half) + poisson(mean - half);
}

cvector Rng::complex_unit_vector(std::size_t dim) {
    cvector v(dim);
    double n2 = 0.0;
    for (auto& c : v) {
        c = cplx(gaussian(), gaussian());
        n2 += std::norm(c);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& c : v) c *= inv;
    return v;
}

} // namespace tmproc
