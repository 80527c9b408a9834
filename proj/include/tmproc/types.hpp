/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TMPROC_TYPES_HPP
#define TMPROC_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace tmproc {

using cplx = std::complex<double>;
using cvector = std::vector<cplx>;
using dvector = std::vector<double>;

/// Error codes shared with the C API (see include/tmproc.h).
enum class Errc : int {
    ok = 0,
    invalid_argument = 1,
    grid_mismatch = 2,
    grid_too_coarse = 3,
    grid_too_short = 4,
    resolution = 5,
    size_guard = 6,
    non_orthonormal_basis = 7,
    rank_out_of_range = 8,
    non_prime_dimension = 9,
    underdetermined = 10,
    non_convergence = 11,
    not_applicable = 12,
    infeasible_target = 13,
    rabi_cap_exceeded = 14,
    expansion_impossible = 15,
    amplitude_out_of_range = 16,
    voltage_rail = 17,
    spectral_null = 18,
    non_invertible_band = 19,
    zero_energy = 20,
    zero_reference = 21,
    insufficient_counts = 22,
    schema = 23,
    io_failure = 24,
    non_psd = 25,
};

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), m_code(code) {}
    Errc code() const noexcept { return m_code; }

  private:
    Errc m_code;
};

inline const char* errc_name(Errc c) {
    switch (c) {
    case Errc::ok: return "ok";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::grid_mismatch: return "grid_mismatch";
    case Errc::grid_too_coarse: return "grid_too_coarse";
    case Errc::grid_too_short: return "grid_too_short";
    case Errc::resolution: return "resolution";
    case Errc::size_guard: return "size_guard";
    case Errc::non_orthonormal_basis: return "non_orthonormal_basis";
    case Errc::rank_out_of_range: return "rank_out_of_range";
    case Errc::non_prime_dimension: return "non_prime_dimension";
    case Errc::underdetermined: return "underdetermined";
    case Errc::non_convergence: return "non_convergence";
    case Errc::not_applicable: return "not_applicable";
    case Errc::infeasible_target: return "infeasible_target";
    case Errc::rabi_cap_exceeded: return "rabi_cap_exceeded";
    case Errc::expansion_impossible: return "expansion_impossible";
    case Errc::amplitude_out_of_range: return "amplitude_out_of_range";
    case Errc::voltage_rail: return "voltage_rail";
    case Errc::spectral_null: return "spectral_null";
    case Errc::non_invertible_band: return "non_invertible_band";
    case Errc::zero_energy: return "zero_energy";
    case Errc::zero_reference: return "zero_reference";
    case Errc::insufficient_counts: return "insufficient_counts";
    case Errc::schema: return "schema";
    case Errc::io_failure: return "io_failure";
    case Errc::non_psd: return "non_psd";
    }
    return "unknown";
}

} // namespace tmproc

#endif
