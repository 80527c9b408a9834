/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TMPROC_CONVERSION_HPP
#define TMPROC_CONVERSION_HPP

#include "tmproc/memory.hpp"

namespace tmproc {

struct ConversionResult {
    double eta_stor = 0.0;
    double eta_tot = 0.0;
    TemporalEnvelope output;
    double target_overlap = 0.0; // squared overlap with the unit-norm target
};

/// Full store -> retrieve chain. The read control is shifted to start
/// `delay` after the end of the write window; a negative placement that
/// overlaps the write window is an error. The nominal target defaults to
/// the read control's shape.
ConversionResult convert_mode(const TemporalEnvelope& input_mode,
                              const CouplingSpec& write_control,
                              const CouplingSpec& read_control, double delay,
                              const MemoryParams& params,
                              const TemporalEnvelope* target = nullptr);

/// Read-control design: shapes |Omega|^2 by the flux-matching rule
/// |Omega(tau)|^2 ~ |target(tau)|^2 / (remaining retrievable energy), then
/// refines by <= max_fixed_point iterations through the solver (amplitude
/// ratio plus phase alignment), at fixed control energy energy_W.
CouplingSpec compensate_depletion(const TemporalEnvelope& target_output,
                                  const SpinWave& spinwave, const MemoryParams& params,
                                  double energy_W, double rabi_cap = 0.0,
                                  int max_fixed_point = 20);

/// Analytic seed of compensate_depletion (exposed for tests): flux-matching
/// rule with the plain-retrieval efficiency eta_plain.
TemporalEnvelope depletion_seed(const TemporalEnvelope& target_output, double eta_plain,
                                double energy_W);

enum class BandwidthRegime { constant_peak, constant_energy };

/// Stores a Gaussian of field FWHM t_in (matched write control at C_write)
/// and retrieves into a Gaussian of duration factor*t_in.
ConversionResult bandwidth_convert(double t_in, double factor, BandwidthRegime regime,
                                   double C_write, const MemoryParams& params,
                                   double rabi_cap = 0.0);

/// Default Rabi cap: 50x the peak Rabi frequency of the C = 0.60 matched
/// HG0 control (amplifier-saturation stand-in).
double default_rabi_cap(const MemoryParams& params);

struct PassiveFilterResult {
    double efficiency = 0.0;
    bool expansion_impossible = false; // set for factor < 1
};

/// Ideal passive top-hat spectral filter baseline: transmitted energy of a
/// t_in field-FWHM Gaussian through the filter sized so the filtered field
/// FWHM is factor*t_in, times the squared overlap with the target Gaussian.
PassiveFilterResult passive_filter_baseline(double t_in, double factor);

struct GaussExpResult {
    ConversionResult exp_to_gauss;
    ConversionResult gauss_to_exp;
};

/// Appendix-style shape conversion pair with a 50 ns decay constant.
GaussExpResult gaussian_exponential_scenarios(const MemoryParams& params, double C_write,
                                              double C_read, double decay_constant = 50e-9);

} // namespace tmproc

#endif
