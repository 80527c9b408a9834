/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TMPROC_MEMORY_HPP
#define TMPROC_MEMORY_HPP

#include "tmproc/envelope.hpp"
#include "tmproc/modes.hpp"

namespace tmproc {

/// Calibration constant in C^2 = kappa_cal * d * gamma * W / |Gamma|^2,
/// fixed once by matching eta_stor(C = 0.60, matched HG0) = 0.300 on the
/// default configuration, then frozen (see MemoryParams::kappa_cal).
double frozen_kappa_cal();

/// Dimensionless physical configuration of the memory medium.
///
/// Defaults put the solver deep in the adiabatic, dispersion-free regime
/// where the coupling constant C alone fixes the interaction; gamma and
/// delta follow the Cs D2 line (natural linewidth 2*pi*5.22 MHz, detuning
/// 2*pi*18.4 GHz).
struct MemoryParams {
    double optical_depth_d = 2.0e4;
    double gamma = 2.0 * M_PI * 5.22e6;  // rad/s
    double delta = 2.0 * M_PI * 18.4e9;  // rad/s
    double length_L = 0.075;             // m
    std::size_t nz = 256;
    double kappa_cal = 0.0;              // 0 -> frozen_kappa_cal()

    cplx Gamma() const { return cplx(gamma, delta); }
    double abs2_Gamma() const { return gamma * gamma + delta * delta; }
    double kappa() const { return kappa_cal > 0.0 ? kappa_cal : frozen_kappa_cal(); }
    /// Control pulse energy W = int |Omega|^2 dtau realizing coupling C.
    double pulse_energy(double C) const;
    /// Inverse of pulse_energy.
    double coupling_from_energy(double W) const;
    SpaceGrid space_grid() const { return SpaceGrid(length_L, nz); }

    void validate() const;
};

/// Control field: dimensionless coupling C plus a unit-normalized shape.
/// The physical Rabi envelope is Omega(tau) = sqrt(W) * shape(tau).
struct CouplingSpec {
    double C = 0.0;
    TemporalEnvelope shape;

    static CouplingSpec from_shape(double C, const TemporalEnvelope& shape);
    /// Rabi envelope on the shape's grid for the given params.
    TemporalEnvelope rabi(const MemoryParams& p) const;
};

struct EfficiencyReport {
    double eta_stor = 0.0;
    double eta_ret = 0.0;
    double eta_tot = 0.0;
    double absorbed_fraction = 0.0;
    std::size_t nz = 0;
    std::size_t nt = 0;
};

struct StoreResult {
    SpinWave spinwave;
    TemporalEnvelope leaked;
    EfficiencyReport report;
};

struct RetrieveResult {
    TemporalEnvelope output;
    EfficiencyReport report;
};

/// Integrates the storage interaction over the signal's time window.
/// The spin wave starts from zero; returns the spin wave at the end of the
/// window, the transmitted field at z = L and the efficiency bookkeeping.
StoreResult store(const TemporalEnvelope& signal, const CouplingSpec& control,
                  const MemoryParams& params);

/// Integrates the retrieval interaction: the spin wave is released by the
/// read control on the control's own time window; returns the output field
/// at z = L. eta_ret is output photon number over initial excitation number.
RetrieveResult retrieve(const SpinWave& spinwave, const CouplingSpec& control,
                        const MemoryParams& params);

/// Lower-level entry point shared by store/retrieve: propagates a field
/// boundary condition and an initial spin wave through one control window.
/// Exposed for kernel probing.
struct PropagationResult {
    SpinWave spin_out;
    TemporalEnvelope field_out;
    double absorbed = 0.0;
};
PropagationResult propagate(const TemporalEnvelope& field_in, const cvector& spin_in,
                            const TemporalEnvelope& rabi, const MemoryParams& params);

/// Fits kappa_cal so that a matched HG0 storage at C = 0.60 has the given
/// efficiency (default 0.300). Uses the default grid and mode convention.
double calibrate_kappa(const MemoryParams& params, double target_eta = 0.300);

/// Verification oracle: integrates the same equations with an independent
/// scheme (RK4 in tau, 4th-order z quadrature, 10x oversampling in both
/// axes with spline-interpolated inputs). Grids above 64 samples per axis
/// are rejected; intended for tests only.
SpinWave solve_oracle(const TemporalEnvelope& signal, const CouplingSpec& control,
                      const MemoryParams& params);

} // namespace tmproc

#endif
