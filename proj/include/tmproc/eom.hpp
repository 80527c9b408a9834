/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TMPROC_EOM_HPP
#define TMPROC_EOM_HPP

#include <optional>

#include "tmproc/dsp.hpp"
#include "tmproc/envelope.hpp"

namespace tmproc {

/// Sampled LTI response of the drive chain on an angular-frequency grid.
/// Inversion is guarded below floor_rel of the peak magnitude.
struct FrequencyResponse {
    dvector omega;     // rad/s, fftfreq layout
    cvector response;
    double floor_rel = 1e-3;
    std::optional<double> low_cutoff; // Hz, informational

    static FrequencyResponse identity();
    /// Single-pole RC low-pass 1/(1 + i omega RC).
    static FrequencyResponse rc_lowpass(double rc);
    /// Single-pole high-pass i w T/(1 + i w T) (AC-coupled chain).
    static FrequencyResponse rc_highpass(double t_const);

    /// Response at angular frequency w (nearest-bin for sampled responses,
    /// analytic for the built-ins).
    cplx at(double w) const;
    bool analytic() const { return omega.empty(); }

  private:
    int m_kind = 0; // 0 sampled, 1 identity, 2 lowpass, 3 highpass
    double m_param = 0.0;
    friend FrequencyResponse make_analytic(int kind, double param);
};

/// Dual-drive intensity-phase modulator model.
struct EomModel {
    double v_pi = 1.0;
    double crosstalk_eps = 0.0;      // |eps| < 1
    double bias_offset = 0.0;        // volts added to both arms; 0 = at-null
    double rail = 0.0;               // |V| limit, 0 = unlimited
    FrequencyResponse response = FrequencyResponse::identity();
};

struct DriveWaveforms {
    TimeGrid grid;
    dvector v1, v2;
    std::vector<std::size_t> phase_resets; // modulo-2pi wrap points
};

/// Drive voltages generating amplitude A(t) in [-1, 1] and phase Phi(t):
/// V1 = (V_pi/pi)(asin A + Phi), V2 = (V_pi/pi)(asin A - Phi). With
/// electrode crosstalk the linear mixing is inverted so the optical output
/// matches the target; phases outside the rail are wrapped mod 2 pi.
DriveWaveforms drives_from_target(const dvector& amplitude, const dvector& phase,
                                  const TimeGrid& grid, const EomModel& model);

/// Optical output A e^{i Phi} of the chain: response applied to each drive,
/// crosstalk mixing, bias offset, then the interferometric transfer.
TemporalEnvelope eom_output(const DriveWaveforms& drives, const EomModel& model);

/// R(w) = FFT(output)/FFT(input) with the magnitude-floor guard.
FrequencyResponse estimate_response(const TemporalEnvelope& input_probe,
                                    const TemporalEnvelope& measured_output);

/// Spectral pre-distortion x' = F^-1[F(target)/R]. Throws if the target
/// has significant energy where |R| is below the floor.
cvector predistort(const cvector& target, double dt, const FrequencyResponse& response);

/// Rescales drive amplitudes so simulated optical pulse energies match the
/// reference entry within 1e-3 relative (secant iteration through the
/// nonlinear chain).
std::vector<dvector> normalize_energies(const std::vector<dvector>& amplitude_targets,
                                        std::size_t reference_index, const TimeGrid& grid,
                                        const EomModel& model);

/// Bias voltage that nulls the zero-drive output (calibration without RF).
double calibrate_bias(const EomModel& model);

} // namespace tmproc

#endif
