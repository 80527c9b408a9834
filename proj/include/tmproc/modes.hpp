/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TMPROC_MODES_HPP
#define TMPROC_MODES_HPP

#include "tmproc/envelope.hpp"

namespace tmproc {

/// Highest Hermite-Gaussian order supported by default (30-mode alphabet).
inline constexpr int kMaxHgOrder = 29;

enum class ModeFamily {
    hermite_gaussian,
    gaussian,
    exp_decay,
    exp_growth,
    top_hat,
    custom,
};

/// Parametric description of a temporal mode.
///
/// For hermite_gaussian and gaussian the scale is the field-amplitude FWHM
/// of the underlying Gaussian; all HG orders share that Gaussian waist.
/// For exp_decay / exp_growth the scale is the field 1/e time constant,
/// for top_hat the full width.
struct ModeSpec {
    ModeFamily family = ModeFamily::gaussian;
    int order = 0;          // hermite_gaussian only
    double center = 0.0;    // seconds
    double scale = 50e-9;   // seconds, > 0
    double phase_offset = 0.0;
    cvector custom_samples; // custom only

    static ModeSpec hermite_gaussian(int n, double fwhm, double center,
                                     double phase_offset = 0.0);
    static ModeSpec gaussian(double fwhm, double center);
    static ModeSpec exp_decay(double time_constant, double start);
    static ModeSpec exp_growth(double time_constant, double end);
    static ModeSpec top_hat(double width, double center);
};

/// Unit-normalized Hermite-Gaussian mode of the requested order.
/// order n has n real-axis sign changes; all orders share the Gaussian
/// waist set by spec.scale (field FWHM).
TemporalEnvelope make_hg_mode(const ModeSpec& spec, const TimeGrid& grid);

/// Unit-normalized envelope for any ModeSpec family.
TemporalEnvelope make_mode(const ModeSpec& spec, const TimeGrid& grid);

/// sigma of the field Gaussian exp(-t^2 / 2 sigma^2) for a given field FWHM.
double gaussian_sigma_from_fwhm(double fwhm);

/// Default production grid: resolves HG_29 at 50 ns FWHM with >= 8 samples
/// per oscillation of the fastest feature; power-of-two length.
TimeGrid default_time_grid();

/// First n + 1 Hermite-Gaussian modes (orders 0..n) on a common grid.
std::vector<TemporalEnvelope> hg_basis(int n_max, double fwhm, double center,
                                       const TimeGrid& grid);

} // namespace tmproc

#endif
