/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tmproc/modes.hpp"

#include <cmath>

namespace tmproc {

double gaussian_sigma_from_fwhm(double fwhm) {
    return fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
}

ModeSpec ModeSpec::hermite_gaussian(int n, double fwhm, double center, double phase_offset) {
    ModeSpec s;
    s.family = ModeFamily::hermite_gaussian;
    s.order = n;
    s.center = center;
    s.scale = fwhm;
    s.phase_offset = phase_offset;
    return s;
}

ModeSpec ModeSpec::gaussian(double fwhm, double center) {
    ModeSpec s;
    s.family = ModeFamily::gaussian;
    s.center = center;
    s.scale = fwhm;
    return s;
}

ModeSpec ModeSpec::exp_decay(double time_constant, double start) {
    ModeSpec s;
    s.family = ModeFamily::exp_decay;
    s.center = start;
    s.scale = time_constant;
    return s;
}

ModeSpec ModeSpec::exp_growth(double time_constant, double end) {
    ModeSpec s;
    s.family = ModeFamily::exp_growth;
    s.center = end;
    s.scale = time_constant;
    return s;
}

ModeSpec ModeSpec::top_hat(double width, double center) {
    ModeSpec s;
    s.family = ModeFamily::top_hat;
    s.center = center;
    s.scale = width;
    return s;
}

namespace {

void validate_common(const ModeSpec& spec) {
    if (!(spec.scale > 0.0))
        throw Error(Errc::invalid_argument, "ModeSpec: scale must be positive");
}

// Normalized Hermite function psi_n(x) via the stable three-term recurrence;
// unit L2 norm in x.
double hermite_function(int n, double x) {
    const double psi0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    if (n == 0) return psi0;
    double pm = psi0;
    double p = std::sqrt(2.0) * x * psi0;
    for (int k = 2; k <= n; ++k) {
        const double pn = x * std::sqrt(2.0 / k) * p - std::sqrt(double(k - 1) / k) * pm;
        pm = p;
        p = pn;
    }
    return p;
}

} // namespace

TemporalEnvelope make_hg_mode(const ModeSpec& spec, const TimeGrid& grid) {
    if (spec.family != ModeFamily::hermite_gaussian)
        throw Error(Errc::invalid_argument, "make_hg_mode: family is not hermite_gaussian");
    validate_common(spec);
    if (spec.order < 0 || spec.order > kMaxHgOrder)
        throw Error(Errc::invalid_argument, "make_hg_mode: order out of range");

    const double sigma = gaussian_sigma_from_fwhm(spec.scale);
    // fastest oscillation of psi_n: local wavevector sqrt(2n+1)/sigma
    const double min_period = 2.0 * M_PI * sigma / std::sqrt(2.0 * spec.order + 1.0);
    if (grid.dt() > min_period / 8.0)
        throw Error(Errc::grid_too_coarse,
                    "make_hg_mode: fewer than 8 samples per oscillation period");
    const double rms = sigma * std::sqrt(spec.order + 0.5);
    if (grid.duration() < 8.0 * rms)
        throw Error(Errc::grid_too_short, "make_hg_mode: grid support below 8x rms width");

    const cplx phase = std::polar(1.0, spec.phase_offset);
    cvector amp(grid.size());
    for (std::size_t k = 0; k < amp.size(); ++k) {
        const double x = (grid.t(k) - spec.center) / sigma;
        amp[k] = phase * (hermite_function(spec.order, x) / std::sqrt(sigma));
    }
    TemporalEnvelope env = TemporalEnvelope(grid, std::move(amp)).normalized();
    env.check_support();
    return env;
}

TemporalEnvelope make_mode(const ModeSpec& spec, const TimeGrid& grid) {
    validate_common(spec);
    if (spec.family == ModeFamily::hermite_gaussian) return make_hg_mode(spec, grid);

    const cplx phase = std::polar(1.0, spec.phase_offset);
    cvector amp(grid.size(), cplx(0.0));
    switch (spec.family) {
    case ModeFamily::gaussian: {
        const double sigma = gaussian_sigma_from_fwhm(spec.scale);
        for (std::size_t k = 0; k < amp.size(); ++k) {
            const double x = (grid.t(k) - spec.center) / sigma;
            amp[k] = phase * std::exp(-0.5 * x * x);
        }
        break;
    }
    case ModeFamily::exp_decay:
        for (std::size_t k = 0; k < amp.size(); ++k) {
            const double u = grid.t(k) - spec.center;
            if (u >= 0.0) amp[k] = phase * std::exp(-u / spec.scale);
        }
        break;
    case ModeFamily::exp_growth:
        for (std::size_t k = 0; k < amp.size(); ++k) {
            const double u = spec.center - grid.t(k);
            if (u >= 0.0) amp[k] = phase * std::exp(-u / spec.scale);
        }
        break;
    case ModeFamily::top_hat:
        for (std::size_t k = 0; k < amp.size(); ++k) {
            if (std::abs(grid.t(k) - spec.center) <= 0.5 * spec.scale) amp[k] = phase;
        }
        break;
    case ModeFamily::custom: {
        if (spec.custom_samples.size() != grid.size())
            throw Error(Errc::invalid_argument, "make_mode: custom sample count mismatch");
        cvector c(spec.custom_samples);
        for (auto& a : c) a *= phase;
        return TemporalEnvelope(grid, std::move(c)).normalized();
    }
    default:
        throw Error(Errc::invalid_argument, "make_mode: unsupported family");
    }
    TemporalEnvelope env = TemporalEnvelope(grid, std::move(amp)).normalized();
    if (spec.family == ModeFamily::gaussian) env.check_support();
    return env;
}

TimeGrid default_time_grid() {
    // 1024 samples at 2 ns: HG_29 at 50 ns FWHM keeps ~8.7 samples per
    // fastest period and edge magnitudes far below 1e-6 of peak.
    return TimeGrid(0.0, 2e-9, 1024);
}

std::vector<TemporalEnvelope> hg_basis(int n_max, double fwhm, double center,
                                       const TimeGrid& grid) {
    std::vector<TemporalEnvelope> basis;
    basis.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n)
        basis.push_back(make_hg_mode(ModeSpec::hermite_gaussian(n, fwhm, center), grid));
    return basis;
}

} // namespace tmproc
