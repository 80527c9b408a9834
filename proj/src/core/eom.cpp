/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tmproc/eom.hpp"

#include <algorithm>
#include <cmath>

namespace tmproc {

FrequencyResponse make_analytic(int kind, double param) {
    FrequencyResponse r;
    r.m_kind = kind;
    r.m_param = param;
    return r;
}

FrequencyResponse FrequencyResponse::identity() { return make_analytic(1, 0.0); }
FrequencyResponse FrequencyResponse::rc_lowpass(double rc) { return make_analytic(2, rc); }
FrequencyResponse FrequencyResponse::rc_highpass(double t) { return make_analytic(3, t); }

cplx FrequencyResponse::at(double w) const {
    switch (m_kind) {
    case 1: return 1.0;
    case 2: return 1.0 / cplx(1.0, w * m_param);
    case 3: {
        const cplx iwt(0.0, w * m_param);
        return iwt / (1.0 + iwt);
    }
    default: break;
    }
    if (omega.empty())
        throw Error(Errc::invalid_argument, "FrequencyResponse: empty sampled response");
    // nearest bin on the fftfreq layout
    std::size_t best = 0;
    double dmin = std::abs(omega[0] - w);
    for (std::size_t k = 1; k < omega.size(); ++k) {
        const double d = std::abs(omega[k] - w);
        if (d < dmin) { dmin = d; best = k; }
    }
    return response[best];
}

namespace {

// applies the response to a real voltage waveform
dvector apply_response(const dvector& v, double dt, const FrequencyResponse& r) {
    Spectrum s = spectrum(cvector(v.begin(), v.end()), dt);
    for (std::size_t k = 0; k < s.bins.size(); ++k) s.bins[k] *= r.at(s.omega[k]);
    const cvector out = inverse_spectrum(s);
    dvector res(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) res[k] = out[k].real();
    return res;
}

} // namespace

DriveWaveforms drives_from_target(const dvector& amplitude, const dvector& phase,
                                  const TimeGrid& grid, const EomModel& model) {
    if (amplitude.size() != grid.size() || phase.size() != grid.size())
        throw Error(Errc::invalid_argument, "drives_from_target: length mismatch");
    if (std::abs(model.bias_offset) > 0.0)
        throw Error(Errc::invalid_argument,
                    "drives_from_target: inversion requires at-null bias");

    DriveWaveforms d;
    d.grid = grid;
    d.v1.resize(grid.size());
    d.v2.resize(grid.size());
    const double vp = model.v_pi / M_PI;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double a = amplitude[k];
        if (std::abs(a) > 1.0)
            throw Error(Errc::amplitude_out_of_range, "drives_from_target: |A| > 1");
        double ph = phase[k];
        double v1 = vp * (std::asin(a) + ph);
        double v2 = vp * (std::asin(a) - ph);
        if (model.rail > 0.0 && (std::abs(v1) > model.rail || std::abs(v2) > model.rail)) {
            // wrap the phase term by 2 pi (shifts V1, V2 by +-2 V_pi)
            const double wrapped = std::remainder(ph, 2.0 * M_PI);
            if (wrapped != ph) d.phase_resets.push_back(k);
            ph = wrapped;
            v1 = vp * (std::asin(a) + ph);
            v2 = vp * (std::asin(a) - ph);
            if (std::abs(v1) > model.rail || std::abs(v2) > model.rail)
                throw Error(Errc::voltage_rail,
                            "drives_from_target: drive exceeds rail after mod-2pi wrap");
        }
        d.v1[k] = v1;
        d.v2[k] = v2;
    }

    if (model.crosstalk_eps != 0.0) {
        // invert V_eff1 = V1 + eps V2, V_eff2 = V2 + eps V1 so the optical
        // output matches the target despite electrode coupling
        const double eps = model.crosstalk_eps;
        if (std::abs(eps) >= 1.0)
            throw Error(Errc::invalid_argument, "drives_from_target: |eps| must be < 1");
        const double det = 1.0 - eps * eps;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double w1 = (d.v1[k] - eps * d.v2[k]) / det;
            const double w2 = (d.v2[k] - eps * d.v1[k]) / det;
            d.v1[k] = w1;
            d.v2[k] = w2;
        }
    }
    return d;
}

TemporalEnvelope eom_output(const DriveWaveforms& drives, const EomModel& model) {
    const std::size_t n = drives.grid.size();
    dvector v1 = apply_response(drives.v1, drives.grid.dt(), model.response);
    dvector v2 = apply_response(drives.v2, drives.grid.dt(), model.response);
    if (model.crosstalk_eps != 0.0) {
        for (std::size_t k = 0; k < n; ++k) {
            const double e1 = v1[k] + model.crosstalk_eps * v2[k];
            const double e2 = v2[k] + model.crosstalk_eps * v1[k];
            v1[k] = e1;
            v2[k] = e2;
        }
    }
    cvector out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double s = v1[k] + v2[k] + 2.0 * model.bias_offset;
        const double a = std::sin(M_PI * s / (2.0 * model.v_pi));
        const double ph = M_PI * (v1[k] - v2[k]) / (2.0 * model.v_pi);
        out[k] = std::polar(a, ph);
    }
    return TemporalEnvelope(drives.grid, std::move(out));
}

FrequencyResponse estimate_response(const TemporalEnvelope& input_probe,
                                    const TemporalEnvelope& measured_output) {
    if (input_probe.grid() != measured_output.grid())
        throw Error(Errc::grid_mismatch, "estimate_response: grids differ");
    const Spectrum si = spectrum(input_probe.amplitude(), input_probe.grid().dt());
    const Spectrum so = spectrum(measured_output.amplitude(), input_probe.grid().dt());

    FrequencyResponse r;
    r.omega = si.omega;
    r.response.resize(si.bins.size());
    double peak = 0.0;
    for (const auto& b : si.bins) peak = std::max(peak, std::abs(b));
    if (peak <= 0.0)
        throw Error(Errc::spectral_null, "estimate_response: empty probe spectrum");
    const double floor = r.floor_rel * peak;
    for (std::size_t k = 0; k < si.bins.size(); ++k)
        r.response[k] = std::abs(si.bins[k]) > floor ? so.bins[k] / si.bins[k] : cplx(0.0);
    return r;
}

cvector predistort(const cvector& target, double dt, const FrequencyResponse& response) {
    Spectrum s = spectrum(target, dt);
    double peak_r = 0.0;
    if (response.analytic()) {
        for (double w : s.omega) peak_r = std::max(peak_r, std::abs(response.at(w)));
    } else {
        for (const auto& b : response.response) peak_r = std::max(peak_r, std::abs(b));
    }
    const double floor = response.floor_rel * peak_r;

    double total = 0.0, blocked = 0.0;
    for (std::size_t k = 0; k < s.bins.size(); ++k) {
        const double p = std::norm(s.bins[k]);
        total += p;
        const cplx rk = response.at(s.omega[k]);
        if (std::abs(rk) <= floor)
            blocked += p;
        else
            s.bins[k] /= rk;
    }
    if (total > 0.0 && blocked / total > 1e-8)
        throw Error(Errc::non_invertible_band,
                    "predistort: target energy overlaps the guarded band");
    return inverse_spectrum(s);
}

std::vector<dvector> normalize_energies(const std::vector<dvector>& amplitude_targets,
                                        std::size_t reference_index, const TimeGrid& grid,
                                        const EomModel& model) {
    if (reference_index >= amplitude_targets.size())
        throw Error(Errc::invalid_argument, "normalize_energies: bad reference index");

    auto energy_of = [&](const dvector& amp, double scale) {
        dvector a(amp);
        for (auto& x : a) {
            x *= scale;
            x = std::clamp(x, -1.0, 1.0);
        }
        const dvector zero(a.size(), 0.0);
        const DriveWaveforms d = drives_from_target(a, zero, grid, model);
        return eom_output(d, model).squared_norm();
    };

    const double ref = energy_of(amplitude_targets[reference_index], 1.0);
    if (ref <= 0.0)
        throw Error(Errc::zero_energy, "normalize_energies: zero-energy reference");

    std::vector<dvector> out = amplitude_targets;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i == reference_index) continue;
        const double e0 = energy_of(out[i], 1.0);
        if (e0 <= 0.0)
            throw Error(Errc::zero_energy, "normalize_energies: zero-energy member");
        // secant iteration on the scale (the sin transfer is mildly nonlinear)
        double s0 = 1.0, f0 = e0 - ref;
        double s1 = std::sqrt(ref / e0), f1 = energy_of(out[i], s1) - ref;
        for (int it = 0; it < 40 && std::abs(f1) > 1e-4 * ref; ++it) {
            const double ds = f1 * (s1 - s0) / (f1 - f0);
            s0 = s1; f0 = f1;
            s1 -= ds;
            f1 = energy_of(out[i], s1) - ref;
        }
        for (auto& x : out[i]) x = std::clamp(x * s1, -1.0, 1.0);
    }
    return out;
}

double calibrate_bias(const EomModel& model) {
    // zero-drive output amplitude sin(pi(2 b + 2 off)/2Vpi) = 0 at
    // off = -bias_offset; pure function of the modeled offset
    return -model.bias_offset;
}

} // namespace tmproc
