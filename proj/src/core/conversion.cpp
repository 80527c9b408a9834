/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tmproc/conversion.hpp"

#include <algorithm>
#include <cmath>

namespace tmproc {

namespace {

double squared_overlap(const TemporalEnvelope& a, const TemporalEnvelope& b) {
    const double na = a.squared_norm(), nb = b.squared_norm();
    if (na <= 0.0 || nb <= 0.0) return 0.0;
    return std::norm(overlap(a, b)) / (na * nb);
}

double peak_rabi(const TemporalEnvelope& rabi) {
    double p = 0.0;
    for (const auto& a : rabi.amplitude()) p = std::max(p, std::abs(a));
    return p;
}

} // namespace

double default_rabi_cap(const MemoryParams& params) {
    const TimeGrid grid = default_time_grid();
    const double center = grid.t_start() + 0.5 * grid.duration();
    const TemporalEnvelope hg0 =
        make_hg_mode(ModeSpec::hermite_gaussian(0, 50e-9, center), grid);
    const CouplingSpec ref = CouplingSpec::from_shape(0.60, hg0);
    return 50.0 * peak_rabi(ref.rabi(params));
}

ConversionResult convert_mode(const TemporalEnvelope& input_mode,
                              const CouplingSpec& write_control,
                              const CouplingSpec& read_control, double delay,
                              const MemoryParams& params,
                              const TemporalEnvelope* target) {
    if (delay < 0.0)
        throw Error(Errc::invalid_argument, "convert_mode: write/read windows overlap");
    const StoreResult stored = store(input_mode, write_control, params);

    CouplingSpec read = read_control;
    const double write_end = input_mode.grid().t_end();
    const double shift = write_end + delay - read.shape.grid().t_start();
    read.shape = read.shape.delayed(shift);

    const RetrieveResult ret = retrieve(stored.spinwave, read, params);

    ConversionResult out;
    out.eta_stor = stored.report.eta_stor;
    out.eta_tot = stored.report.eta_stor * ret.report.eta_ret;
    out.output = ret.output;
    const TemporalEnvelope tgt = target ? target->delayed(
                                              read.shape.grid().t_start() - target->grid().t_start())
                                        : read.shape;
    out.target_overlap = squared_overlap(out.output, tgt);
    return out;
}

TemporalEnvelope depletion_seed(const TemporalEnvelope& target_output, double eta_plain,
                                double energy_W) {
    const auto& amp = target_output.amplitude();
    const double dt = target_output.grid().dt();
    const double total = target_output.squared_norm();
    if (total <= 0.0)
        throw Error(Errc::zero_energy, "depletion_seed: zero target");
    const double r = std::clamp(eta_plain, 0.0, 0.999);

    cvector om(amp.size());
    double cum = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k) {
        const double flux = std::norm(amp[k]);
        cum += 0.5 * flux * dt; // midpoint of the running integral
        const double remaining = 1.0 - r * (cum / total);
        cum += 0.5 * flux * dt;
        om[k] = amp[k] / std::sqrt(std::max(remaining, 1e-6));
    }
    TemporalEnvelope env(target_output.grid(), std::move(om));
    const double w = env.squared_norm();
    return env.scaled(std::sqrt(energy_W / w));
}

CouplingSpec compensate_depletion(const TemporalEnvelope& target_output,
                                  const SpinWave& spinwave, const MemoryParams& params,
                                  double energy_W, double rabi_cap, int max_fixed_point) {
    if (!(energy_W > 0.0))
        throw Error(Errc::invalid_argument, "compensate_depletion: energy budget must be > 0");
    const double cap = rabi_cap > 0.0 ? rabi_cap : default_rabi_cap(params);
    const TemporalEnvelope target = target_output.normalized();
    const double C_budget = params.coupling_from_energy(energy_W);

    // plain-retrieval efficiency sets the depletion rate of the seed
    CouplingSpec plain = CouplingSpec::from_shape(C_budget, target);
    const double eta_plain = retrieve(spinwave, plain, params).report.eta_ret;

    TemporalEnvelope rabi = depletion_seed(target, eta_plain, energy_W);

    double peak_t = 0.0;
    for (const auto& a : target.amplitude()) peak_t = std::max(peak_t, std::abs(a));
    const double mask = 1e-3 * peak_t;

    CouplingSpec best;
    double best_overlap = -1.0;
    for (int it = 0; it < max_fixed_point; ++it) {
        if (peak_rabi(rabi) > cap)
            throw Error(Errc::infeasible_target,
                        "compensate_depletion: required Rabi frequency exceeds cap");
        CouplingSpec spec = CouplingSpec::from_shape(C_budget, rabi.normalized());
        const RetrieveResult rr = retrieve(spinwave, spec, params);
        const double ov = squared_overlap(rr.output, target);
        if (ov > best_overlap) {
            best_overlap = ov;
            best = spec;
        }
        if (ov > 1.0 - 1e-6) break;

        // amplitude: pointwise flux ratio; phase: align output to target
        const auto& out = rr.output.amplitude();
        double peak_o = 0.0;
        for (const auto& a : out) peak_o = std::max(peak_o, std::abs(a));
        cvector next(rabi.amplitude());
        const double out_norm = rr.output.norm();
        for (std::size_t k = 0; k < next.size(); ++k) {
            const double ta = std::abs(target[k]);
            if (ta <= mask) continue;
            const double oa = std::max(std::abs(out[k]), 1e-4 * peak_o);
            // damped amplitude-ratio update toward |out| ~ |target|
            const double ratio = std::clamp(ta * out_norm / oa, 0.25, 4.0);
            const double dphi = std::arg(target[k]) - std::arg(out[k]);
            next[k] *= std::sqrt(ratio) * std::polar(1.0, dphi);
        }
        TemporalEnvelope cand(rabi.grid(), std::move(next));
        rabi = cand.scaled(std::sqrt(energy_W / cand.squared_norm()));
    }
    return best;
}

ConversionResult bandwidth_convert(double t_in, double factor, BandwidthRegime regime,
                                   double C_write, const MemoryParams& params,
                                   double rabi_cap) {
    if (!(t_in > 0.0) || !(factor > 0.0))
        throw Error(Errc::invalid_argument, "bandwidth_convert: durations must be positive");
    const double t_out = factor * t_in;
    const double span_in = std::max(10.0 * t_in, 4.0 * t_out);
    const double dt = t_in / 40.0;
    const std::size_t n_in = next_pow2(std::size_t(span_in / dt) + 1);
    const TimeGrid wgrid(0.0, dt, n_in);
    const double c_in = 0.5 * wgrid.duration();
    const TemporalEnvelope input = make_mode(ModeSpec::gaussian(t_in, c_in), wgrid);
    const CouplingSpec wctrl = CouplingSpec::from_shape(C_write, input);

    const double span_out = std::max(10.0 * t_out, 10.0 * t_in);
    const std::size_t n_out = next_pow2(std::size_t(span_out / dt) + 1);
    const TimeGrid rgrid0(0.0, dt, n_out);
    const TemporalEnvelope rmode = make_mode(ModeSpec::gaussian(t_out, 0.5 * rgrid0.duration()), rgrid0);

    double C_read = C_write;
    if (regime == BandwidthRegime::constant_peak) {
        // constant peak Rabi frequency: energy scales with duration
        C_read = C_write * std::sqrt(factor);
    }
    CouplingSpec rctrl = CouplingSpec::from_shape(C_read, rmode);
    const double cap = rabi_cap > 0.0 ? rabi_cap : default_rabi_cap(params);
    {
        double p = 0.0;
        for (const auto& a : rctrl.rabi(params).amplitude()) p = std::max(p, std::abs(a));
        if (p > cap)
            throw Error(Errc::rabi_cap_exceeded,
                        "bandwidth_convert: read Rabi frequency above saturation cap");
    }
    // retrieval delay is bookkeeping only in this decoherence-free model
    return convert_mode(input, wctrl, rctrl, 218e-9, params);
}

PassiveFilterResult passive_filter_baseline(double t_in, double factor) {
    PassiveFilterResult res;
    if (!(t_in > 0.0) || !(factor > 0.0))
        throw Error(Errc::invalid_argument, "passive_filter_baseline: bad arguments");
    if (factor < 1.0) {
        // passive linear optics cannot expand bandwidth
        res.expansion_impossible = true;
        res.efficiency = 0.0;
        return res;
    }
    if (factor == 1.0) {
        res.efficiency = 1.0; // filter width -> infinity
        return res;
    }

    // direct spectral quadrature on a dense grid
    const std::size_t n = 1 << 16;
    const double span = 400.0 * t_in;
    const double dt = span / double(n);
    const double sigma = gaussian_sigma_from_fwhm(t_in);
    cvector field(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = (double(k) - double(n) / 2.0) * dt;
        field[k] = std::exp(-t * t / (2.0 * sigma * sigma));
    }
    cvector base(field);
    fft(base, false);
    const double dw = 2.0 * M_PI / (double(n) * dt);

    auto filtered_fwhm = [&](double wc, cvector& out) {
        out = base;
        for (std::size_t k = 0; k < n; ++k) {
            const double idx = (k <= n / 2) ? double(k) : double(k) - double(n);
            if (std::abs(idx * dw) > wc) out[k] = 0.0;
        }
        fft(out, true);
        double peak = 0.0;
        for (const auto& a : out) peak = std::max(peak, std::abs(a));
        const double half = 0.5 * peak;
        std::size_t lo = 0, hi = n - 1;
        while (lo < n && std::abs(out[lo]) < half) ++lo;
        while (hi > 0 && std::abs(out[hi]) < half) --hi;
        return dt * double(hi - lo);
    };

    // bisect the cutoff so the filtered field FWHM hits factor * t_in
    double wlo = 1e-3 / t_in, whi = 1e3 / t_in;
    cvector out;
    for (int it = 0; it < 60; ++it) {
        const double wm = std::sqrt(wlo * whi);
        const double f = filtered_fwhm(wm, out);
        if (f > factor * t_in)
            wlo = wm;
        else
            whi = wm;
    }
    filtered_fwhm(std::sqrt(wlo * whi), out);

    double e_in = 0.0, e_out = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        e_in += std::norm(field[k]);
        e_out += std::norm(out[k]);
    }
    const double transmitted = e_out / e_in;

    const double sig_o = gaussian_sigma_from_fwhm(factor * t_in);
    cplx ip = 0.0;
    double n_t = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = (double(k) - double(n) / 2.0) * dt;
        const double tgt = std::exp(-t * t / (2.0 * sig_o * sig_o));
        ip += std::conj(out[k]) * tgt;
        n_t += tgt * tgt;
    }
    const double ov = std::norm(ip) / (e_out * n_t);
    res.efficiency = transmitted * ov;
    return res;
}

GaussExpResult gaussian_exponential_scenarios(const MemoryParams& params, double C_write,
                                              double C_read, double decay_constant) {
    // field 1/e time constant; support needs ~14 constants of tail
    const double tail = 16.0 * decay_constant;
    const double dt = decay_constant / 32.0;
    const std::size_t n = next_pow2(std::size_t(tail / dt) + 1);
    const TimeGrid grid(0.0, dt, n);

    const TemporalEnvelope expm =
        make_mode(ModeSpec::exp_decay(decay_constant, 0.05 * grid.duration()), grid);
    const TemporalEnvelope gauss =
        make_mode(ModeSpec::gaussian(decay_constant, 0.35 * grid.duration()), grid);

    GaussExpResult r;
    {
        const CouplingSpec w = CouplingSpec::from_shape(C_write, expm);
        const CouplingSpec rd = CouplingSpec::from_shape(C_read, gauss);
        r.exp_to_gauss = convert_mode(expm, w, rd, 218e-9, params);
    }
    {
        const CouplingSpec w = CouplingSpec::from_shape(C_write, gauss);
        const CouplingSpec rd = CouplingSpec::from_shape(C_read, expm);
        r.gauss_to_exp = convert_mode(gauss, w, rd, 218e-9, params);
    }
    return r;
}

} // namespace tmproc
