/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tmproc/memory.hpp"

#include <cmath>

namespace tmproc {

// Fixed once by calibrate_kappa() on the default configuration
// (matched HG0 at C = 0.60 -> eta_stor = 0.300), then frozen.
double frozen_kappa_cal() { return 1.00473427086613; }

void MemoryParams::validate() const {
    if (!(optical_depth_d > 0.0))
        throw Error(Errc::invalid_argument, "MemoryParams: optical depth must be > 0");
    if (!(gamma > 0.0))
        throw Error(Errc::invalid_argument, "MemoryParams: gamma must be > 0");
    if (!(length_L > 0.0))
        throw Error(Errc::invalid_argument, "MemoryParams: length must be > 0");
    if (nz < 2)
        throw Error(Errc::invalid_argument, "MemoryParams: nz must be >= 2");
}

double MemoryParams::pulse_energy(double C) const {
    return C * C * abs2_Gamma() / (kappa() * optical_depth_d * gamma);
}

double MemoryParams::coupling_from_energy(double W) const {
    return std::sqrt(kappa() * optical_depth_d * gamma * W / abs2_Gamma());
}

CouplingSpec CouplingSpec::from_shape(double C, const TemporalEnvelope& shape) {
    if (!(C >= 0.0))
        throw Error(Errc::invalid_argument, "CouplingSpec: C must be >= 0");
    CouplingSpec spec;
    spec.C = C;
    spec.shape = shape.unit_normalized() ? shape : shape.normalized();
    return spec;
}

TemporalEnvelope CouplingSpec::rabi(const MemoryParams& p) const {
    const double W = p.pulse_energy(C);
    return shape.scaled(std::sqrt(W));
}

// ---------------------------------------------------------------------------
// Box-scheme integrator.
//
// The equations of motion on the comoving (z, tau) lattice,
//   dE/dz   =  i k (Omega/Gamma) B - (d gamma / (L Gamma)) E,   k = sqrt(d gamma / L)
//   dB/dtau = -i k (Omega*/Gamma) E - (|Omega|^2 / Gamma) B,
// are linear transport equations without cross derivatives. Each grid cell
// is closed with the implicit midpoint (box) rule: cell averages satisfy a
// 2x2 linear system in the unknown corner (E11, B11), solved exactly.
// Second order in both steps and unconditionally stable.
// ---------------------------------------------------------------------------
PropagationResult propagate(const TemporalEnvelope& field_in, const cvector& spin_in,
                            const TemporalEnvelope& rabi, const MemoryParams& params) {
    params.validate();
    if (field_in.grid() != rabi.grid())
        throw Error(Errc::grid_mismatch, "propagate: field and control grids differ");
    const std::size_t nt = field_in.size();
    const std::size_t nz = params.nz;
    if (spin_in.size() != nz)
        throw Error(Errc::grid_mismatch, "propagate: spin-wave length != params.nz");

    const double dt = field_in.grid().dt();
    const double dz = params.length_L / double(nz - 1);
    const cplx Gamma = params.Gamma();
    const cplx invG = 1.0 / Gamma;
    const double kap = std::sqrt(params.optical_depth_d * params.gamma / params.length_L);
    const cplx b_coef = -(params.optical_depth_d * params.gamma / params.length_L) * invG;
    const double reinvG = std::real(invG); // gamma/|Gamma|^2, sets absorption

    // field rows: E[j] = E(z_j) at the current tau level; B[j] likewise
    cvector E(nz), B(spin_in), Enew(nz), Bnew(nz);
    // E(z, tau_0): transport of the input boundary value through the initial
    // spin wave (trapezoidal in z)
    E[0] = field_in[0];
    {
        const cplx om0 = rabi[0];
        const cplx a0 = cplx(0, 1) * kap * om0 * invG;
        for (std::size_t j = 1; j < nz; ++j) {
            const cplx rhs = E[j - 1] + 0.5 * dz * (b_coef * E[j - 1] + a0 * (B[j - 1] + B[j]));
            E[j] = rhs / (1.0 - 0.5 * dz * b_coef);
        }
    }

    TemporalEnvelope leaked(field_in.grid(), cvector(nt, cplx(0.0)));
    leaked.amplitude()[0] = E[nz - 1];

    double absorbed = 0.0;
    // absorption density at the current tau level (trapezoid over z and tau)
    auto absorption_row = [&](const cvector& Ev, const cvector& Bv, const cplx& om) {
        double acc = 0.0;
        for (std::size_t j = 0; j < nz; ++j) {
            const double w = (j == 0 || j == nz - 1) ? 0.5 : 1.0;
            double dens = 2.0 * reinvG *
                          ((params.optical_depth_d * params.gamma / params.length_L) * std::norm(Ev[j]) +
                           std::norm(om) * std::norm(Bv[j]));
            // non-unitary part of the exchange term, also proportional to Re(1/Gamma)
            dens += 4.0 * params.gamma / params.abs2_Gamma() * kap *
                    std::imag(om * std::conj(Ev[j]) * Bv[j]);
            acc += w * dens;
        }
        return acc * dz;
    };
    double abs_prev = absorption_row(E, B, rabi[0]);

    for (std::size_t k = 0; k + 1 < nt; ++k) {
        const cplx om_m = 0.5 * (rabi[k] + rabi[k + 1]); // midpoint control
        const cplx a_m = cplx(0, 1) * kap * om_m * invG;
        const cplx c_m = -cplx(0, 1) * kap * std::conj(om_m) * invG;
        const cplx e_m = -std::norm(om_m) * invG;

        // z = 0 boundary: ODE dB/dtau = c E + e B with E(0,tau) prescribed
        {
            const cplx rhs = B[0] * (1.0 + 0.5 * dt * e_m) +
                             0.5 * dt * c_m * (field_in[k] + field_in[k + 1]);
            Bnew[0] = rhs / (1.0 - 0.5 * dt * e_m);
        }
        Enew[0] = field_in[k + 1];

        const cplx m11 = 0.5 - 0.25 * dz * b_coef;
        const cplx m12 = -0.25 * dz * a_m;
        const cplx m21 = -0.25 * dt * c_m;
        const cplx m22 = 0.5 - 0.25 * dt * e_m;
        const cplx det = m11 * m22 - m12 * m21;
        const cplx i11 = m22 / det, i12 = -m12 / det, i21 = -m21 / det, i22 = m11 / det;

        for (std::size_t j = 0; j + 1 < nz; ++j) {
            const cplx E00 = E[j], E10 = E[j + 1], E01 = Enew[j];
            const cplx B00 = B[j], B10 = B[j + 1], B01 = Bnew[j];
            const cplx sumE = E00 + E10 + E01;
            const cplx sumB = B00 + B10 + B01;
            const cplx rz = 0.5 * (E00 + E01 - E10) + 0.25 * dz * (b_coef * sumE + a_m * sumB);
            const cplx rt = 0.5 * (B00 + B10 - B01) + 0.25 * dt * (c_m * sumE + e_m * sumB);
            Enew[j + 1] = i11 * rz + i12 * rt;
            Bnew[j + 1] = i21 * rz + i22 * rt;
        }
        E.swap(Enew);
        B.swap(Bnew);
        leaked.amplitude()[k + 1] = E[nz - 1];

        const double abs_now = absorption_row(E, B, rabi[k + 1]);
        absorbed += 0.5 * dt * (abs_prev + abs_now);
        abs_prev = abs_now;
    }

    PropagationResult res;
    res.spin_out = SpinWave(params.space_grid(), std::move(B));
    res.field_out = std::move(leaked);
    res.absorbed = absorbed;
    return res;
}

StoreResult store(const TemporalEnvelope& signal, const CouplingSpec& control,
                  const MemoryParams& params) {
    if (signal.grid() != control.shape.grid())
        throw Error(Errc::grid_mismatch, "store: signal and control grids differ");
    const TemporalEnvelope rabi = control.rabi(params);
    PropagationResult pr = propagate(signal, cvector(params.nz, cplx(0.0)), rabi, params);

    StoreResult out;
    const double n_in = signal.squared_norm();
    const double n_stor = pr.spin_out.squared_norm();
    out.report.eta_stor = n_in > 0.0 ? n_stor / n_in : 0.0;
    out.report.absorbed_fraction = n_in > 0.0 ? pr.absorbed / n_in : 0.0;
    out.report.nz = params.nz;
    out.report.nt = signal.size();
    out.spinwave = std::move(pr.spin_out);
    out.leaked = std::move(pr.field_out);
    return out;
}

RetrieveResult retrieve(const SpinWave& spinwave, const CouplingSpec& control,
                        const MemoryParams& params) {
    if (spinwave.size() != params.nz)
        throw Error(Errc::grid_mismatch, "retrieve: spin-wave grid != params grid");
    const TemporalEnvelope rabi = control.rabi(params);
    TemporalEnvelope vacuum(control.shape.grid(), cvector(control.shape.size(), cplx(0.0)));
    PropagationResult pr = propagate(vacuum, spinwave.amplitude(), rabi, params);

    RetrieveResult out;
    const double n_b = spinwave.squared_norm();
    out.report.eta_ret = n_b > 0.0 ? pr.field_out.squared_norm() / n_b : 0.0;
    out.report.absorbed_fraction = n_b > 0.0 ? pr.absorbed / n_b : 0.0;
    out.report.nz = params.nz;
    out.report.nt = control.shape.size();
    out.output = std::move(pr.field_out);
    return out;
}

double calibrate_kappa(const MemoryParams& params, double target_eta) {
    MemoryParams p = params;
    p.kappa_cal = 1.0; // work directly in pulse energy
    const TimeGrid grid = default_time_grid();
    const double center = grid.t_start() + 0.5 * grid.duration();
    const TemporalEnvelope hg0 =
        make_hg_mode(ModeSpec::hermite_gaussian(0, 50e-9, center), grid);
    const CouplingSpec base = CouplingSpec::from_shape(1.0, hg0);

    auto eta_of_W = [&](double W) {
        CouplingSpec c = base;
        c.C = p.coupling_from_energy(W);
        return store(hg0, c, p).report.eta_stor;
    };

    // bracket in W, then bisect (eta is monotone over this range)
    double Wlo = 0.36 * p.abs2_Gamma() / (p.optical_depth_d * p.gamma) * 0.2;
    double Whi = Wlo * 50.0;
    while (eta_of_W(Whi) < target_eta) Whi *= 2.0;
    while (eta_of_W(Wlo) > target_eta) Wlo *= 0.5;
    for (int it = 0; it < 60; ++it) {
        const double Wm = 0.5 * (Wlo + Whi);
        if (eta_of_W(Wm) < target_eta)
            Wlo = Wm;
        else
            Whi = Wm;
    }
    const double Wstar = 0.5 * (Wlo + Whi);
    return 0.36 * p.abs2_Gamma() / (p.optical_depth_d * p.gamma * Wstar);
}

} // namespace tmproc
