/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tmproc/krotov.hpp"

#include <cmath>

#include "tmproc/parallel.hpp"

namespace tmproc {

namespace {

struct FullFields {
    // row-major [tau][z]
    std::vector<cvector> E, B;
};

// forward box integrator keeping every tau row (storage configuration)
FullFields forward_full(const TemporalEnvelope& signal, const TemporalEnvelope& rabi,
                        const MemoryParams& params) {
    const std::size_t nt = signal.size();
    const std::size_t nz = params.nz;
    const double dt = signal.grid().dt();
    const double dz = params.length_L / double(nz - 1);
    const cplx invG = 1.0 / params.Gamma();
    const double kap = std::sqrt(params.optical_depth_d * params.gamma / params.length_L);
    const cplx b_coef = -(params.optical_depth_d * params.gamma / params.length_L) * invG;

    FullFields f;
    f.E.assign(nt, cvector(nz, cplx(0.0)));
    f.B.assign(nt, cvector(nz, cplx(0.0)));

    f.E[0][0] = signal[0];
    {
        const cplx a0 = cplx(0, 1) * kap * rabi[0] * invG;
        for (std::size_t j = 1; j < nz; ++j) {
            const cplx rhs = f.E[0][j - 1] +
                             0.5 * dz * (b_coef * f.E[0][j - 1] +
                                         a0 * (f.B[0][j - 1] + f.B[0][j]));
            f.E[0][j] = rhs / (1.0 - 0.5 * dz * b_coef);
        }
    }
    for (std::size_t k = 0; k + 1 < nt; ++k) {
        const cplx om_m = 0.5 * (rabi[k] + rabi[k + 1]);
        const cplx a_m = cplx(0, 1) * kap * om_m * invG;
        const cplx c_m = -cplx(0, 1) * kap * std::conj(om_m) * invG;
        const cplx e_m = -std::norm(om_m) * invG;
        const cvector& E0 = f.E[k];
        const cvector& B0 = f.B[k];
        cvector& E1 = f.E[k + 1];
        cvector& B1 = f.B[k + 1];

        B1[0] = (B0[0] * (1.0 + 0.5 * dt * e_m) +
                 0.5 * dt * c_m * (signal[k] + signal[k + 1])) /
                (1.0 - 0.5 * dt * e_m);
        E1[0] = signal[k + 1];

        const cplx m11 = 0.5 - 0.25 * dz * b_coef;
        const cplx m12 = -0.25 * dz * a_m;
        const cplx m21 = -0.25 * dt * c_m;
        const cplx m22 = 0.5 - 0.25 * dt * e_m;
        const cplx det = m11 * m22 - m12 * m21;
        for (std::size_t j = 0; j + 1 < nz; ++j) {
            const cplx sumE = E0[j] + E0[j + 1] + E1[j];
            const cplx sumB = B0[j] + B0[j + 1] + B1[j];
            const cplx rz = 0.5 * (E0[j] + E1[j] - E0[j + 1]) +
                            0.25 * dz * (b_coef * sumE + a_m * sumB);
            const cplx rt = 0.5 * (B0[j] + B0[j + 1] - B1[j]) +
                            0.25 * dt * (c_m * sumE + e_m * sumB);
            E1[j + 1] = (m22 * rz - m12 * rt) / det;
            B1[j + 1] = (m11 * rt - m21 * rz) / det;
        }
    }
    return f;
}

} // namespace

// Adjoint-method gradient of N_stor with respect to the complex Rabi
// samples. The costate system
//   -dEt/dz   = b* Et + c* Bt,   Et(L, tau) = 0
//   -dBt/dtau = a* Et + e* Bt,   Bt(z, T)   = B(z, T)
// is integrated by the same box rule in reversed coordinates; the gradient
// density is accumulated per tau row.
cvector storage_gradient(const TemporalEnvelope& signal, const TemporalEnvelope& rabi,
                         const MemoryParams& params, double* eta_out) {
    const std::size_t nt = signal.size();
    const std::size_t nz = params.nz;
    const double dt = signal.grid().dt();
    const double dz = params.length_L / double(nz - 1);
    const cplx invG = 1.0 / params.Gamma();
    const cplx invGc = std::conj(invG);
    const double kap = std::sqrt(params.optical_depth_d * params.gamma / params.length_L);
    const cplx b_coef = -(params.optical_depth_d * params.gamma / params.length_L) * invG;
    const cplx bc = std::conj(b_coef);

    const FullFields f = forward_full(signal, rabi, params);
    if (eta_out) {
        double n_stor = 0.0;
        for (std::size_t j = 0; j < nz; ++j) {
            const double w = (j == 0 || j == nz - 1) ? 0.5 : 1.0;
            n_stor += w * std::norm(f.B[nt - 1][j]);
        }
        const double n_in = signal.squared_norm();
        *eta_out = n_in > 0.0 ? n_stor * dz / n_in : 0.0;
    }

    // costate rows at the current tau level
    cvector Et(nz, cplx(0.0)), Bt(f.B[nt - 1]);
    cvector Et_new(nz), Bt_new(nz);

    cvector grad(nt, cplx(0.0));
    auto grad_row = [&](std::size_t k, const cvector& EtRow, const cvector& BtRow) {
        // g1 = int dz [ conj(Et) i kap B /Gamma - conj(Bt) B Omega*/Gamma ]
        // g2 = int dz [ -conj(Bt) i kap E /Gamma - conj(Bt) B Omega /Gamma ]
        cplx g1 = 0.0, g2 = 0.0;
        const cplx om = rabi[k];
        for (std::size_t j = 0; j < nz; ++j) {
            const double w = (j == 0 || j == nz - 1) ? 0.5 : 1.0;
            const cplx Bf = f.B[k][j], Ef = f.E[k][j];
            g1 += w * (std::conj(EtRow[j]) * (cplx(0, 1) * kap * Bf * invG) -
                       std::conj(BtRow[j]) * Bf * std::conj(om) * invG);
            g2 += w * (-std::conj(BtRow[j]) * (cplx(0, 1) * kap * Ef * invG) -
                       std::conj(BtRow[j]) * Bf * om * invG);
        }
        grad[k] = (std::conj(g1) + g2) * dz;
    };

    // terminal row: solve the costate field equation at tau = T
    auto solve_Et_row = [&](const cvector& BtRow, cplx om) {
        // -dEt/dz = b* Et + c* Bt, Et(L) = 0; march from z = L down
        const cplx cc = std::conj(-cplx(0, 1) * kap * std::conj(om) * invG); // c*
        cvector row(nz);
        row[nz - 1] = 0.0;
        for (std::size_t j = nz - 1; j > 0; --j) {
            const cplx rhs = row[j] + 0.5 * dz * (bc * row[j] + cc * (BtRow[j] + BtRow[j - 1]));
            row[j - 1] = rhs / (1.0 - 0.5 * dz * bc);
        }
        return row;
    };
    Et = solve_Et_row(Bt, rabi[nt - 1]);
    grad_row(nt - 1, Et, Bt);

    for (std::size_t k = nt - 1; k > 0; --k) {
        const cplx om_m = 0.5 * (rabi[k] + rabi[k - 1]);
        const cplx a_m = cplx(0, 1) * kap * om_m * invG;
        const cplx c_m = -cplx(0, 1) * kap * std::conj(om_m) * invG;
        const cplx e_m = -std::norm(om_m) * invG;
        const cplx ac = std::conj(a_m), cc = std::conj(c_m), ec = std::conj(e_m);

        // boundary z = L: Et(L) = 0; costate spin equation reduces to an ODE
        Bt_new[nz - 1] = (Bt[nz - 1] * (1.0 + 0.5 * dt * ec)) / (1.0 - 0.5 * dt * ec);
        Et_new[nz - 1] = 0.0;

        const cplx m11 = 0.5 - 0.25 * dz * bc;  // Et unknown coefficient
        const cplx m12 = -0.25 * dz * cc;
        const cplx m21 = -0.25 * dt * ac;
        const cplx m22 = 0.5 - 0.25 * dt * ec;
        const cplx det = m11 * m22 - m12 * m21;
        for (std::size_t j = nz - 1; j > 0; --j) {
            // cell (j -> j-1, k -> k-1) in the reversed coordinates
            const cplx E00 = Et[j], E10 = Et[j - 1], E01 = Et_new[j];
            const cplx B00 = Bt[j], B10 = Bt[j - 1], B01 = Bt_new[j];
            const cplx sumE = E00 + E10 + E01;
            const cplx sumB = B00 + B10 + B01;
            const cplx rz = 0.5 * (E00 + E01 - E10) + 0.25 * dz * (bc * sumE + cc * sumB);
            const cplx rt = 0.5 * (B00 + B10 - B01) + 0.25 * dt * (ac * sumE + ec * sumB);
            Et_new[j - 1] = (m22 * rz - m12 * rt) / det;
            Bt_new[j - 1] = (m11 * rt - m21 * rz) / det;
        }
        Et.swap(Et_new);
        Bt.swap(Bt_new);
        grad_row(k - 1, Et, Bt);
    }

    // normalize by input photon number so the gradient drives eta directly
    const double n_in = signal.squared_norm();
    if (n_in > 0.0)
        for (auto& g : grad) g /= n_in;
    return grad;
}

std::pair<CouplingSpec, OptimizationTrace>
optimize_write_control(const TemporalEnvelope& target_signal, double C,
                       const MemoryParams& params, const OptimizationConfig& config) {
    if (!(C > 0.0))
        throw Error(Errc::invalid_argument,
                    "optimize_write_control: zero coupling has no gradient");
    const TemporalEnvelope signal = target_signal.unit_normalized()
                                        ? target_signal
                                        : target_signal.normalized();
    TemporalEnvelope shape = config.seed_control ? config.seed_control->normalized()
                                                 : signal;
    if (shape.grid() != signal.grid())
        throw Error(Errc::grid_mismatch, "optimize_write_control: seed grid mismatch");
    if (!(shape.squared_norm() > 0.0))
        throw Error(Errc::invalid_argument, "optimize_write_control: zero seed control");

    const double W = params.pulse_energy(C);
    const double sqrtW = std::sqrt(W);

    OptimizationTrace trace;
    TemporalEnvelope rabi = shape.scaled(sqrtW);
    double eta = 0.0;
    cvector grad = storage_gradient(signal, rabi, params, &eta);
    trace.iterations.push_back({eta, W, 0.0});

    double step = config.step_scale;
    int bad_streak = 0;
    for (int it = 0; it < config.max_iters; ++it) {
        // normalize the gradient scale so step_scale is dimensionless
        double gnorm2 = 0.0;
        for (const auto& g : grad) gnorm2 += std::norm(g);
        gnorm2 *= signal.grid().dt();
        if (gnorm2 <= 0.0) break;
        const double gscale = sqrtW / std::sqrt(gnorm2);

        double eta_new = 0.0;
        TemporalEnvelope cand;
        int halvings = 0;
        for (; halvings <= 10; ++halvings) {
            cvector amp(rabi.amplitude());
            const double s = step * gscale;
            for (std::size_t k = 0; k < amp.size(); ++k) amp[k] += s * grad[k];
            TemporalEnvelope c(rabi.grid(), std::move(amp));
            const double w = c.squared_norm();
            if (w <= 0.0) break;
            cand = c.scaled(std::sqrt(W / w));
            eta_new = 0.0;
            cvector g_new = storage_gradient(signal, cand, params, &eta_new);
            if (eta_new >= eta) {
                rabi = cand;
                grad = std::move(g_new);
                break;
            }
            step *= 0.5;
        }
        if (halvings > 10) {
            if (++bad_streak >= 2)
                throw Error(Errc::non_convergence,
                            "optimize_write_control: efficiency decreasing after step halving");
            continue;
        }
        bad_streak = 0;

        double upd = 0.0;
        for (std::size_t k = 0; k < rabi.size(); ++k) upd += std::norm(grad[k]);
        trace.iterations.push_back({eta_new, W, std::sqrt(upd * signal.grid().dt())});

        const double rel = (eta_new - eta) / std::max(eta, 1e-300);
        eta = eta_new;
        if (rel >= 0.0 && rel < config.tol) {
            trace.converged = true;
            break;
        }
        // gentle growth so halved steps can recover
        step = std::min(step * 1.3, config.step_scale);
    }

    CouplingSpec out = CouplingSpec::from_shape(C, rabi.scaled(1.0 / sqrtW));
    trace.final_control = out;
    return {out, trace};
}

OptimizedCrosstalkReport
optimized_crosstalk_study(const std::vector<TemporalEnvelope>& modes, double C,
                          const MemoryParams& params, const OptimizationConfig& config,
                          int jobs) {
    OptimizedCrosstalkReport rep;
    rep.standard = crosstalk_matrix(modes, modes, C, params, jobs);
    rep.controls.resize(modes.size());
    parallel_for(modes.size(), jobs, [&](std::size_t m) {
        rep.controls[m] = optimize_write_control(modes[m], C, params, config).first;
    });
    rep.optimized.resize(Eigen::Index(modes.size()), Eigen::Index(modes.size()));
    parallel_for(modes.size(), jobs, [&](std::size_t m) {
        for (std::size_t n = 0; n < modes.size(); ++n)
            rep.optimized(Eigen::Index(n), Eigen::Index(m)) =
                store(modes[n], rep.controls[m], params).report.eta_stor;
    });
    return rep;
}

} // namespace tmproc
