/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <cmath>

#include "tmproc/memory.hpp"

namespace tmproc {

namespace {

// Natural cubic spline through uniformly spaced complex samples.
class Spline {
  public:
    Spline(const cvector& y, double x0, double dx) : m_y(y), m_x0(x0), m_dx(dx) {
        const std::size_t n = y.size();
        m_m.assign(n, cplx(0.0));
        if (n < 3) return;
        // tridiagonal (1, 4, 1) system for interior second derivatives,
        // natural BCs; Thomas sweep
        const std::size_t ni = n - 2;
        dvector cp(ni, 0.0);
        cvector dp(ni, cplx(0.0));
        auto rhs = [&](std::size_t i) {
            return 6.0 * (y[i + 1] - 2.0 * y[i] + y[i - 1]);
        };
        cp[0] = 0.25;
        dp[0] = rhs(1) * 0.25;
        for (std::size_t i = 1; i < ni; ++i) {
            const double denom = 4.0 - cp[i - 1];
            cp[i] = 1.0 / denom;
            dp[i] = (rhs(i + 1) - dp[i - 1]) / denom;
        }
        m_m[ni] = dp[ni - 1];
        for (std::size_t i = ni - 1; i >= 1; --i)
            m_m[i] = dp[i - 1] - cp[i - 1] * m_m[i + 1];
    }

    cplx operator()(double x) const {
        const std::size_t n = m_y.size();
        double u = (x - m_x0) / m_dx;
        if (u <= 0.0) return m_y.front();
        if (u >= double(n - 1)) return m_y.back();
        const std::size_t i = std::size_t(u);
        const double t = u - double(i);
        const cplx a = m_y[i], b = m_y[i + 1];
        const cplx ma = m_m[i], mb = m_m[i + 1];
        return a + t * (b - a) -
               t * (1.0 - t) / 6.0 * ((2.0 - t) * ma + (1.0 + t) * mb);
    }

  private:
    cvector m_y, m_m;
    double m_x0, m_dx;
};

} // namespace

// Independent verification scheme: method of lines in tau with classic RK4,
// where each stage solves the field transport in z by RK4 as well, on a
// 10x oversampled lattice with spline-interpolated inputs. Unrelated to the
// production box scheme; used by tests only.
SpinWave solve_oracle(const TemporalEnvelope& signal, const CouplingSpec& control,
                      const MemoryParams& params) {
    params.validate();
    if (signal.grid() != control.shape.grid())
        throw Error(Errc::grid_mismatch, "solve_oracle: signal/control grids differ");
    if (signal.size() > 64 || params.nz > 64)
        throw Error(Errc::size_guard, "solve_oracle: grids above 64 samples per axis rejected");

    constexpr int kOver = 10;
    const std::size_t nz_c = params.nz;
    const std::size_t nz = (nz_c - 1) * kOver + 1;
    const std::size_t nt = (signal.size() - 1) * kOver + 1;
    const double dz = params.length_L / double(nz - 1);
    const double dt = signal.grid().dt() / double(kOver);
    const double t0 = signal.grid().t_start();

    const TemporalEnvelope rabi = control.rabi(params);
    Spline sig_s(signal.amplitude(), t0, signal.grid().dt());
    Spline om_s(rabi.amplitude(), t0, signal.grid().dt());

    const cplx invG = 1.0 / params.Gamma();
    const double kap = std::sqrt(params.optical_depth_d * params.gamma / params.length_L);
    const cplx b_coef = -(params.optical_depth_d * params.gamma / params.length_L) * invG;

    // field transport for a frozen spin-wave row: dE/dz = b E + a B(z)
    auto solve_field = [&](const cvector& B, cplx om, cplx e_in) {
        const cplx a = cplx(0, 1) * kap * om * invG;
        cvector E(nz);
        E[0] = e_in;
        Spline b_s(B, 0.0, dz);
        for (std::size_t j = 0; j + 1 < nz; ++j) {
            const double z = dz * double(j);
            const cplx k1 = b_coef * E[j] + a * B[j];
            const cplx e2 = E[j] + 0.5 * dz * k1;
            const cplx bm = b_s(z + 0.5 * dz);
            const cplx k2 = b_coef * e2 + a * bm;
            const cplx e3 = E[j] + 0.5 * dz * k2;
            const cplx k3 = b_coef * e3 + a * bm;
            const cplx e4 = E[j] + dz * k3;
            const cplx k4 = b_coef * e4 + a * B[j + 1];
            E[j + 1] = E[j] + dz / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        return E;
    };

    // dB/dtau at a frozen tau: c E(z) + e B(z) with E slaved to B
    auto deriv = [&](const cvector& B, double t) {
        const cplx om = om_s(t);
        const cplx c = -cplx(0, 1) * kap * std::conj(om) * invG;
        const cplx e = -std::norm(om) * invG;
        const cvector E = solve_field(B, om, sig_s(t));
        cvector dB(nz);
        for (std::size_t j = 0; j < nz; ++j) dB[j] = c * E[j] + e * B[j];
        return dB;
    };

    cvector B(nz, cplx(0.0));
    for (std::size_t k = 0; k + 1 < nt; ++k) {
        const double t = t0 + dt * double(k);
        const cvector k1 = deriv(B, t);
        cvector tmp(nz);
        for (std::size_t j = 0; j < nz; ++j) tmp[j] = B[j] + 0.5 * dt * k1[j];
        const cvector k2 = deriv(tmp, t + 0.5 * dt);
        for (std::size_t j = 0; j < nz; ++j) tmp[j] = B[j] + 0.5 * dt * k2[j];
        const cvector k3 = deriv(tmp, t + 0.5 * dt);
        for (std::size_t j = 0; j < nz; ++j) tmp[j] = B[j] + dt * k3[j];
        const cvector k4 = deriv(tmp, t + dt);
        for (std::size_t j = 0; j < nz; ++j)
            B[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }

    // restrict to the coarse lattice
    cvector Bc(nz_c);
    for (std::size_t j = 0; j < nz_c; ++j) Bc[j] = B[j * kOver];
    return SpinWave(params.space_grid(), std::move(Bc));
}

} // namespace tmproc
