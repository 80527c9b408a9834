/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tmproc/kernel.hpp"

#include <cmath>

#include "tmproc/parallel.hpp"

namespace tmproc {

SpinWave Kernel::apply(const Eigen::VectorXcd& coeffs) const {
    if (coeffs.size() != matrix.cols())
        throw Error(Errc::invalid_argument, "Kernel::apply: coefficient size mismatch");
    const Eigen::VectorXcd out = matrix * coeffs;
    const double wz = std::sqrt(out_grid.dz());
    cvector amp(out.size());
    for (Eigen::Index j = 0; j < out.size(); ++j) amp[std::size_t(j)] = out[j] / wz;
    return SpinWave(out_grid, std::move(amp));
}

double Kernel::efficiency(const Eigen::VectorXcd& coeffs) const {
    const Eigen::VectorXcd out = matrix * coeffs;
    const double nin = coeffs.squaredNorm();
    return nin > 0.0 ? out.squaredNorm() / nin : 0.0;
}

double Kernel::max_singular_value() const {
    Eigen::JacobiSVD<cmatrix> s(matrix);
    return s.singularValues()(0);
}

namespace {

void check_orthonormal(const std::vector<TemporalEnvelope>& basis) {
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j) {
            const cplx g = overlap(basis[i], basis[j]);
            const double target = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - target) > 1e-6)
                throw Error(Errc::non_orthonormal_basis,
                            "build_storage_kernel: probe basis Gram deviation > 1e-6");
        }
}

} // namespace

Kernel build_storage_kernel(const CouplingSpec& control, const MemoryParams& params,
                            const std::vector<TemporalEnvelope>& probe_basis) {
    if (probe_basis.empty())
        throw Error(Errc::invalid_argument, "build_storage_kernel: empty probe basis");
    check_orthonormal(probe_basis);

    Kernel k;
    k.in_grid = probe_basis.front().grid();
    k.out_grid = params.space_grid();
    k.probe_basis = probe_basis;
    k.matrix.resize(Eigen::Index(params.nz), Eigen::Index(probe_basis.size()));
    const double wz = std::sqrt(k.out_grid.dz());
    for (std::size_t c = 0; c < probe_basis.size(); ++c) {
        const StoreResult r = store(probe_basis[c], control, params);
        for (std::size_t j = 0; j < params.nz; ++j)
            k.matrix(Eigen::Index(j), Eigen::Index(c)) = r.spinwave[j] * wz;
    }
    return k;
}

Kernel build_storage_kernel_impulse(const CouplingSpec& control, const MemoryParams& params,
                                    const TimeGrid& grid) {
    Kernel k;
    k.in_grid = grid;
    k.out_grid = params.space_grid();
    k.matrix.resize(Eigen::Index(params.nz), Eigen::Index(grid.size()));
    const double wz = std::sqrt(k.out_grid.dz());
    const double wt = std::sqrt(grid.dt());
    for (std::size_t c = 0; c < grid.size(); ++c) {
        cvector imp(grid.size(), cplx(0.0));
        imp[c] = 1.0 / wt; // unit norm under the dt measure
        const StoreResult r = store(TemporalEnvelope(grid, std::move(imp)), control, params);
        for (std::size_t j = 0; j < params.nz; ++j)
            k.matrix(Eigen::Index(j), Eigen::Index(c)) = r.spinwave[j] * wz;
    }
    return k;
}

KernelSVD svd(const Kernel& kernel, int rank) {
    const int full = int(std::min(kernel.matrix.rows(), kernel.matrix.cols()));
    if (rank < 1 || rank > full)
        throw Error(Errc::rank_out_of_range, "svd: rank out of range");
    Eigen::JacobiSVD<cmatrix> dec(kernel.matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);

    KernelSVD out;
    out.singular_values.resize(rank);
    const double wz = std::sqrt(kernel.out_grid.dz());
    const double wt = std::sqrt(kernel.in_grid.dt());
    for (int r = 0; r < rank; ++r) {
        out.singular_values[std::size_t(r)] = dec.singularValues()(r);
        // output mode on the space grid
        cvector psi(kernel.out_grid.size());
        for (std::size_t j = 0; j < psi.size(); ++j)
            psi[j] = dec.matrixU()(Eigen::Index(j), r) / wz;
        out.output_modes.emplace_back(kernel.out_grid, std::move(psi));
        // input mode as an envelope
        cvector phi(kernel.in_grid.size(), cplx(0.0));
        if (kernel.probe_basis.empty()) {
            for (std::size_t t = 0; t < phi.size(); ++t)
                phi[t] = dec.matrixV()(Eigen::Index(t), r) / wt;
        } else {
            for (std::size_t b = 0; b < kernel.probe_basis.size(); ++b) {
                const cplx c = dec.matrixV()(Eigen::Index(b), r);
                const auto& amp = kernel.probe_basis[b].amplitude();
                for (std::size_t t = 0; t < phi.size(); ++t) phi[t] += c * amp[t];
            }
        }
        out.input_modes.emplace_back(kernel.in_grid, std::move(phi));
    }
    const cmatrix approx = dec.matrixU().leftCols(rank) *
                           dec.singularValues().head(rank).asDiagonal() *
                           dec.matrixV().leftCols(rank).adjoint();
    const double denom = kernel.matrix.norm();
    out.reconstruction_residual = denom > 0.0 ? (kernel.matrix - approx).norm() / denom : 0.0;
    return out;
}

dmatrix crosstalk_matrix(const std::vector<TemporalEnvelope>& signal_modes,
                         const std::vector<TemporalEnvelope>& control_modes,
                         double C, const MemoryParams& params, int jobs) {
    if (signal_modes.empty() || control_modes.empty())
        throw Error(Errc::invalid_argument, "crosstalk_matrix: empty mode list");
    dmatrix X(signal_modes.size(), control_modes.size());
    parallel_for(control_modes.size(), jobs, [&](std::size_t m) {
        const CouplingSpec spec = CouplingSpec::from_shape(C, control_modes[m]);
        for (std::size_t n = 0; n < signal_modes.size(); ++n) {
            const StoreResult r = store(signal_modes[n], spec, params);
            X(Eigen::Index(n), Eigen::Index(m)) = r.report.eta_stor;
        }
    });
    return X;
}

dvector component_filter_ratios(const TemporalEnvelope& superposition,
                                const std::vector<TemporalEnvelope>& component_controls,
                                double C, const MemoryParams& params) {
    dvector etas;
    etas.reserve(component_controls.size());
    for (const auto& ctrl : component_controls) {
        const CouplingSpec spec = CouplingSpec::from_shape(C, ctrl);
        etas.push_back(store(superposition, spec, params).report.eta_stor);
    }
    return etas;
}

} // namespace tmproc
